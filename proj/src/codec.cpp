#include "specsal/codec.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace specsal {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

struct Reader {
  const std::uint8_t* p;
  std::size_t left;

  void take(void* dst, std::size_t n, const char* what) {
    require(left >= n, std::string("truncated payload reading ") + what);
    std::memcpy(dst, p, n);
    p += n;
    left -= n;
  }
  std::uint32_t u32(const char* what) {
    std::uint8_t b[4];
    take(b, 4, what);
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
           std::uint32_t{b[3]} << 24;
  }
  std::uint8_t u8(const char* what) {
    std::uint8_t b;
    take(&b, 1, what);
    return b;
  }
  float f32(const char* what) {
    std::uint32_t bits = u32(what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

constexpr std::int64_t kMaxElements = std::int64_t{1} << 31;

}  // namespace

std::vector<std::uint8_t> cube_encode(const HyperCube& cube) {
  validate_cube(cube);
  require_finite(cube);
  std::vector<std::uint8_t> out;
  out.reserve(17 + cube.wavelengths_nm.size() * 4 + cube.samples.size() * 4);
  out.insert(out.end(), {'H', 'S', 'C', '1'});
  put_u32(out, static_cast<std::uint32_t>(cube.height));
  put_u32(out, static_cast<std::uint32_t>(cube.width));
  put_u32(out, static_cast<std::uint32_t>(cube.channels));
  out.push_back(cube.wavelengths_nm.empty() ? 0 : 1);
  for (float w : cube.wavelengths_nm) put_f32(out, w);
  for (float s : cube.samples) put_f32(out, s);
  return out;
}

HyperCube cube_decode(const std::uint8_t* data, std::size_t size) {
  Reader r{data, size};
  std::uint8_t magic[4];
  r.take(magic, 4, "magic");
  require(std::memcmp(magic, "HSC1", 4) == 0, "cube: bad magic");
  HyperCube cube;
  cube.height = static_cast<int>(r.u32("height"));
  cube.width = static_cast<int>(r.u32("width"));
  cube.channels = static_cast<int>(r.u32("channels"));
  require(cube.height >= 1 && cube.width >= 1 && cube.channels >= 1,
          "cube: dimensions must be positive");
  require(std::int64_t{cube.height} * cube.width * cube.channels <= kMaxElements,
          "cube: implausible dimensions");
  std::uint8_t has_wl = r.u8("wavelength flag");
  require(has_wl <= 1, "cube: bad wavelength flag");
  if (has_wl) {
    cube.wavelengths_nm.resize(cube.channels);
    for (int i = 0; i < cube.channels; ++i) cube.wavelengths_nm[i] = r.f32("wavelength");
  }
  cube.samples.resize(static_cast<std::size_t>(cube.height) * cube.width * cube.channels);
  for (auto& s : cube.samples) s = r.f32("sample");
  require(r.left == 0, "cube: trailing bytes");
  validate_cube(cube);
  require_finite(cube);
  return cube;
}

std::vector<std::uint8_t> map_encode(const Map2D& map) {
  validate_map(map);
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'M', 'A', 'P', '1'});
  put_u32(out, static_cast<std::uint32_t>(map.height()));
  put_u32(out, static_cast<std::uint32_t>(map.width()));
  out.push_back(static_cast<std::uint8_t>(map.kind));
  for (Eigen::Index i = 0; i < map.values.size(); ++i) put_f32(out, map.values.data()[i]);
  return out;
}

Map2D map_decode(const std::uint8_t* data, std::size_t size) {
  require(size >= 4, "map: truncated payload reading magic");
  if (std::memcmp(data, "P5", 2) == 0) {
    // PGM path: whitespace-separated header tokens, '#' starts a comment.
    std::size_t pos = 2;
    auto next_int = [&](const char* what) {
      while (pos < size && (std::isspace(data[pos]) || data[pos] == '#')) {
        if (data[pos] == '#')
          while (pos < size && data[pos] != '\n') ++pos;
        else
          ++pos;
      }
      require(pos < size, std::string("pgm: truncated header reading ") + what);
      require(std::isdigit(data[pos]), std::string("pgm: malformed header reading ") + what);
      std::int64_t v = 0;
      while (pos < size && std::isdigit(data[pos])) v = v * 10 + (data[pos++] - '0');
      return v;
    };
    std::int64_t w = next_int("width");
    std::int64_t h = next_int("height");
    std::int64_t maxval = next_int("maxval");
    require(w >= 1 && h >= 1 && w * h <= kMaxElements, "pgm: implausible dimensions");
    require(maxval == 65535, "pgm: expected maxval 65535");
    require(pos < size && std::isspace(data[pos]), "pgm: missing header terminator");
    ++pos;
    require(size - pos == static_cast<std::size_t>(w * h * 2), "pgm: sample block size mismatch");
    Map2D map;
    map.kind = MapKind::Normalized;
    map.values.resize(h, w);
    for (std::int64_t i = 0; i < h * w; ++i) {
      std::uint16_t v = static_cast<std::uint16_t>(data[pos] << 8 | data[pos + 1]);
      pos += 2;
      map.values.data()[i] = static_cast<float>(v) / 65535.0f;
    }
    return map;
  }
  Reader r{data, size};
  std::uint8_t magic[4];
  r.take(magic, 4, "magic");
  require(std::memcmp(magic, "MAP1", 4) == 0, "map: bad magic");
  Map2D map;
  std::int64_t h = r.u32("height");
  std::int64_t w = r.u32("width");
  require(h >= 1 && w >= 1 && h * w <= kMaxElements, "map: implausible dimensions");
  std::uint8_t kind = r.u8("kind");
  require(kind <= 2, "map: bad kind byte");
  map.kind = static_cast<MapKind>(kind);
  map.values.resize(h, w);
  for (std::int64_t i = 0; i < h * w; ++i) map.values.data()[i] = r.f32("sample");
  require(r.left == 0, "map: trailing bytes");
  validate_map(map);
  return map;
}

std::vector<std::uint8_t> map_encode_pgm16(const Map2D& map) {
  require(map.kind == MapKind::Normalized || map.kind == MapKind::Binary,
          "pgm: 16-bit export requires a normalized or binary map");
  validate_map(map);
  std::string header =
      "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n65535\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(map.values.size()) * 2);
  for (Eigen::Index i = 0; i < map.values.size(); ++i) {
    double v = map.values.data()[i];
    require(v >= 0.0 && v <= 1.0, "pgm: value outside [0,1]");
    auto q = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xff));
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  require(!in.bad(), "read failed: " + path);
  return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), "cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  require(out.good(), "write failed: " + path);
}

void cube_write(const std::string& path, const HyperCube& cube) {
  write_file(path, cube_encode(cube));
}

HyperCube cube_read(const std::string& path) {
  auto bytes = read_file(path);
  return cube_decode(bytes.data(), bytes.size());
}

void map_write(const std::string& path, const Map2D& map) {
  write_file(path, map_encode(map));
}

void map_write_pgm16(const std::string& path, const Map2D& map) {
  write_file(path, map_encode_pgm16(map));
}

Map2D map_read(const std::string& path) {
  auto bytes = read_file(path);
  return map_decode(bytes.data(), bytes.size());
}

}  // namespace specsal
