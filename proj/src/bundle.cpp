#include "specsal/bundle.hpp"

#include "specsal/codec.hpp"

#include <cmath>
#include <cstring>

namespace specsal {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

}  // namespace

std::vector<std::uint8_t> bundle_encode(const ParamBundle& bundle) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'M', 'F', 'A', '1'});
  put_u32(out, static_cast<std::uint32_t>(bundle.size()));
  for (const auto& [name, tensor] : bundle) {
    require(!name.empty() && name.size() <= 0xffff, "bundle: bad tensor name");
    require(!tensor.dims.empty() && tensor.dims.size() <= 255, "bundle: bad tensor rank");
    require(tensor.data.size() == tensor.element_count(),
            "bundle: data size does not match dims");
    put_u16(out, static_cast<std::uint16_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    out.push_back(static_cast<std::uint8_t>(tensor.dims.size()));
    for (auto d : tensor.dims) {
      require(d >= 1, "bundle: zero dimension");
      put_u32(out, d);
    }
    for (float v : tensor.data) {
      require(std::isfinite(v), "bundle: non-finite value");
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      put_u32(out, bits);
    }
  }
  return out;
}

ParamBundle bundle_decode(const std::uint8_t* data, std::size_t size) {
  std::size_t pos = 0;
  auto need = [&](std::size_t n, const char* what) {
    require(size - pos >= n, std::string("bundle: truncated payload reading ") + what);
  };
  auto u16 = [&](const char* what) {
    need(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(data[pos] | data[pos + 1] << 8);
    pos += 2;
    return v;
  };
  auto u32 = [&](const char* what) {
    need(4, what);
    std::uint32_t v = std::uint32_t{data[pos]} | std::uint32_t{data[pos + 1]} << 8 |
                      std::uint32_t{data[pos + 2]} << 16 | std::uint32_t{data[pos + 3]} << 24;
    pos += 4;
    return v;
  };
  need(4, "magic");
  require(std::memcmp(data, "MFA1", 4) == 0, "bundle: bad magic");
  pos = 4;
  std::uint32_t count = u32("count");
  ParamBundle bundle;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint16_t name_len = u16("name length");
    require(name_len > 0, "bundle: empty tensor name");
    need(name_len, "name");
    std::string name(reinterpret_cast<const char*>(data + pos), name_len);
    pos += name_len;
    require(!bundle.count(name), "bundle: duplicate tensor name");
    need(1, "rank");
    std::uint8_t rank = data[pos++];
    require(rank >= 1, "bundle: zero rank");
    BundleTensor t;
    std::uint64_t elems = 1;
    for (int r = 0; r < rank; ++r) {
      std::uint32_t d = u32("dimension");
      require(d >= 1, "bundle: zero dimension");
      t.dims.push_back(d);
      elems *= d;
      require(elems <= (std::uint64_t{1} << 31), "bundle: implausible tensor size");
    }
    t.data.resize(elems);
    for (std::uint64_t e = 0; e < elems; ++e) {
      std::uint32_t bits = u32("value");
      float v;
      std::memcpy(&v, &bits, 4);
      require(std::isfinite(v), "bundle: non-finite value");
      t.data[e] = v;
    }
    bundle.emplace(std::move(name), std::move(t));
  }
  require(pos == size, "bundle: trailing bytes");
  return bundle;
}

void bundle_write(const std::string& path, const ParamBundle& bundle) {
  write_file(path, bundle_encode(bundle));
}

ParamBundle bundle_read(const std::string& path) {
  auto bytes = read_file(path);
  return bundle_decode(bytes.data(), bytes.size());
}

}  // namespace specsal
