#include "specsal/ssg.hpp"

#include "specsal/resample.hpp"

#include <cmath>

namespace specsal {

void validate_ssg_config(const SsgConfig& cfg) {
  require(cfg.num_layers >= 2, "ssg: need at least two pyramid layers");
  require(cfg.surround_offset >= 1, "ssg: surround offset must be positive");
  require(!cfg.centers.empty(), "ssg: no center scales configured");
  for (int c : cfg.centers) {
    require(c >= 0, "ssg: negative center scale");
    require(c + cfg.surround_offset <= cfg.num_layers - 1,
            "ssg: center + offset exceeds the coarsest layer");
  }
  float sum = 0.0f;
  for (float t : cfg.taps) {
    require(std::isfinite(t), "ssg: non-finite blur tap");
    sum += t;
  }
  require(std::abs(sum - 1.0f) <= 1e-6f, "ssg: blur taps must sum to 1");
}

namespace {

// 5-tap blur at one position, replicate border, DC-preserving form.
inline float blur5(const float* v, int n, int i, const std::array<float, 5>& taps) {
  auto get = [&](int k) { return v[std::clamp(k, 0, n - 1)]; };
  float c = get(i);
  return c + (taps[0] * (get(i - 2) - c) + taps[1] * (get(i - 1) - c) +
              taps[3] * (get(i + 1) - c) + taps[4] * (get(i + 2) - c));
}

}  // namespace

HyperCube reduce_layer(const HyperCube& cube, const std::array<float, 5>& taps, int threads) {
  validate_cube(cube);
  require(cube.height >= 2 && cube.width >= 2, "reduce: dimension would fall below 1");
  int oh = cube.height / 2;
  int ow = cube.width / 2;
  HyperCube out = HyperCube::zeros(oh, ow, cube.channels);
  out.wavelengths_nm = cube.wavelengths_nm;
  parallel_for(cube.channels, threads, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<float> row(cube.width);
    RowArrayf hpass(cube.height, ow);
    for (std::int64_t b = lo; b < hi; ++b) {
      auto src = cube.band(static_cast<int>(b));
      // Horizontal blur sampled at the kept (even) columns only.
      for (int y = 0; y < cube.height; ++y) {
        const float* r = src.data() + std::int64_t{y} * cube.width;
        for (int j = 0; j < ow; ++j) hpass(y, j) = blur5(r, cube.width, 2 * j, taps);
      }
      auto dst = out.band(static_cast<int>(b));
      std::vector<float> col(cube.height);
      for (int j = 0; j < ow; ++j) {
        for (int y = 0; y < cube.height; ++y) col[y] = hpass(y, j);
        for (int i = 0; i < oh; ++i) dst(i, j) = blur5(col.data(), cube.height, 2 * i, taps);
      }
    }
  });
  return out;
}

std::vector<HyperCube> build_pyramid(const HyperCube& cube, const SsgConfig& cfg, int threads) {
  validate_cube(cube);
  validate_ssg_config(cfg);
  std::int64_t need = std::int64_t{1} << (cfg.num_layers - 1);
  require(std::min(cube.height, cube.width) >= need,
          "pyramid: input too small for the configured layer count");
  std::vector<HyperCube> layers;
  layers.reserve(cfg.num_layers);
  layers.push_back(cube);
  for (int l = 1; l < cfg.num_layers; ++l)
    layers.push_back(reduce_layer(layers.back(), cfg.taps, threads));
  return layers;
}

Map2D saliency_from_pair(const std::vector<HyperCube>& pyramid, int center, int surround,
                         int out_h, int out_w, std::int64_t* degenerate_count, int threads) {
  require(center >= 0 && surround > center &&
              surround < static_cast<int>(pyramid.size()),
          "saliency: bad layer pair");
  const HyperCube& c = pyramid[center];
  HyperCube s_up = resample_cube(pyramid[surround], c.height, c.width,
                                 pyramid[surround].channels, threads);
  require(s_up.channels == c.channels, "saliency: channel mismatch between layers");

  Map2D sal;
  sal.kind = MapKind::Raw;
  sal.values.resize(c.height, c.width);
  std::int64_t plane = c.plane();
  std::vector<std::int64_t> degen_per_row(c.height, 0);
  parallel_for(c.height, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t y = lo; y < hi; ++y) {
      const float* crow = c.samples.data() + y * c.width;
      const float* srow = s_up.samples.data() + y * c.width;
      for (int x = 0; x < c.width; ++x) {
        bool degen = false;
        sal.values(y, x) = static_cast<float>(
            sad(crow + x, plane, srow + x, plane, c.channels, &degen));
        if (degen) ++degen_per_row[y];
      }
    }
  });
  if (degenerate_count) {
    *degenerate_count = 0;
    for (std::int64_t d : degen_per_row) *degenerate_count += d;
  }
  return resize_map_bilinear(sal, out_h, out_w);
}

std::vector<Map2D> run_ssg(const HyperCube& cube, const SsgConfig& cfg, int threads) {
  auto pyramid = build_pyramid(cube, cfg, threads);
  std::vector<Map2D> maps;
  maps.reserve(cfg.centers.size());
  for (int c : cfg.centers)
    maps.push_back(saliency_from_pair(pyramid, c, c + cfg.surround_offset, cube.height,
                                      cube.width, nullptr, threads));
  return maps;
}

}  // namespace specsal
