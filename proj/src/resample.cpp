#include "specsal/resample.hpp"

#include <cmath>

namespace specsal {

namespace detail {

std::vector<ResampleTap> resample_taps(int in_n, int out_n) {
  std::vector<ResampleTap> taps(out_n);
  double scale = static_cast<double>(in_n) / out_n;
  for (int i = 0; i < out_n; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    if (s < 0.0) s = 0.0;
    if (s > in_n - 1) s = in_n - 1;
    int lo = static_cast<int>(std::floor(s));
    taps[i] = {lo, std::min(lo + 1, in_n - 1), s - lo};
  }
  return taps;
}

}  // namespace detail

HyperCube resample_cube(const HyperCube& cube, int out_h, int out_w, int out_c, int threads) {
  validate_cube(cube);
  require(out_h >= 1 && out_w >= 1 && out_c >= 1, "resample: output dimensions must be positive");

  HyperCube spatial = HyperCube::zeros(out_h, out_w, cube.channels);
  parallel_for(cube.channels, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t b = lo; b < hi; ++b)
      spatial.band(static_cast<int>(b)) =
          resize_plane_bilinear<float>(cube.band(static_cast<int>(b)), out_h, out_w);
  });

  if (out_c == cube.channels) {
    spatial.wavelengths_nm = cube.wavelengths_nm;
    return spatial;
  }

  // Band positions span [0, channels-1]; a single output band sits at the
  // midpoint.
  std::vector<detail::ResampleTap> bands(out_c);
  for (int k = 0; k < out_c; ++k) {
    double pos = out_c == 1 ? (cube.channels - 1) / 2.0
                            : static_cast<double>(k) * (cube.channels - 1) / (out_c - 1);
    int lo = static_cast<int>(std::floor(pos));
    bands[k] = {lo, std::min(lo + 1, cube.channels - 1), pos - lo};
  }

  auto lerp = [](float a, float b, float t) { return a + t * (b - a); };
  HyperCube out = HyperCube::zeros(out_h, out_w, out_c);
  parallel_for(out_c, threads, [&](std::int64_t klo, std::int64_t khi) {
    for (std::int64_t k = klo; k < khi; ++k) {
      const auto& tb = bands[k];
      auto a = spatial.band(tb.lo);
      auto b = spatial.band(tb.hi);
      auto dst = out.band(static_cast<int>(k));
      float t = static_cast<float>(tb.t);
      for (Eigen::Index i = 0; i < dst.size(); ++i)
        dst.data()[i] = lerp(a.data()[i], b.data()[i], t);
    }
  });
  if (!cube.wavelengths_nm.empty()) {
    out.wavelengths_nm.resize(out_c);
    for (int k = 0; k < out_c; ++k)
      out.wavelengths_nm[k] = lerp(cube.wavelengths_nm[bands[k].lo],
                                   cube.wavelengths_nm[bands[k].hi],
                                   static_cast<float>(bands[k].t));
  }
  return out;
}

Map2D resize_map_bilinear(const Map2D& map, int out_h, int out_w) {
  Map2D out;
  out.kind = map.kind;
  out.values = resize_plane_bilinear<float>(map.values, out_h, out_w);
  return out;
}

Map2D normalize_map(const Map2D& map) {
  require(map.values.size() > 0, "normalize: empty map");
  Map2D out;
  out.kind = MapKind::Normalized;
  float lo = map.values.minCoeff();
  float hi = map.values.maxCoeff();
  require(std::isfinite(lo) && std::isfinite(hi), "normalize: non-finite values");
  if (lo == hi) {
    out.values = RowArrayf::Zero(map.values.rows(), map.values.cols());
  } else {
    // Monotone subtraction and division keep the result inside [0,1].
    out.values = (map.values - lo) / (hi - lo);
  }
  return out;
}

FalseColor render_false_color(const HyperCube& cube) {
  validate_cube(cube);
  int picks[3];
  if (!cube.wavelengths_nm.empty()) {
    const float targets[3] = {650.0f, 550.0f, 450.0f};
    for (int t = 0; t < 3; ++t) {
      int best = 0;
      float best_d = std::abs(cube.wavelengths_nm[0] - targets[t]);
      for (int b = 1; b < cube.channels; ++b) {
        float d = std::abs(cube.wavelengths_nm[b] - targets[t]);
        if (d < best_d) {
          best = b;
          best_d = d;
        }
      }
      picks[t] = best;
    }
  } else {
    picks[0] = static_cast<int>(std::lround(0.75 * (cube.channels - 1)));
    picks[1] = static_cast<int>(std::lround(0.50 * (cube.channels - 1)));
    picks[2] = static_cast<int>(std::lround(0.25 * (cube.channels - 1)));
  }
  auto plane = [&](int b) {
    Map2D m;
    m.kind = MapKind::Raw;
    m.values = cube.band(b);
    return normalize_map(m);
  };
  return {plane(picks[0]), plane(picks[1]), plane(picks[2])};
}

}  // namespace specsal
