#pragma once

#include "specsal/cube.hpp"

namespace specsal {

namespace detail {

struct ResampleTap {
  int lo, hi;
  double t;
};

// Center-aligned source coordinates for a 1D resize, clamped into range.
std::vector<ResampleTap> resample_taps(int in_n, int out_n);

}  // namespace detail

// Bilinear plane resize with center-aligned sampling and clamped borders.
// Uses the lerp form a + t*(b-a), so constant planes and identity sizes
// reproduce their inputs bit-exactly.
template <typename T>
RowArray<T> resize_plane_bilinear(const Eigen::Ref<const RowArray<T>>& in, int out_h,
                                  int out_w) {
  require(in.rows() >= 1 && in.cols() >= 1, "resize: empty input plane");
  require(out_h >= 1 && out_w >= 1, "resize: output dimensions must be positive");
  auto ys = detail::resample_taps(static_cast<int>(in.rows()), out_h);
  auto xs = detail::resample_taps(static_cast<int>(in.cols()), out_w);
  auto lerp = [](T a, T b, T t) { return a + t * (b - a); };
  RowArray<T> out(out_h, out_w);
  for (int i = 0; i < out_h; ++i) {
    const auto& ty = ys[i];
    for (int j = 0; j < out_w; ++j) {
      const auto& tx = xs[j];
      T tj = static_cast<T>(tx.t);
      T top = lerp(in(ty.lo, tx.lo), in(ty.lo, tx.hi), tj);
      T bot = lerp(in(ty.hi, tx.lo), in(ty.hi, tx.hi), tj);
      out(i, j) = lerp(top, bot, static_cast<T>(ty.t));
    }
  }
  return out;
}

// Spatial bilinear resize per band, then linear interpolation along the band
// axis at out_c positions spanning [0, channels-1] (midpoint when out_c is 1).
// Wavelengths, when present, are interpolated at the same positions.
HyperCube resample_cube(const HyperCube& cube, int out_h, int out_w, int out_c,
                        int threads = 0);

Map2D resize_map_bilinear(const Map2D& map, int out_h, int out_w);

// Min-max rescale to [0,1]; constant input maps to all zeros.
Map2D normalize_map(const Map2D& map);

struct FalseColor {
  Map2D r, g, b;
};

// Picks the bands nearest 650/550/450 nm when wavelengths are present,
// otherwise bands at round(0.75/0.5/0.25 * (channels-1)), and min-max
// normalizes each plane independently.
FalseColor render_false_color(const HyperCube& cube);

}  // namespace specsal
