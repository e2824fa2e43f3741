#include "specsal/synth.hpp"

#include <cmath>
#include <random>

namespace specsal {

SynthResult synth_scene(int h, int w, int c, SynthShape shape, const SpectralVector& fg,
                        const SpectralVector& bg, float noise_sigma, std::uint32_t seed,
                        double radius) {
  require(h >= 1 && w >= 1 && c >= 1, "synth: dimensions must be positive");
  require(fg.size() == c && bg.size() == c, "synth: spectrum length must match channel count");
  require(fg.norm() > 0.0f && bg.norm() > 0.0f, "synth: zero-norm spectrum");
  require(noise_sigma >= 0.0f, "synth: negative noise sigma");

  double cy = (h - 1) / 2.0;
  double cx = (w - 1) / 2.0;
  double r = radius > 0.0 ? radius : std::min(h, w) / 4.0;
  require(cy - r >= 0.0 && cy + r <= h - 1 && cx - r >= 0.0 && cx + r <= w - 1,
          "synth: shape larger than image");

  SynthResult out;
  out.truth.kind = MapKind::Binary;
  out.truth.values = RowArrayf::Zero(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool inside = shape == SynthShape::Disk
                        ? (y - cy) * (y - cy) + (x - cx) * (x - cx) <= r * r
                        : std::abs(y - cy) <= r && std::abs(x - cx) <= r;
      out.truth.values(y, x) = inside ? 1.0f : 0.0f;
    }

  out.cube = HyperCube::zeros(h, w, c);
  for (int b = 0; b < c; ++b) {
    auto band = out.cube.band(b);
    band = (out.truth.values == 1.0f).select(RowArrayf::Constant(h, w, fg[b]),
                                             RowArrayf::Constant(h, w, bg[b]));
  }
  if (noise_sigma > 0.0f) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, noise_sigma);
    // Noise is drawn in storage order (band, row, col) so a fixed seed
    // reproduces the cube exactly.
    for (auto& s : out.cube.samples) s += static_cast<float>(dist(rng));
  }
  return out;
}

}  // namespace specsal
