#pragma once

#include "specsal/core.hpp"

namespace specsal {

using SpectralVector = Eigen::VectorXf;

enum class MapKind : std::uint8_t { Raw = 0, Normalized = 1, Binary = 2 };

// Single-channel 2D map. Values are float32; `kind` declares the value
// contract (Normalized -> [0,1], Binary -> {0,1}).
struct Map2D {
  RowArrayf values;
  MapKind kind = MapKind::Raw;

  int height() const { return static_cast<int>(values.rows()); }
  int width() const { return static_cast<int>(values.cols()); }
};

void validate_map(const Map2D& m);

// Hyperspectral cube, band-sequential storage, row-major within each band.
struct HyperCube {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> samples;        // height*width*channels
  std::vector<float> wavelengths_nm; // empty, or one entry per channel

  static HyperCube zeros(int h, int w, int c);
  static HyperCube constant(int h, int w, int c, float value);

  std::int64_t plane() const { return std::int64_t{height} * width; }
  std::int64_t size() const { return plane() * channels; }

  float& at(int y, int x, int b) {
    return samples[static_cast<std::size_t>(b) * plane() + std::int64_t{y} * width + x];
  }
  float at(int y, int x, int b) const {
    return samples[static_cast<std::size_t>(b) * plane() + std::int64_t{y} * width + x];
  }

  Eigen::Map<RowArrayf> band(int b) {
    return {samples.data() + std::int64_t{b} * plane(), height, width};
  }
  Eigen::Map<const RowArrayf> band(int b) const {
    return {samples.data() + std::int64_t{b} * plane(), height, width};
  }

  SpectralVector spectrum(int y, int x) const {
    SpectralVector v(channels);
    const float* p = samples.data() + std::int64_t{y} * width + x;
    for (int b = 0; b < channels; ++b, p += plane()) v[b] = *p;
    return v;
  }
};

// Checks dimensions, storage size and the wavelength table. Does not scan
// samples; codecs do the finiteness scan on load.
void validate_cube(const HyperCube& cube);

// Rejects NaN/Inf anywhere in the sample block.
void require_finite(const HyperCube& cube);

// Counter-clockwise quarter turn: out(i, j) = in(j, W-1-i).
HyperCube rot90_ccw(const HyperCube& cube);
Map2D rot90_ccw(const Map2D& map);

}  // namespace specsal
