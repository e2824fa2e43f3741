#pragma once

#include "specsal/cube.hpp"
#include "specsal/sad.hpp"

#include <array>

namespace specsal {

struct SsgConfig {
  int num_layers = 8;
  std::vector<int> centers = {2, 3, 4};
  int surround_offset = 3;
  // Binomial 5-tap blur, taps must sum to 1.
  std::array<float, 5> taps = {1.0f / 16, 4.0f / 16, 6.0f / 16, 4.0f / 16, 1.0f / 16};
};

void validate_ssg_config(const SsgConfig& cfg);

// Separable 5-tap blur with replicated borders, then decimation keeping
// even-indexed rows/cols. Output dims are floor(in/2); inputs need
// min(h, w) >= 2. The blur is evaluated in the DC-preserving form
// v2 + sum(tap_i * (v_i - v2)), so constant bands reduce bit-exactly.
HyperCube reduce_layer(const HyperCube& cube, const std::array<float, 5>& taps,
                       int threads = 0);

// Layer 0 is the input; layer l+1 = reduce_layer(layer l). Requires
// min(h, w) >= 2^(num_layers - 1).
std::vector<HyperCube> build_pyramid(const HyperCube& cube, const SsgConfig& cfg,
                                     int threads = 0);

// Center-surround map for pyramid layers c and s: layer s is bilinearly
// upsampled per band to layer c's grid, SAD is taken per pixel, and the map
// is bilinearly upsampled to out_h x out_w. Zero-norm spectra contribute a
// 0 distance and bump *degenerate_count when provided.
Map2D saliency_from_pair(const std::vector<HyperCube>& pyramid, int center, int surround,
                         int out_h, int out_w, std::int64_t* degenerate_count = nullptr,
                         int threads = 0);

// One map per configured center scale, at the input's resolution.
std::vector<Map2D> run_ssg(const HyperCube& cube, const SsgConfig& cfg, int threads = 0);

}  // namespace specsal
