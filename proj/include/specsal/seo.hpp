#pragma once

#include "specsal/cube.hpp"
#include "specsal/resample.hpp"
#include "specsal/sad.hpp"

namespace specsal {

struct SeoConfig {
  std::vector<int> kernel_sizes = {3, 5, 7};
};

void validate_seo_config(const SeoConfig& cfg);

// Separable derivative kernels: gx = smooth (outer) deriv, gy = gx^T.
// Supported sizes: 3, 5, 7. Rows of gx sum to zero and gx is antisymmetric
// about its central column.
struct GradientKernels {
  int k = 0;
  Eigen::VectorXf smooth, deriv;
  RowMatrix<float> gx, gy;
};

GradientKernels make_gradient_kernels(int k);

// k x k map of SAD between the spectrum at (i, j) and each window pixel,
// window coordinates clamped to the image. The center entry is exactly 0.
RowMatrix<double> local_sad_map(const HyperCube& cube, int i, int j, int k);

// Per-pixel |gx . M| + |gy . M| where M is the local SAD map and "." is the
// full-window correlation collapsing M to a scalar. Spectral norms are
// precomputed once per image and work is tiled over rows.
Map2D spectral_edge(const HyperCube& cube, int k, std::int64_t* degenerate_count = nullptr,
                    int threads = 0);

// One edge map per configured kernel size.
std::vector<Map2D> run_seo(const HyperCube& cube, const SeoConfig& cfg, int threads = 0);

// 3x3 Sobel gradient magnitude sqrt(gx^2 + gy^2), replicate border.
Map2D sobel_magnitude(const Map2D& map);

// Binary edge ground truth: normalized Sobel magnitude of the false-color
// luma plus normalized Sobel magnitude of the normalized saliency sum,
// clamped to [0,1] and thresholded at `threshold`.
Map2D edge_ground_truth(const FalseColor& fc, const std::vector<Map2D>& saliency,
                        double threshold = 0.5);

}  // namespace specsal
