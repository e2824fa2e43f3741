#include "specsal/sad.hpp"

#include <cmath>

namespace specsal {

double sad(const float* a, std::ptrdiff_t stride_a, const float* b, std::ptrdiff_t stride_b,
           int n, bool* degenerate) {
  double dot = 0.0, n1 = 0.0, n2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = a[i * stride_a];
    double y = b[i * stride_b];
    dot += x * y;
    n1 += x * x;
    n2 += y * y;
  }
  if (n1 == 0.0 || n2 == 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  double c2 = dot * dot;
  double d2 = n1 * n2;
  if (c2 >= d2) return dot >= 0.0 ? 0.0 : M_PI;
  double cosang = dot / std::sqrt(d2);
  if (cosang > 1.0) cosang = 1.0;
  if (cosang < -1.0) cosang = -1.0;
  return std::acos(cosang);
}

double sad(const SpectralVector& a, const SpectralVector& b, bool* degenerate) {
  require(a.size() == b.size(), "sad: vector lengths differ");
  require(a.size() >= 1, "sad: empty vectors");
  return sad(a.data(), 1, b.data(), 1, static_cast<int>(a.size()), degenerate);
}

}  // namespace specsal
