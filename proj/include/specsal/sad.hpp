#pragma once

#include "specsal/cube.hpp"

namespace specsal {

// Spectral angular distance in radians, range [0, pi]. Either vector having
// zero norm makes the pair degenerate: the distance is defined as 0 and
// *degenerate is set when provided.
//
// Accumulation is a fixed-order double loop, and colinearity is decided by
// comparing dot^2 against n1*n2 before any sqrt/acos. That makes sad(v, v)
// exactly 0 for identical inputs and keeps the result bit-invariant under
// power-of-two rescaling of either argument.
double sad(const float* a, std::ptrdiff_t stride_a, const float* b, std::ptrdiff_t stride_b,
           int n, bool* degenerate = nullptr);

double sad(const SpectralVector& a, const SpectralVector& b, bool* degenerate = nullptr);

}  // namespace specsal
