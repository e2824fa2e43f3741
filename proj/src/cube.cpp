#include "specsal/cube.hpp"

#include <cmath>

namespace specsal {

void validate_map(const Map2D& m) {
  require(m.values.rows() >= 1 && m.values.cols() >= 1, "map: empty dimensions");
  for (Eigen::Index i = 0; i < m.values.size(); ++i) {
    float v = m.values.data()[i];
    require(std::isfinite(v), "map: non-finite value");
    if (m.kind == MapKind::Normalized)
      require(v >= 0.0f && v <= 1.0f, "map: normalized value outside [0,1]");
    else if (m.kind == MapKind::Binary)
      require(v == 0.0f || v == 1.0f, "map: binary value not in {0,1}");
  }
}

HyperCube HyperCube::zeros(int h, int w, int c) { return constant(h, w, c, 0.0f); }

HyperCube HyperCube::constant(int h, int w, int c, float value) {
  require(h >= 1 && w >= 1 && c >= 1, "cube: dimensions must be positive");
  HyperCube cube;
  cube.height = h;
  cube.width = w;
  cube.channels = c;
  cube.samples.assign(static_cast<std::size_t>(h) * w * c, value);
  return cube;
}

void validate_cube(const HyperCube& cube) {
  require(cube.height >= 1 && cube.width >= 1 && cube.channels >= 1,
          "cube: dimensions must be positive");
  require(cube.samples.size() ==
              static_cast<std::size_t>(cube.height) * cube.width * cube.channels,
          "cube: sample count does not match dimensions");
  if (!cube.wavelengths_nm.empty()) {
    require(static_cast<int>(cube.wavelengths_nm.size()) == cube.channels,
            "cube: wavelength table length does not match channel count");
    for (int i = 0; i < cube.channels; ++i) {
      require(std::isfinite(cube.wavelengths_nm[i]), "cube: non-finite wavelength");
      if (i > 0)
        require(cube.wavelengths_nm[i] > cube.wavelengths_nm[i - 1],
                "cube: wavelengths must be strictly increasing");
    }
  }
}

void require_finite(const HyperCube& cube) {
  for (float v : cube.samples)
    require(std::isfinite(v), "cube: non-finite sample");
}

HyperCube rot90_ccw(const HyperCube& cube) {
  validate_cube(cube);
  HyperCube out = HyperCube::zeros(cube.width, cube.height, cube.channels);
  out.wavelengths_nm = cube.wavelengths_nm;
  for (int b = 0; b < cube.channels; ++b)
    for (int i = 0; i < out.height; ++i)
      for (int j = 0; j < out.width; ++j)
        out.at(i, j, b) = cube.at(j, cube.width - 1 - i, b);
  return out;
}

Map2D rot90_ccw(const Map2D& map) {
  Map2D out;
  out.kind = map.kind;
  out.values.resize(map.values.cols(), map.values.rows());
  for (Eigen::Index i = 0; i < out.values.rows(); ++i)
    for (Eigen::Index j = 0; j < out.values.cols(); ++j)
      out.values(i, j) = map.values(j, map.values.cols() - 1 - i);
  return out;
}

}  // namespace specsal
