#pragma once

#include "specsal/core.hpp"

#include <map>
#include <string>

namespace specsal {

// Named tensor container, little-endian:
//   "MFA1" | u32 count | per tensor:
//     u16 name_len | name bytes | u8 rank | rank x u32 dims | f32 data
// Tensors are written in name order, so encoding is deterministic.
struct BundleTensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::size_t element_count() const {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
  }
};

using ParamBundle = std::map<std::string, BundleTensor>;

std::vector<std::uint8_t> bundle_encode(const ParamBundle& bundle);
ParamBundle bundle_decode(const std::uint8_t* data, std::size_t size);
void bundle_write(const std::string& path, const ParamBundle& bundle);
ParamBundle bundle_read(const std::string& path);

}  // namespace specsal
