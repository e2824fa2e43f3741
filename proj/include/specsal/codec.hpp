#pragma once

#include "specsal/cube.hpp"

#include <string>

namespace specsal {

// Cube container, little-endian:
//   "HSC1" | u32 height | u32 width | u32 channels | u8 has_wavelengths |
//   [channels x f32 wavelengths] | height*width*channels x f32 samples
// Samples are band-sequential, row-major within a band.
std::vector<std::uint8_t> cube_encode(const HyperCube& cube);
HyperCube cube_decode(const std::uint8_t* data, std::size_t size);
void cube_write(const std::string& path, const HyperCube& cube);
HyperCube cube_read(const std::string& path);

// Raw float map, little-endian:
//   "MAP1" | u32 height | u32 width | u8 kind | height*width x f32 row-major
std::vector<std::uint8_t> map_encode(const Map2D& map);
Map2D map_decode(const std::uint8_t* data, std::size_t size);
void map_write(const std::string& path, const Map2D& map);

// 16-bit binary PGM ("P5", maxval 65535, big-endian samples) storing
// round(v * 65535). Input must be Normalized or Binary.
std::vector<std::uint8_t> map_encode_pgm16(const Map2D& map);
void map_write_pgm16(const std::string& path, const Map2D& map);

// Reads either container, dispatching on the magic bytes. PGM data comes
// back as sample/65535 with kind Normalized.
Map2D map_read(const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace specsal
