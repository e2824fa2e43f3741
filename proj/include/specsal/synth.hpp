#pragma once

#include "specsal/cube.hpp"

namespace specsal {

enum class SynthShape { Disk, Rectangle };

// Renders a single foreground shape over a background, both with fixed
// spectra, plus seeded Gaussian noise per sample. Returns the cube and the
// binary ground-truth mask.
//
// The shape is centered at ((h-1)/2, (w-1)/2). `radius` <= 0 picks the
// default min(h, w)/4; for rectangles it is the half-extent on both axes.
// The shape must fit inside the image.
struct SynthResult {
  HyperCube cube;
  Map2D truth;
};

SynthResult synth_scene(int h, int w, int c, SynthShape shape, const SpectralVector& fg,
                        const SpectralVector& bg, float noise_sigma, std::uint32_t seed,
                        double radius = -1.0);

}  // namespace specsal
