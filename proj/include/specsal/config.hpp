#pragma once

#include "specsal/attention.hpp"
#include "specsal/seo.hpp"
#include "specsal/ssg.hpp"

#include <string>

namespace specsal {

// Effective settings for a pipeline run. Parsed from plain key=value text;
// command-line flags override file values.
struct RunConfig {
  std::string input;
  std::string output;
  int threads = 0;  // 0 = hardware default (or THREADS env)
  int ssg_num_layers = 8;
  std::vector<int> ssg_centers{2, 3, 4};
  int ssg_offset = 3;
  std::vector<int> seo_kernel_sizes{3, 5, 7};
  int attn_k_high = 13;
  int attn_k_low = 9;
  Normalizer attn_normalizer = Normalizer::Sigmoid;
  unsigned attn_seed = 0;
  double eval_beta2 = 0.3;
  double eval_alpha = 0.5;

  bool operator==(const RunConfig&) const = default;
};

// Parses key=value lines ('#' comments and blank lines allowed). Unknown
// keys are an error.
RunConfig parse_config_text(const std::string& text);
RunConfig read_config(const std::string& path);

// Emits every key; parse_config_text(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

SsgConfig ssg_config(const RunConfig& cfg);
SeoConfig seo_config(const RunConfig& cfg);

Normalizer parse_normalizer(const std::string& name);
std::string normalizer_name(Normalizer n);

}  // namespace specsal
