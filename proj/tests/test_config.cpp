#include "doctest.h"

#include "specsal/config.hpp"

using namespace specsal;

TEST_CASE("defaults survive an emit/parse round trip") {
  RunConfig def;
  RunConfig back = parse_config_text(emit_config(def));
  CHECK(back == def);

  RunConfig custom;
  custom.input = "scene.hsc";
  custom.output = "out/dir";
  custom.threads = 4;
  custom.ssg_num_layers = 5;
  custom.ssg_centers = {1, 2};
  custom.ssg_offset = 2;
  custom.seo_kernel_sizes = {3, 7};
  custom.attn_k_high = 9;
  custom.attn_k_low = 5;
  custom.attn_normalizer = Normalizer::Softmax;
  custom.attn_seed = 99;
  custom.eval_beta2 = 0.25;
  custom.eval_alpha = 0.625;
  RunConfig custom_back = parse_config_text(emit_config(custom));
  CHECK(custom_back == custom);
}

TEST_CASE("parser accepts comments, blanks and spaced values") {
  RunConfig cfg = parse_config_text(
      "# pipeline settings\n"
      "\n"
      "threads = 2\n"
      "ssg.centers = 1, 2, 3\n"
      "attn.normalizer = softmax\n"
      "eval.alpha=0.75\n");
  CHECK(cfg.threads == 2);
  CHECK(cfg.ssg_centers == std::vector<int>{1, 2, 3});
  CHECK(cfg.attn_normalizer == Normalizer::Softmax);
  CHECK(cfg.eval_alpha == 0.75);
  // Untouched keys keep their defaults.
  CHECK(cfg.ssg_num_layers == 8);
  CHECK(cfg.seo_kernel_sizes == std::vector<int>{3, 5, 7});
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_config_text("unknown_key=3\n"), Error);
  CHECK_THROWS_AS(parse_config_text("threads\n"), Error);
  CHECK_THROWS_AS(parse_config_text("threads=abc\n"), Error);
  CHECK_THROWS_AS(parse_config_text("threads=2x\n"), Error);
  CHECK_THROWS_AS(parse_config_text("eval.alpha=\n"), Error);
  CHECK_THROWS_AS(parse_config_text("eval.alpha=0.5.5\n"), Error);
  CHECK_THROWS_AS(parse_config_text("attn.normalizer=linear\n"), Error);
  CHECK_THROWS_AS(parse_config_text("ssg.centers=1,,2\n"), Error);
}

TEST_CASE("normalizer names round-trip") {
  CHECK(parse_normalizer("sigmoid") == Normalizer::Sigmoid);
  CHECK(parse_normalizer("softmax") == Normalizer::Softmax);
  CHECK(normalizer_name(Normalizer::Sigmoid) == "sigmoid");
  CHECK(normalizer_name(Normalizer::Softmax) == "softmax");
  CHECK_THROWS_AS(parse_normalizer("SIGMOID"), Error);
}

TEST_CASE("operator configs are extracted from the run config") {
  RunConfig cfg;
  cfg.ssg_num_layers = 6;
  cfg.ssg_centers = {1, 2};
  cfg.ssg_offset = 2;
  cfg.seo_kernel_sizes = {5};
  SsgConfig s = ssg_config(cfg);
  CHECK(s.num_layers == 6);
  CHECK(s.centers == std::vector<int>{1, 2});
  CHECK(s.surround_offset == 2);
  SeoConfig e = seo_config(cfg);
  CHECK(e.kernel_sizes == std::vector<int>{5});
}

TEST_CASE("emitted text is line-oriented key=value") {
  std::string text = emit_config(RunConfig{});
  CHECK(text.find("threads=0\n") != std::string::npos);
  CHECK(text.find("ssg.centers=2,3,4\n") != std::string::npos);
  CHECK(text.find("attn.normalizer=sigmoid\n") != std::string::npos);
  CHECK(text.find("eval.beta2=0.3\n") != std::string::npos);
}