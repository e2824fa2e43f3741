// Command-line front end: conversion, synthetic scenes, the saliency and
// edge operators, attention demos, gradient checks, evaluation, benchmarks.
// Exit codes: 0 success, 1 usage error, 2 data/check error.

#include "CLI11.hpp"

#include "specsal/bundle.hpp"
#include "specsal/codec.hpp"
#include "specsal/config.hpp"
#include "specsal/gradcheck.hpp"
#include "specsal/losses.hpp"
#include "specsal/metrics.hpp"
#include "specsal/resample.hpp"
#include "specsal/seo.hpp"
#include "specsal/ssg.hpp"
#include "specsal/synth.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

using namespace specsal;

namespace {

int g_exit = 0;

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::string read_text(const std::string& path) {
  auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

// Returns true when the run should stop after emitting the effective config.
bool emit_requested(const RunConfig& cfg, const std::string& emit_path) {
  if (emit_path.empty()) return false;
  if (emit_path == "-")
    std::cout << emit_config(cfg);
  else
    write_text(emit_path, emit_config(cfg));
  return true;
}

RunConfig load_config(const std::string& path) {
  return path.empty() ? RunConfig{} : read_config(path);
}

void ensure_parent_dir(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

bool is_cube_file(const std::string& path) {
  auto bytes = read_file(path);
  return bytes.size() >= 4 && bytes[0] == 'H' && bytes[1] == 'S' && bytes[2] == 'C' &&
         bytes[3] == '1';
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_map_auto(const std::string& path, const Map2D& map) {
  ensure_parent_dir(path);
  if (has_suffix(path, ".pgm")) {
    map_write_pgm16(path, map.kind == MapKind::Raw ? normalize_map(map) : map);
  } else {
    map_write(path, map);
  }
}

Map2D coerce_binary(Map2D map, const char* what) {
  if (map.kind == MapKind::Binary) return map;
  for (Eigen::Index i = 0; i < map.values.size(); ++i)
    require(map.values.data()[i] == 0.0f || map.values.data()[i] == 1.0f, what);
  map.kind = MapKind::Binary;
  return map;
}

// Reflectance-like synthetic material: positive Gaussian bump over a flat
// pedestal, peak position given as a fraction of the band range.
SpectralVector bump_spectrum(int c, double peak_frac, double width_frac) {
  SpectralVector v(c);
  for (int i = 0; i < c; ++i) {
    double x = c > 1 ? static_cast<double>(i) / (c - 1) : 0.5;
    double z = (x - peak_frac) / width_frac;
    v[i] = static_cast<float>(0.2 + 0.8 * std::exp(-z * z));
  }
  return v;
}

// ---- MFA instance <-> parameter bundle ----

BundleTensor feature_tensor(const FeatureTensor<double>& f) {
  BundleTensor t;
  t.dims = {static_cast<std::uint32_t>(f.height), static_cast<std::uint32_t>(f.width),
            static_cast<std::uint32_t>(f.depth)};
  t.data.assign(f.data.data(), f.data.data() + f.data.size());
  return t;
}

BundleTensor matrix_tensor(const RowMatrix<double>& m) {
  BundleTensor t;
  t.dims = {static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols())};
  t.data.assign(m.data(), m.data() + m.size());
  return t;
}

const BundleTensor& need(const ParamBundle& b, const std::string& name) {
  auto it = b.find(name);
  require(it != b.end(), "bundle: missing tensor " + name);
  return it->second;
}

FeatureTensor<double> bundle_feature(const ParamBundle& b, const std::string& name) {
  const BundleTensor& t = need(b, name);
  require(t.dims.size() == 3, "bundle: " + name + " must have rank 3");
  FeatureTensor<double> f = FeatureTensor<double>::zeros(
      static_cast<int>(t.dims[0]), static_cast<int>(t.dims[1]), static_cast<int>(t.dims[2]));
  for (Eigen::Index i = 0; i < f.data.size(); ++i) f.data.data()[i] = t.data[i];
  return f;
}

RowMatrix<double> bundle_matrix(const ParamBundle& b, const std::string& name) {
  const BundleTensor& t = need(b, name);
  require(t.dims.size() == 2, "bundle: " + name + " must have rank 2");
  RowMatrix<double> m(t.dims[0], t.dims[1]);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = t.data[i];
  return m;
}

void put_params(ParamBundle& b, const std::string& prefix, const AttentionParams<double>& p) {
  b[prefix + ".wq"] = matrix_tensor(p.wq);
  b[prefix + ".wk"] = matrix_tensor(p.wk);
  b[prefix + ".wv"] = matrix_tensor(p.wv);
  b[prefix + ".bias"] = matrix_tensor(p.bias);
}

AttentionParams<double> get_params(const ParamBundle& b, const std::string& prefix,
                                   Normalizer norm) {
  AttentionParams<double> p;
  p.wq = bundle_matrix(b, prefix + ".wq");
  p.wk = bundle_matrix(b, prefix + ".wk");
  p.wv = bundle_matrix(b, prefix + ".wv");
  p.bias = bundle_matrix(b, prefix + ".bias");
  require(p.bias.rows() == p.bias.cols() && p.bias.rows() % 2 == 1,
          "bundle: " + prefix + ".bias must be square with odd side");
  p.kernel = (static_cast<int>(p.bias.rows()) + 1) / 2;
  p.normalizer = norm;
  return p;
}

ParamBundle instance_bundle(const MfaInstance& inst) {
  ParamBundle b;
  b["f_de"] = feature_tensor(inst.f_de);
  b["f_ds"] = feature_tensor(inst.f_ds);
  put_params(b, "high", inst.high);
  put_params(b, "low", inst.low);
  b["w_out"] = matrix_tensor(inst.cfg.w_out);
  BundleTensor bias;
  bias.dims = {static_cast<std::uint32_t>(inst.cfg.b_out.size())};
  bias.data.assign(inst.cfg.b_out.data(), inst.cfg.b_out.data() + inst.cfg.b_out.size());
  b["b_out"] = bias;
  BundleTensor norm;
  norm.dims = {1};
  norm.data = {inst.high.normalizer == Normalizer::Softmax ? 1.0f : 0.0f};
  b["meta.normalizer"] = norm;
  return b;
}

MfaInstance bundle_instance(const ParamBundle& b) {
  const BundleTensor& norm = need(b, "meta.normalizer");
  require(norm.element_count() == 1 && (norm.data[0] == 0.0f || norm.data[0] == 1.0f),
          "bundle: meta.normalizer must be a single 0/1 value");
  Normalizer n = norm.data[0] == 1.0f ? Normalizer::Softmax : Normalizer::Sigmoid;
  MfaInstance inst;
  inst.f_de = bundle_feature(b, "f_de");
  inst.f_ds = bundle_feature(b, "f_ds");
  inst.high = get_params(b, "high", n);
  inst.low = get_params(b, "low", n);
  inst.cfg.k_high = inst.high.kernel;
  inst.cfg.k_low = inst.low.kernel;
  inst.cfg.w_out = bundle_matrix(b, "w_out");
  const BundleTensor& bias = need(b, "b_out");
  require(bias.dims.size() == 1, "bundle: b_out must have rank 1");
  inst.cfg.b_out.resize(static_cast<Eigen::Index>(bias.dims[0]));
  for (Eigen::Index i = 0; i < inst.cfg.b_out.size(); ++i) inst.cfg.b_out[i] = bias.data[i];
  return inst;
}

// ---- subcommands ----

struct ConvertArgs {
  std::string in, out, false_color;
  bool normalize = false;
};

void cmd_convert(const ConvertArgs& a) {
  if (!a.false_color.empty()) {
    FalseColor fc = render_false_color(cube_read(a.in));
    write_map_auto(a.false_color + "_r.pgm", fc.r);
    write_map_auto(a.false_color + "_g.pgm", fc.g);
    write_map_auto(a.false_color + "_b.pgm", fc.b);
    return;
  }
  require(!a.out.empty(), "convert: need --out or --false-color");
  if (is_cube_file(a.in)) {
    require(has_suffix(a.out, ".hsc"), "convert: cube input needs a .hsc output");
    ensure_parent_dir(a.out);
    cube_write(a.out, cube_read(a.in));
    return;
  }
  Map2D map = map_read(a.in);
  if (a.normalize) map = normalize_map(map);
  write_map_auto(a.out, map);
}

struct SynthArgs {
  std::string out, truth;
  int h = 128, w = 128, c = 16;
  std::string shape = "disk";
  double noise = 0.0, radius = -1.0;
  double fg_peak = 0.75, bg_peak = 0.3;
  unsigned seed = 1;
};

void cmd_synth(const SynthArgs& a) {
  require(a.shape == "disk" || a.shape == "rect", "synth: shape must be disk or rect");
  SynthShape shape = a.shape == "disk" ? SynthShape::Disk : SynthShape::Rectangle;
  SynthResult res =
      synth_scene(a.h, a.w, a.c, shape, bump_spectrum(a.c, a.fg_peak, 0.15),
                  bump_spectrum(a.c, a.bg_peak, 0.15), static_cast<float>(a.noise),
                  a.seed, a.radius);
  ensure_parent_dir(a.out);
  cube_write(a.out, res.cube);
  if (!a.truth.empty()) write_map_auto(a.truth, res.truth);
}

void write_map_set(const std::string& dir, const std::string& stem,
                   const std::vector<Map2D>& maps) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::string base = dir + "/" + stem + "_" + std::to_string(i + 1);
    map_write(base + ".map", maps[i]);
    map_write_pgm16(base + ".pgm", normalize_map(maps[i]));
  }
}

struct OpArgs {
  std::string config, emit;
  std::string in, out_dir;
  int threads = -1;
  int ssg_layers = -1, ssg_offset = -1;
  std::vector<int> ssg_centers, seo_kernels;
};

// Flags override config values, but only the flags this subcommand has.
bool flag_set(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig merge_op_config(const OpArgs& a, const CLI::App* sub) {
  RunConfig cfg = load_config(a.config);
  if (flag_set(sub, "--in")) cfg.input = a.in;
  if (flag_set(sub, "--out-dir")) cfg.output = a.out_dir;
  if (flag_set(sub, "--threads")) cfg.threads = a.threads;
  if (flag_set(sub, "--layers")) cfg.ssg_num_layers = a.ssg_layers;
  if (flag_set(sub, "--centers")) cfg.ssg_centers = a.ssg_centers;
  if (flag_set(sub, "--offset")) cfg.ssg_offset = a.ssg_offset;
  if (flag_set(sub, "--kernels")) cfg.seo_kernel_sizes = a.seo_kernels;
  return cfg;
}

void cmd_ssg(const OpArgs& a, const CLI::App* sub) {
  RunConfig cfg = merge_op_config(a, sub);
  if (emit_requested(cfg, a.emit)) return;
  require(!cfg.input.empty(), "ssg: missing input cube");
  require(!cfg.output.empty(), "ssg: missing output directory");
  write_map_set(cfg.output, "I_S",
                run_ssg(cube_read(cfg.input), ssg_config(cfg), cfg.threads));
}

void cmd_seo(const OpArgs& a, const CLI::App* sub) {
  RunConfig cfg = merge_op_config(a, sub);
  if (emit_requested(cfg, a.emit)) return;
  require(!cfg.input.empty(), "seo: missing input cube");
  require(!cfg.output.empty(), "seo: missing output directory");
  write_map_set(cfg.output, "I_E",
                run_seo(cube_read(cfg.input), seo_config(cfg), cfg.threads));
}

struct EdgeGtArgs {
  OpArgs op;
  std::string out, pgm;
  double threshold = 0.5;
};

void cmd_edge_gt(const EdgeGtArgs& a, const CLI::App* sub) {
  RunConfig cfg = merge_op_config(a.op, sub);
  if (emit_requested(cfg, a.op.emit)) return;
  require(!cfg.input.empty(), "edge-gt: missing input cube");
  HyperCube cube = cube_read(cfg.input);
  Map2D e = edge_ground_truth(render_false_color(cube),
                              run_ssg(cube, ssg_config(cfg), cfg.threads), a.threshold);
  ensure_parent_dir(a.out);
  map_write(a.out, e);
  // The reference edge supervisor is a learned detector; this build derives
  // edges with a fixed Sobel operator and says so next to the data.
  write_text(a.out + ".meta", "edge_detector=sobel3x3\nthreshold=" +
                                  std::to_string(a.threshold) + "\n");
  if (!a.pgm.empty()) write_map_auto(a.pgm, e);
}

struct AttnArgs {
  std::string config, emit, in, out;
  int h = 14, w = 14, c_e = 4, c_s = 6, c_out = 6;
  int k_high = -1, k_low = -1;
  std::string normalizer;
  unsigned seed = 1;
};

void cmd_attn(const AttnArgs& a, const CLI::App* sub) {
  RunConfig cfg = load_config(a.config);
  if (flag_set(sub, "--in")) cfg.input = a.in;
  if (flag_set(sub, "--out")) cfg.output = a.out;
  if (flag_set(sub, "--k-high")) cfg.attn_k_high = a.k_high;
  if (flag_set(sub, "--k-low")) cfg.attn_k_low = a.k_low;
  if (flag_set(sub, "--normalizer")) cfg.attn_normalizer = parse_normalizer(a.normalizer);
  if (flag_set(sub, "--seed")) cfg.attn_seed = a.seed;
  if (emit_requested(cfg, a.emit)) return;

  MfaInstance inst;
  if (!cfg.input.empty()) {
    inst = bundle_instance(bundle_read(cfg.input));
  } else {
    MfaDims dims;
    dims.h = a.h;
    dims.w = a.w;
    dims.c_e = a.c_e;
    dims.c_s = a.c_s;
    dims.c_out = a.c_out;
    dims.k_high = cfg.attn_k_high;
    dims.k_low = cfg.attn_k_low;
    dims.normalizer = cfg.attn_normalizer;
    inst = make_mfa_instance(dims, cfg.attn_seed);
  }
  FeatureTensor<double> out =
      mixed_frequency_attention(inst.f_de, inst.f_ds, inst.cfg, inst.high, inst.low);
  std::cout << "h=" << out.height << " w=" << out.width << " c_out=" << out.depth
            << " min=" << out.data.minCoeff() << " max=" << out.data.maxCoeff()
            << " mean=" << out.data.mean() << "\n";
  if (!cfg.output.empty()) {
    ParamBundle b = instance_bundle(inst);
    b["f_out"] = feature_tensor(out);
    ensure_parent_dir(cfg.output);
    bundle_write(cfg.output, b);
  }
}

struct GradcheckArgs {
  std::string config;
  int h = 8, w = 8, c_e = 4, c_s = 6, c_out = 6;
  int k_high = 3, k_low = 3;
  std::string normalizer = "both";
  unsigned seed = 7;
  double eps = 1e-3, threshold = 1e-4;
};

void cmd_gradcheck(const GradcheckArgs& a, const CLI::App* sub) {
  RunConfig cfg = load_config(a.config);
  unsigned seed = a.seed;
  if (!flag_set(sub, "--seed") && !a.config.empty()) seed = cfg.attn_seed;
  std::vector<Normalizer> modes;
  if (a.normalizer == "both")
    modes = {Normalizer::Sigmoid, Normalizer::Softmax};
  else
    modes = {parse_normalizer(a.normalizer)};
  double worst = 0.0;
  for (Normalizer mode : modes) {
    MfaDims dims;
    dims.h = a.h;
    dims.w = a.w;
    dims.c_e = a.c_e;
    dims.c_s = a.c_s;
    dims.c_out = a.c_out;
    dims.k_high = a.k_high;
    dims.k_low = a.k_low;
    dims.normalizer = mode;
    MfaInstance inst = make_mfa_instance(dims, seed);
    GradCheckReport rep = grad_check_mfa(inst, a.eps);
    worst = std::max(worst, rep.max_rel_error);
    std::cout << "normalizer=" << normalizer_name(mode)
              << " coords=" << rep.coords << " max_rel_error=" << rep.max_rel_error
              << "\n";
  }
  std::cout << "max_rel_error=" << worst << "\n";
  if (!(worst < a.threshold)) {
    std::cerr << "gradcheck: max relative error " << worst << " is not below "
              << a.threshold << "\n";
    g_exit = 2;
  }
}

struct EvalArgs {
  std::string config, emit;
  std::string pred, gt, report, curves;
  double beta2 = -1.0, alpha = -1.0;
};

void cmd_eval(const EvalArgs& a, const CLI::App* sub) {
  RunConfig cfg = load_config(a.config);
  if (flag_set(sub, "--beta2")) cfg.eval_beta2 = a.beta2;
  if (flag_set(sub, "--alpha")) cfg.eval_alpha = a.alpha;
  if (emit_requested(cfg, a.emit)) return;
  Map2D pred = map_read(a.pred);
  if (pred.kind == MapKind::Raw) pred = normalize_map(pred);
  Map2D gt = coerce_binary(map_read(a.gt), "eval: ground truth is not binary");
  MetricReport rep = compute_metrics(pred, gt, cfg.eval_beta2, cfg.eval_alpha);
  std::string text = report_text(rep);
  if (a.report.empty()) {
    std::cout << text;
  } else {
    ensure_parent_dir(a.report);
    write_text(a.report, text);
  }
  if (!a.curves.empty()) {
    ensure_parent_dir(a.curves);
    write_text(a.curves, curve_csv(rep.curve));
  }
}

struct BenchArgs {
  std::string config, in, out;
  int max_threads = 4;
  int k = 5;
  int h = 224, w = 224, c = 50;
  unsigned seed = 42;
};

void cmd_bench(const BenchArgs& a) {
  RunConfig cfg = load_config(a.config);
  HyperCube cube;
  if (!a.in.empty()) {
    cube = cube_read(a.in);
  } else {
    cube = synth_scene(a.h, a.w, a.c, SynthShape::Disk, bump_spectrum(a.c, 0.75, 0.15),
                       bump_spectrum(a.c, 0.3, 0.15), 0.05f, a.seed)
               .cube;
  }
  std::ostringstream csv;
  csv << "op,threads,seconds\n";
  csv.precision(6);
  csv << std::fixed;

  auto time_op = [&](const std::string& name, auto&& run) {
    std::vector<std::uint8_t> reference;
    for (int t = 1; t <= a.max_threads; t *= 2) {
      auto start = std::chrono::steady_clock::now();
      std::vector<Map2D> maps = run(t);
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      std::vector<std::uint8_t> bytes;
      for (const Map2D& m : maps) {
        auto enc = map_encode(m);
        bytes.insert(bytes.end(), enc.begin(), enc.end());
      }
      if (t == 1)
        reference = bytes;
      else
        require(bytes == reference, "bench: " + name + " output differs at " +
                                        std::to_string(t) + " threads");
      csv << name << "," << t << "," << dt.count() << "\n";
    }
  };

  time_op("ssg", [&](int t) { return run_ssg(cube, ssg_config(cfg), t); });
  time_op("seo_k" + std::to_string(a.k), [&](int t) {
    return std::vector<Map2D>{spectral_edge(cube, a.k, nullptr, t)};
  });

  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    ensure_parent_dir(a.out);
    write_text(a.out, csv.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperspectral salient-object detection pipeline"};
  app.require_subcommand(1);

  ConvertArgs conv;
  CLI::App* c_conv = app.add_subcommand("convert", "convert cubes and maps between formats");
  c_conv->add_option("--in", conv.in, "input cube or map")->required();
  c_conv->add_option("--out", conv.out, "output path (.hsc, .map or .pgm)");
  c_conv->add_option("--false-color", conv.false_color,
                     "write <prefix>_{r,g,b}.pgm rendered from a cube");
  c_conv->add_flag("--normalize", conv.normalize, "min-max normalize map values");

  SynthArgs syn;
  CLI::App* c_syn = app.add_subcommand("synth", "generate a synthetic scene");
  c_syn->add_option("--out", syn.out, "output cube path")->required();
  c_syn->add_option("--truth", syn.truth, "ground-truth map path");
  c_syn->add_option("--height", syn.h, "image height");
  c_syn->add_option("--width", syn.w, "image width");
  c_syn->add_option("--bands", syn.c, "spectral band count");
  c_syn->add_option("--shape", syn.shape, "disk or rect");
  c_syn->add_option("--noise", syn.noise, "Gaussian noise sigma");
  c_syn->add_option("--radius", syn.radius, "shape radius in pixels");
  c_syn->add_option("--fg-peak", syn.fg_peak, "foreground spectral peak position (0..1)");
  c_syn->add_option("--bg-peak", syn.bg_peak, "background spectral peak position (0..1)");
  c_syn->add_option("--seed", syn.seed, "noise seed");

  auto add_op_flags = [](CLI::App* sub, OpArgs& a) {
    sub->add_option("--config", a.config, "key=value config file");
    sub->add_option("--emit-config", a.emit, "write effective config and exit ('-' = stdout)");
    sub->add_option("--in", a.in, "input cube");
    sub->add_option("--threads", a.threads, "worker threads (0 = auto)");
  };

  OpArgs ssg_args;
  CLI::App* c_ssg = app.add_subcommand("ssg", "spectral saliency maps");
  add_op_flags(c_ssg, ssg_args);
  c_ssg->add_option("--out-dir", ssg_args.out_dir, "output directory");
  c_ssg->add_option("--layers", ssg_args.ssg_layers, "pyramid layer count");
  c_ssg->add_option("--centers", ssg_args.ssg_centers, "center scales")->delimiter(',');
  c_ssg->add_option("--offset", ssg_args.ssg_offset, "surround scale offset");

  OpArgs seo_args;
  CLI::App* c_seo = app.add_subcommand("seo", "spectral edge maps");
  add_op_flags(c_seo, seo_args);
  c_seo->add_option("--out-dir", seo_args.out_dir, "output directory");
  c_seo->add_option("--kernels", seo_args.seo_kernels, "gradient kernel sizes")
      ->delimiter(',');

  EdgeGtArgs eg;
  CLI::App* c_eg = app.add_subcommand("edge-gt", "binary edge supervision map");
  add_op_flags(c_eg, eg.op);
  c_eg->add_option("--out", eg.out, "output edge map")->required();
  c_eg->add_option("--pgm", eg.pgm, "optional PGM preview path");
  c_eg->add_option("--threshold", eg.threshold, "binarization threshold");
  c_eg->add_option("--layers", eg.op.ssg_layers, "pyramid layer count");

  AttnArgs at;
  CLI::App* c_at = app.add_subcommand("attn", "mixed-frequency attention demo");
  c_at->add_option("--config", at.config, "key=value config file");
  c_at->add_option("--emit-config", at.emit, "write effective config and exit ('-' = stdout)");
  c_at->add_option("--in", at.in, "input parameter bundle");
  c_at->add_option("--out", at.out, "output parameter bundle (inputs, params, f_out)");
  c_at->add_option("--height", at.h, "feature height");
  c_at->add_option("--width", at.w, "feature width");
  c_at->add_option("--c-e", at.c_e, "edge feature depth");
  c_at->add_option("--c-s", at.c_s, "saliency feature depth");
  c_at->add_option("--c-out", at.c_out, "output depth");
  c_at->add_option("--k-high", at.k_high, "high-frequency window size");
  c_at->add_option("--k-low", at.k_low, "low-frequency window size");
  c_at->add_option("--normalizer", at.normalizer, "sigmoid or softmax");
  c_at->add_option("--seed", at.seed, "parameter seed");

  GradcheckArgs gc;
  CLI::App* c_gc = app.add_subcommand("gradcheck", "finite-difference gradient check");
  c_gc->add_option("--config", gc.config, "key=value config file");
  c_gc->add_option("--seed", gc.seed, "instance seed");
  c_gc->add_option("--eps", gc.eps, "finite-difference step");
  c_gc->add_option("--threshold", gc.threshold, "pass threshold on max relative error");
  c_gc->add_option("--height", gc.h, "feature height");
  c_gc->add_option("--width", gc.w, "feature width");
  c_gc->add_option("--c-e", gc.c_e, "edge feature depth");
  c_gc->add_option("--c-s", gc.c_s, "saliency feature depth");
  c_gc->add_option("--c-out", gc.c_out, "output depth");
  c_gc->add_option("--k-high", gc.k_high, "high-frequency window size");
  c_gc->add_option("--k-low", gc.k_low, "low-frequency window size");
  c_gc->add_option("--normalizer", gc.normalizer, "sigmoid, softmax or both");

  EvalArgs ev;
  CLI::App* c_ev = app.add_subcommand("eval", "saliency map evaluation metrics");
  c_ev->add_option("--config", ev.config, "key=value config file");
  c_ev->add_option("--emit-config", ev.emit, "write effective config and exit ('-' = stdout)");
  c_ev->add_option("--pred", ev.pred, "prediction map (raw maps are normalized)")->required();
  c_ev->add_option("--gt", ev.gt, "binary ground-truth map")->required();
  c_ev->add_option("--report", ev.report, "key=value report path (default stdout)");
  c_ev->add_option("--curves", ev.curves, "PR/ROC curve CSV path");
  c_ev->add_option("--beta2", ev.beta2, "F-measure beta^2");
  c_ev->add_option("--alpha", ev.alpha, "S-measure region weight");

  BenchArgs be;
  CLI::App* c_be = app.add_subcommand("bench", "operator timing and determinism check");
  c_be->add_option("--config", be.config, "key=value config file");
  c_be->add_option("--in", be.in, "input cube (default: synthetic 224x224x50)");
  c_be->add_option("--out", be.out, "timing CSV path (default stdout)");
  c_be->add_option("--max-threads", be.max_threads, "highest power-of-two worker count");
  c_be->add_option("--kernel", be.k, "edge kernel size to benchmark");
  c_be->add_option("--seed", be.seed, "synthetic fixture seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c_conv->parsed()) cmd_convert(conv);
    if (c_syn->parsed()) cmd_synth(syn);
    if (c_ssg->parsed()) cmd_ssg(ssg_args, c_ssg);
    if (c_seo->parsed()) cmd_seo(seo_args, c_seo);
    if (c_eg->parsed()) cmd_edge_gt(eg, c_eg);
    if (c_at->parsed()) cmd_attn(at, c_at);
    if (c_gc->parsed()) cmd_gradcheck(gc, c_gc);
    if (c_ev->parsed()) cmd_eval(ev, c_ev);
    if (c_be->parsed()) cmd_bench(be);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
