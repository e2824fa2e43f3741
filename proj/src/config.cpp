#include "specsal/config.hpp"
#include "specsal/codec.hpp"

#include <charconv>
#include <sstream>

namespace specsal {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  require(ec == std::errc{} && p == value.data() + value.size(),
          "config: bad integer for " + key + ": " + value);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  require(ec == std::errc{} && p == value.data() + value.size(),
          "config: bad number for " + key + ": " + value);
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
  require(!out.empty(), "config: empty list for " + key);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc{}, "config: unrepresentable number");
  return std::string(buf, p);
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "input")
    cfg.input = value;
  else if (key == "output")
    cfg.output = value;
  else if (key == "threads")
    cfg.threads = parse_int(key, value);
  else if (key == "ssg.num_layers")
    cfg.ssg_num_layers = parse_int(key, value);
  else if (key == "ssg.centers")
    cfg.ssg_centers = parse_int_list(key, value);
  else if (key == "ssg.offset")
    cfg.ssg_offset = parse_int(key, value);
  else if (key == "seo.kernel_sizes")
    cfg.seo_kernel_sizes = parse_int_list(key, value);
  else if (key == "attn.k_high")
    cfg.attn_k_high = parse_int(key, value);
  else if (key == "attn.k_low")
    cfg.attn_k_low = parse_int(key, value);
  else if (key == "attn.normalizer")
    cfg.attn_normalizer = parse_normalizer(value);
  else if (key == "attn.seed")
    cfg.attn_seed = static_cast<unsigned>(parse_int(key, value));
  else if (key == "eval.beta2")
    cfg.eval_beta2 = parse_double(key, value);
  else if (key == "eval.alpha")
    cfg.eval_alpha = parse_double(key, value);
  else
    throw Error("config: unknown key: " + key);
}

}  // namespace

Normalizer parse_normalizer(const std::string& name) {
  if (name == "sigmoid") return Normalizer::Sigmoid;
  if (name == "softmax") return Normalizer::Softmax;
  throw Error("config: unknown normalizer: " + name);
}

std::string normalizer_name(Normalizer n) {
  return n == Normalizer::Sigmoid ? "sigmoid" : "softmax";
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    require(eq != std::string::npos,
            "config: line " + std::to_string(lineno) + " is not key=value");
    apply(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

RunConfig read_config(const std::string& path) {
  std::vector<std::uint8_t> bytes = read_file(path);
  return parse_config_text(std::string(bytes.begin(), bytes.end()));
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "input=" << cfg.input << "\n"
     << "output=" << cfg.output << "\n"
     << "threads=" << cfg.threads << "\n"
     << "ssg.num_layers=" << cfg.ssg_num_layers << "\n"
     << "ssg.centers=" << join_ints(cfg.ssg_centers) << "\n"
     << "ssg.offset=" << cfg.ssg_offset << "\n"
     << "seo.kernel_sizes=" << join_ints(cfg.seo_kernel_sizes) << "\n"
     << "attn.k_high=" << cfg.attn_k_high << "\n"
     << "attn.k_low=" << cfg.attn_k_low << "\n"
     << "attn.normalizer=" << normalizer_name(cfg.attn_normalizer) << "\n"
     << "attn.seed=" << cfg.attn_seed << "\n"
     << "eval.beta2=" << format_double(cfg.eval_beta2) << "\n"
     << "eval.alpha=" << format_double(cfg.eval_alpha) << "\n";
  return os.str();
}

SsgConfig ssg_config(const RunConfig& cfg) {
  SsgConfig out;
  out.num_layers = cfg.ssg_num_layers;
  out.centers = cfg.ssg_centers;
  out.surround_offset = cfg.ssg_offset;
  return out;
}

SeoConfig seo_config(const RunConfig& cfg) {
  SeoConfig out;
  out.kernel_sizes = cfg.seo_kernel_sizes;
  return out;
}

}  // namespace specsal
