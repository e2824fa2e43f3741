#include "specsal/gradcheck.hpp"

namespace specsal {

MfaInstance make_mfa_instance(const MfaDims& dims, std::uint32_t seed) {
  require(dims.c_s >= 2, "mfa: c_s must allow a channel split");
  int d = dims.d > 0 ? dims.d : dims.c_s / 2;
  int g1_depth = dims.c_s / 2;
  int g2_depth = dims.c_s - g1_depth;
  std::mt19937 rng(seed);
  MfaInstance inst;
  inst.f_de = make_random_feature<double>(dims.h, dims.w, dims.c_e, 0.0, 1.0, rng);
  inst.f_ds = make_random_feature<double>(dims.h, dims.w, dims.c_s, 0.0, 1.0, rng);
  inst.high = make_attention_params<double>(dims.c_e, g1_depth, d, d, dims.k_high,
                                            dims.normalizer, rng);
  inst.low = make_attention_params<double>(g2_depth, g2_depth, d, d, dims.k_low,
                                           dims.normalizer, rng);
  inst.cfg.k_high = dims.k_high;
  inst.cfg.k_low = dims.k_low;
  inst.cfg.heads = 1;
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  inst.cfg.w_out.resize(2 * d, dims.c_out);
  for (Eigen::Index i = 0; i < inst.cfg.w_out.size(); ++i)
    inst.cfg.w_out.data()[i] = u(rng);
  inst.cfg.b_out = Eigen::Matrix<double, 1, Eigen::Dynamic>::Zero(dims.c_out);
  return inst;
}

double mfa_sum_loss(const MfaInstance& inst) {
  FeatureTensor<double> out =
      mixed_frequency_attention(inst.f_de, inst.f_ds, inst.cfg, inst.high, inst.low);
  return out.data.sum();
}

double mfa_min_abs_preactivation(const MfaInstance& inst) {
  auto [g1, g2] = split_channels(inst.f_ds);
  FeatureTensor<double> f_h = neighborhood_attention(inst.f_de, g1, inst.high);
  FeatureTensor<double> f_l = neighborhood_attention(g2, g2, inst.low);
  FeatureTensor<double> cat = concat_channels(f_h, f_l);
  RowMatrix<double> pre = (cat.data * inst.cfg.w_out).rowwise() + inst.cfg.b_out;
  return pre.array().abs().minCoeff();
}

namespace {

GradSpan span_of(RowMatrix<double>& m) { return {m.data(), m.size()}; }

}  // namespace

std::vector<GradSpan> mfa_grad_views(MfaInstance& inst) {
  std::vector<GradSpan> v;
  v.push_back({inst.f_de.data.data(), inst.f_de.data.size()});
  v.push_back({inst.f_ds.data.data(), inst.f_ds.data.size()});
  v.push_back(span_of(inst.high.wq));
  v.push_back(span_of(inst.high.wk));
  v.push_back(span_of(inst.high.wv));
  v.push_back(span_of(inst.high.bias));
  v.push_back(span_of(inst.low.wq));
  v.push_back(span_of(inst.low.wk));
  v.push_back(span_of(inst.low.wv));
  v.push_back(span_of(inst.low.bias));
  v.push_back(span_of(inst.cfg.w_out));
  v.push_back({inst.cfg.b_out.data(), inst.cfg.b_out.size()});
  return v;
}

std::vector<std::vector<double>> mfa_analytic_grads(const MfaInstance& inst) {
  FeatureTensor<double> d_out = mixed_frequency_attention(inst.f_de, inst.f_ds, inst.cfg,
                                                          inst.high, inst.low);
  d_out.data.setOnes();  // loss = sum of outputs
  MfaGrads<double> g = mixed_frequency_attention_backward(inst.f_de, inst.f_ds, inst.cfg,
                                                          inst.high, inst.low, d_out);
  auto flat = [](const RowMatrix<double>& m) {
    return std::vector<double>(m.data(), m.data() + m.size());
  };
  std::vector<std::vector<double>> out;
  out.push_back(flat(g.f_de.data));
  out.push_back(flat(g.f_ds.data));
  out.push_back(flat(g.wq_high));
  out.push_back(flat(g.wk_high));
  out.push_back(flat(g.wv_high));
  out.push_back(flat(g.bias_high));
  out.push_back(flat(g.wq_low));
  out.push_back(flat(g.wk_low));
  out.push_back(flat(g.wv_low));
  out.push_back(flat(g.bias_low));
  out.push_back(flat(g.w_out));
  out.emplace_back(g.b_out.data(), g.b_out.data() + g.b_out.size());
  return out;
}

GradCheckReport grad_check_mfa(MfaInstance& inst, double eps) {
  auto views = mfa_grad_views(inst);
  return grad_check(
      views, [&] { return mfa_sum_loss(inst); }, [&] { return mfa_analytic_grads(inst); },
      eps);
}

}  // namespace specsal
