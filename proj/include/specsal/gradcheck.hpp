#pragma once

#include "specsal/attention.hpp"

namespace specsal {

struct GradSpan {
  double* data;
  std::ptrdiff_t size;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::ptrdiff_t coords = 0;
  int worst_view = -1;
  std::ptrdiff_t worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Central-difference check: perturbs every coordinate of every view by
// +/- eps, recomputes the scalar loss, and compares against the analytic
// gradient using |a - n| / max(1, |a|, |n|). The views alias the storage the
// callbacks read, so mutation is visible to `loss`.
template <typename LossFn, typename AnalyticFn>
GradCheckReport grad_check(const std::vector<GradSpan>& views, LossFn&& loss,
                           AnalyticFn&& analytic, double eps) {
  require(eps > 0.0, "gradcheck: eps must be positive");
  std::vector<std::vector<double>> grads = analytic();
  require(grads.size() == views.size(), "gradcheck: gradient/view count mismatch");
  GradCheckReport rep;
  for (std::size_t vi = 0; vi < views.size(); ++vi) {
    require(static_cast<std::ptrdiff_t>(grads[vi].size()) == views[vi].size,
            "gradcheck: gradient length mismatch");
    for (std::ptrdiff_t i = 0; i < views[vi].size; ++i) {
      double saved = views[vi].data[i];
      views[vi].data[i] = saved + eps;
      double fp = loss();
      views[vi].data[i] = saved - eps;
      double fm = loss();
      views[vi].data[i] = saved;
      require(std::isfinite(fp) && std::isfinite(fm), "gradcheck: non-finite loss");
      double numeric = (fp - fm) / (2.0 * eps);
      double a = grads[vi][i];
      double rel = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      if (rel > rep.max_rel_error) {
        rep.max_rel_error = rel;
        rep.worst_view = static_cast<int>(vi);
        rep.worst_index = i;
        rep.worst_analytic = a;
        rep.worst_numeric = numeric;
      }
      ++rep.coords;
    }
  }
  return rep;
}

// A full mixed-frequency attention problem in double precision, for the
// gradient check and the CLI demo.
struct MfaInstance {
  FeatureTensor<double> f_de, f_ds;
  MfaConfig<double> cfg;
  AttentionParams<double> high, low;
};

struct MfaDims {
  int h = 8, w = 8;
  int c_e = 4, c_s = 6;
  int c_out = 6;
  int d = 0;        // 0 -> floor(c_s / 2)
  int k_high = 3, k_low = 3;
  Normalizer normalizer = Normalizer::Sigmoid;
};

MfaInstance make_mfa_instance(const MfaDims& dims, std::uint32_t seed);

double mfa_sum_loss(const MfaInstance& inst);

// Minimum |pre-activation| entering the final ReLU. Gradcheck fixtures must
// keep this well above eps, otherwise central differences straddle the kink.
double mfa_min_abs_preactivation(const MfaInstance& inst);

std::vector<GradSpan> mfa_grad_views(MfaInstance& inst);

// Analytic gradients flattened in the same order as mfa_grad_views.
std::vector<std::vector<double>> mfa_analytic_grads(const MfaInstance& inst);

GradCheckReport grad_check_mfa(MfaInstance& inst, double eps);

}  // namespace specsal
