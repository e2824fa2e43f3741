#include "specsal/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

namespace specsal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Moments {
  double mean = 0.0;
  double sample_std = 0.0;  // n-1 normalization, 0 for n <= 1
};

}  // namespace

void validate_metric_inputs(const Map2D& pred, const Map2D& truth) {
  require(pred.kind == MapKind::Normalized || pred.kind == MapKind::Binary,
          "metrics: prediction must be normalized or binary");
  require(truth.kind == MapKind::Binary, "metrics: ground truth must be binary");
  require(pred.height() == truth.height() && pred.width() == truth.width(),
          "metrics: map dimensions differ");
  validate_map(pred);
  validate_map(truth);
}

double mae(const Map2D& pred, const Map2D& truth) {
  validate_metric_inputs(pred, truth);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pred.values.size(); ++i)
    sum += std::abs(static_cast<double>(pred.values.data()[i]) - truth.values.data()[i]);
  return sum / pred.values.size();
}

namespace {

// mean/std of `pred` over pixels where mask matches `sel`.
Moments masked_moments(const RowArrayf& pred, const RowArrayf& mask, float sel) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (Eigen::Index i = 0; i < pred.size(); ++i)
    if (mask.data()[i] == sel) {
      sum += pred.data()[i];
      ++n;
    }
  Moments m;
  if (n == 0) return m;
  m.mean = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (Eigen::Index i = 0; i < pred.size(); ++i)
      if (mask.data()[i] == sel) {
        double d = pred.data()[i] - m.mean;
        ss += d * d;
      }
    m.sample_std = std::sqrt(ss / (n - 1));
  }
  return m;
}

double object_score(const Moments& m) {
  return 2.0 * m.mean / (m.mean * m.mean + 1.0 + m.sample_std + kEps);
}

double s_object(const RowArrayf& pred, const RowArrayf& truth) {
  // Foreground compares pred on G; background compares (1 - pred) off G.
  RowArrayf inv = 1.0f - pred;
  double o_fg = object_score(masked_moments(pred, truth, 1.0f));
  double o_bg = object_score(masked_moments(inv, truth, 0.0f));
  double u = static_cast<double>(truth.sum()) / truth.size();
  return u * o_fg + (1.0 - u) * o_bg;
}

// Region similarity of one quadrant, per the structure-measure region SSIM.
double region_ssim(const RowArrayf& pred, const RowArrayf& truth, int r0, int r1, int c0,
                   int c1) {
  std::int64_t n = std::int64_t{r1 - r0} * (c1 - c0);
  double sp = 0.0, sg = 0.0;
  for (int r = r0; r < r1; ++r)
    for (int c = c0; c < c1; ++c) {
      sp += pred(r, c);
      sg += truth(r, c);
    }
  double x = sp / n, y = sg / n;
  double vx = 0.0, vy = 0.0, vxy = 0.0;
  for (int r = r0; r < r1; ++r)
    for (int c = c0; c < c1; ++c) {
      double dp = pred(r, c) - x;
      double dg = truth(r, c) - y;
      vx += dp * dp;
      vy += dg * dg;
      vxy += dp * dg;
    }
  double denom_n = static_cast<double>(n) - 1.0 + kEps;
  vx /= denom_n;
  vy /= denom_n;
  vxy /= denom_n;
  double a = 4.0 * x * y * vxy;
  double b = (x * x + y * y) * (vx + vy);
  if (a != 0.0) return a / (b + kEps);
  return b == 0.0 ? 1.0 : 0.0;
}

double s_region(const RowArrayf& pred, const RowArrayf& truth) {
  int h = static_cast<int>(truth.rows());
  int w = static_cast<int>(truth.cols());
  double area = truth.sum();
  // Foreground centroid, 1-indexed with round-half-away like the reference.
  double sx = 0.0, sy = 0.0;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      if (truth(r, c) == 1.0f) {
        sy += r + 1;
        sx += c + 1;
      }
  int cx = static_cast<int>(std::lround(sx / area));
  int cy = static_cast<int>(std::lround(sy / area));

  double total = static_cast<double>(w) * h;
  double w1 = cx * static_cast<double>(cy) / total;
  double w2 = (w - cx) * static_cast<double>(cy) / total;
  double w3 = cx * static_cast<double>(h - cy) / total;
  double w4 = 1.0 - w1 - w2 - w3;

  // Empty quadrants carry zero weight; skip them instead of evaluating
  // moments over nothing.
  double q = 0.0;
  if (cy > 0 && cx > 0) q += w1 * region_ssim(pred, truth, 0, cy, 0, cx);
  if (cy > 0 && cx < w) q += w2 * region_ssim(pred, truth, 0, cy, cx, w);
  if (cy < h && cx > 0) q += w3 * region_ssim(pred, truth, cy, h, 0, cx);
  if (cy < h && cx < w) q += w4 * region_ssim(pred, truth, cy, h, cx, w);
  return q;
}

}  // namespace

double s_measure(const Map2D& pred, const Map2D& truth, double alpha) {
  validate_metric_inputs(pred, truth);
  require(alpha >= 0.0 && alpha <= 1.0, "s_measure: alpha outside [0,1]");
  double mean_g = static_cast<double>(truth.values.sum()) / truth.values.size();
  double mean_s = static_cast<double>(pred.values.sum()) / pred.values.size();
  double q;
  if (mean_g == 0.0)
    q = 1.0 - mean_s;
  else if (mean_g == 1.0)
    q = mean_s;
  else
    q = alpha * s_region(pred.values, truth.values) +
        (1.0 - alpha) * s_object(pred.values, truth.values);
  return std::clamp(q, 0.0, 1.0);
}

namespace {

struct ThresholdCounts {
  // Suffix counts for B(t) = quantized >= t.
  std::array<std::int64_t, 256> tp{}, selected{};
  std::int64_t pos = 0, neg = 0;
};

ThresholdCounts threshold_counts(const Map2D& pred, const Map2D& truth) {
  std::array<std::int64_t, 256> hist_pos{}, hist_all{};
  ThresholdCounts tc;
  for (Eigen::Index i = 0; i < pred.values.size(); ++i) {
    int q = static_cast<int>(std::lround(255.0 * static_cast<double>(pred.values.data()[i])));
    bool g = truth.values.data()[i] == 1.0f;
    ++hist_all[q];
    if (g) {
      ++hist_pos[q];
      ++tc.pos;
    } else {
      ++tc.neg;
    }
  }
  std::int64_t run_tp = 0, run_all = 0;
  for (int t = 255; t >= 0; --t) {
    run_tp += hist_pos[t];
    run_all += hist_all[t];
    tc.tp[t] = run_tp;
    tc.selected[t] = run_all;
  }
  return tc;
}

}  // namespace

PrResult pr_f_measure(const Map2D& pred, const Map2D& truth, double beta2) {
  validate_metric_inputs(pred, truth);
  require(beta2 > 0.0, "pr: beta^2 must be positive");
  ThresholdCounts tc = threshold_counts(pred, truth);
  PrResult out;
  out.curve.resize(256);
  for (int t = 0; t < 256; ++t) {
    CurvePoint& p = out.curve[t];
    p.threshold = t;
    std::int64_t tp = tc.tp[t], sel = tc.selected[t];
    p.precision = sel == 0 ? 1.0 : static_cast<double>(tp) / sel;
    p.recall = tc.pos == 0 ? 0.0 : static_cast<double>(tp) / tc.pos;
    double f = 0.0;
    if (p.precision != 0.0 || p.recall != 0.0)
      f = (1.0 + beta2) * p.precision * p.recall / (beta2 * p.precision + p.recall);
    out.f_beta_max = std::max(out.f_beta_max, f);
  }
  return out;
}

RocResult roc_auc(const Map2D& pred, const Map2D& truth) {
  validate_metric_inputs(pred, truth);
  ThresholdCounts tc = threshold_counts(pred, truth);
  RocResult out;
  out.curve.resize(256);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(258);
  pts.emplace_back(0.0, 0.0);
  pts.emplace_back(1.0, 1.0);
  for (int t = 0; t < 256; ++t) {
    CurvePoint& p = out.curve[t];
    p.threshold = t;
    std::int64_t tp = tc.tp[t];
    std::int64_t fp = tc.selected[t] - tp;
    p.tpr = tc.pos == 0 ? 0.0 : static_cast<double>(tp) / tc.pos;
    p.fpr = tc.neg == 0 ? 0.0 : static_cast<double>(fp) / tc.neg;
    pts.emplace_back(p.fpr, p.tpr);
  }
  std::sort(pts.begin(), pts.end());
  double auc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    auc += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  out.auc = auc;
  return out;
}

double pearson_cc(const Map2D& pred, const Map2D& truth) {
  require(pred.height() == truth.height() && pred.width() == truth.width(),
          "cc: map dimensions differ");
  validate_map(pred);
  validate_map(truth);
  Eigen::Index n = pred.values.size();
  double ms = 0.0, mg = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    ms += pred.values.data()[i];
    mg += truth.values.data()[i];
  }
  ms /= n;
  mg /= n;
  double cov = 0.0, vs = 0.0, vg = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double ds = pred.values.data()[i] - ms;
    double dg = truth.values.data()[i] - mg;
    cov += ds * dg;
    vs += ds * ds;
    vg += dg * dg;
  }
  require(vs > 0.0 && vg > 0.0, "cc: constant input");
  // Deciding |cov|^2 >= vs*vg before the sqrt makes exactly (anti)aligned
  // deviations return exactly +/-1.
  double c2 = cov * cov;
  double d2 = vs * vg;
  if (c2 >= d2) return cov >= 0.0 ? 1.0 : -1.0;
  return cov / std::sqrt(d2);
}

MetricReport compute_metrics(const Map2D& pred, const Map2D& truth, double beta2,
                             double alpha) {
  MetricReport rep;
  rep.mae = mae(pred, truth);
  rep.s_measure = s_measure(pred, truth, alpha);
  PrResult pr = pr_f_measure(pred, truth, beta2);
  RocResult roc = roc_auc(pred, truth);
  rep.f_beta_max = pr.f_beta_max;
  rep.auc = roc.auc;
  rep.cc = pearson_cc(pred, truth);
  rep.curve = pr.curve;
  for (int t = 0; t < 256; ++t) {
    rep.curve[t].tpr = roc.curve[t].tpr;
    rep.curve[t].fpr = roc.curve[t].fpr;
  }
  return rep;
}

std::string report_text(const MetricReport& report) {
  std::ostringstream os;
  os.precision(9);
  os << "mae=" << report.mae << "\n"
     << "s_measure=" << report.s_measure << "\n"
     << "f_beta_max=" << report.f_beta_max << "\n"
     << "auc=" << report.auc << "\n"
     << "cc=" << report.cc << "\n";
  return os.str();
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream os;
  os.precision(9);
  os << "threshold,precision,recall,tpr,fpr\n";
  for (const CurvePoint& p : curve)
    os << p.threshold << "," << p.precision << "," << p.recall << "," << p.tpr << ","
       << p.fpr << "\n";
  return os.str();
}

}  // namespace specsal
