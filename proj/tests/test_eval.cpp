#include "doctest.h"

#include "oracles.hpp"
#include "specsal/losses.hpp"
#include "specsal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace specsal;

namespace {

Map2D make_map(int h, int w, MapKind kind) {
  Map2D m;
  m.kind = kind;
  m.values.setZero(h, w);
  return m;
}

Map2D random_pred(int h, int w, std::mt19937& rng) {
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  Map2D m = make_map(h, w, MapKind::Normalized);
  for (Eigen::Index i = 0; i < m.values.size(); ++i) m.values.data()[i] = dist(rng);
  return m;
}

Map2D random_truth(int h, int w, std::mt19937& rng, double p_fg = 0.35) {
  std::bernoulli_distribution dist(p_fg);
  Map2D m = make_map(h, w, MapKind::Binary);
  for (Eigen::Index i = 0; i < m.values.size(); ++i)
    m.values.data()[i] = dist(rng) ? 1.0f : 0.0f;
  return m;
}

}  // namespace

TEST_CASE("metric input validation") {
  Map2D pred = make_map(4, 4, MapKind::Normalized);
  Map2D truth = make_map(4, 4, MapKind::Binary);
  CHECK_NOTHROW(validate_metric_inputs(pred, truth));

  Map2D raw = make_map(4, 4, MapKind::Raw);
  CHECK_THROWS_AS(validate_metric_inputs(raw, truth), Error);
  Map2D soft_truth = make_map(4, 4, MapKind::Normalized);
  CHECK_THROWS_AS(validate_metric_inputs(pred, soft_truth), Error);
  Map2D small = make_map(3, 4, MapKind::Binary);
  CHECK_THROWS_AS(validate_metric_inputs(pred, small), Error);
  // Binary predictions are fine (a thresholded map is still a prediction).
  Map2D bin_pred = make_map(4, 4, MapKind::Binary);
  CHECK_NOTHROW(validate_metric_inputs(bin_pred, truth));
}

TEST_CASE("perfect prediction hits the ideal scores") {
  std::mt19937 rng(3);
  Map2D truth = random_truth(16, 16, rng);
  Map2D pred = truth;
  pred.kind = MapKind::Normalized;
  CHECK(mae(pred, truth) == 0.0);
  PrResult pr = pr_f_measure(pred, truth);
  CHECK(pr.f_beta_max == doctest::Approx(1.0).epsilon(1e-12));
  RocResult roc = roc_auc(pred, truth);
  CHECK(roc.auc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson_cc(pred, truth) == 1.0);
  CHECK(s_measure(pred, truth) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mae hand values") {
  Map2D truth = make_map(2, 2, MapKind::Binary);
  truth.values << 1, 0, 0, 1;
  Map2D pred = make_map(2, 2, MapKind::Normalized);
  pred.values << 0.5f, 0.25f, 0.0f, 1.0f;
  // |1-0.5| + |0-0.25| + 0 + 0 over 4 pixels
  CHECK(mae(pred, truth) == doctest::Approx(0.1875).epsilon(1e-12));
}

TEST_CASE("constant half prediction on half coverage gives F = 13/23") {
  Map2D truth = make_map(16, 16, MapKind::Binary);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) truth.values(i, j) = i < 8 ? 1.0f : 0.0f;
  Map2D pred = make_map(16, 16, MapKind::Normalized);
  pred.values.setConstant(0.5f);
  PrResult pr = pr_f_measure(pred, truth);
  // Below t=128 every pixel is predicted: P=0.5, R=1, F=1.3*0.5/(0.15+1).
  CHECK(pr.f_beta_max == doctest::Approx(0.65 / 1.15).epsilon(1e-4));
  CHECK(pr.curve.size() == 256);
  CHECK(pr.curve[0].precision == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pr.curve[0].recall == 1.0);
  CHECK(pr.curve[255].recall == 0.0);
  CHECK(pr.curve[255].precision == 1.0);  // empty B convention
}

TEST_CASE("constant predictor has AUC exactly one half") {
  std::mt19937 rng(5);
  Map2D truth = random_truth(16, 16, rng);
  Map2D pred = make_map(16, 16, MapKind::Normalized);
  pred.values.setConstant(0.7f);
  RocResult roc = roc_auc(pred, truth);
  CHECK(roc.auc == 0.5);
}

TEST_CASE("inverted prediction has correlation exactly minus one") {
  std::mt19937 rng(6);
  Map2D truth = random_truth(16, 16, rng);
  Map2D pred = make_map(16, 16, MapKind::Normalized);
  pred.values = 1.0f - truth.values;
  CHECK(pearson_cc(pred, truth) == -1.0);

  Map2D constant = make_map(16, 16, MapKind::Normalized);
  constant.values.setConstant(0.3f);
  CHECK_THROWS_AS(pearson_cc(constant, truth), Error);
  CHECK_THROWS_AS(pearson_cc(pred, make_map(16, 16, MapKind::Binary)), Error);
}

TEST_CASE("s_measure degenerate truths") {
  Map2D pred = make_map(8, 8, MapKind::Normalized);
  pred.values.setConstant(0.25f);
  Map2D zeros = make_map(8, 8, MapKind::Binary);
  CHECK(s_measure(pred, zeros) == doctest::Approx(0.75).epsilon(1e-7));
  Map2D ones = make_map(8, 8, MapKind::Binary);
  ones.values.setConstant(1.0f);
  CHECK(s_measure(pred, ones) == doctest::Approx(0.25).epsilon(1e-7));
  // Result stays in [0,1] on adversarial inputs.
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Map2D p = random_pred(8, 8, rng);
    Map2D t = random_truth(8, 8, rng, trial % 2 == 0 ? 0.05 : 0.95);
    double s = s_measure(p, t);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("metrics agree with the exhaustive oracles") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    Map2D pred = random_pred(16, 16, rng);
    Map2D truth = random_truth(16, 16, rng);
    CHECK(mae(pred, truth) == doctest::Approx(oracle::mae(pred, truth)).epsilon(1e-9));
    CHECK(pr_f_measure(pred, truth).f_beta_max ==
          doctest::Approx(oracle::f_beta_max(pred, truth, 0.3)).epsilon(1e-9));
    CHECK(roc_auc(pred, truth).auc == doctest::Approx(oracle::auc(pred, truth)).epsilon(1e-9));
    CHECK(pearson_cc(pred, truth) ==
          doctest::Approx(oracle::pearson_cc(pred, truth)).epsilon(1e-9));
    CHECK(s_measure(pred, truth) ==
          doctest::Approx(oracle::s_measure(pred, truth, 0.5)).epsilon(1e-6));
  }
}

TEST_CASE("f and auc are invariant to monotone rescaling onto distinct levels") {
  // Quantization keeps threshold ordering when values move monotonically to
  // other exact 1/255 levels.
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> level(0, 9);
  Map2D pred = make_map(16, 16, MapKind::Normalized);
  Map2D squeezed = pred;
  for (Eigen::Index i = 0; i < pred.values.size(); ++i) {
    int q = level(rng);
    pred.values.data()[i] = static_cast<float>(q * 25) / 255.0f;     // levels 0,25,..,225
    squeezed.values.data()[i] = static_cast<float>(q * 10) / 255.0f; // levels 0,10,..,90
  }
  Map2D truth = random_truth(16, 16, rng);
  CHECK(pr_f_measure(pred, truth).f_beta_max ==
        doctest::Approx(pr_f_measure(squeezed, truth).f_beta_max).epsilon(1e-12));
  CHECK(roc_auc(pred, truth).auc ==
        doctest::Approx(roc_auc(squeezed, truth).auc).epsilon(1e-12));
}

TEST_CASE("compute_metrics merges the curves and report text is stable") {
  std::mt19937 rng(11);
  Map2D pred = random_pred(8, 8, rng);
  Map2D truth = random_truth(8, 8, rng);
  MetricReport rep = compute_metrics(pred, truth);
  CHECK(rep.curve.size() == 256);
  CHECK(rep.mae == mae(pred, truth));
  CHECK(rep.f_beta_max == pr_f_measure(pred, truth).f_beta_max);
  CHECK(rep.auc == roc_auc(pred, truth).auc);
  CHECK(rep.cc == pearson_cc(pred, truth));
  CHECK(rep.s_measure == s_measure(pred, truth));

  std::string text = report_text(rep);
  CHECK(text.find("mae=") != std::string::npos);
  CHECK(text.find("s_measure=") != std::string::npos);
  CHECK(text.find("f_beta_max=") != std::string::npos);
  CHECK(text.find("auc=") != std::string::npos);
  CHECK(text.find("cc=") != std::string::npos);

  std::string csv = curve_csv(rep.curve);
  CHECK(csv.rfind("threshold,precision,recall,tpr,fpr\n", 0) == 0);
  // Header plus one line per threshold.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 257);
}

TEST_CASE("bce matches hand values and clamps extremes") {
  Map2D t = make_map(1, 1, MapKind::Binary);
  t.values << 1.0f;
  Map2D p = make_map(1, 1, MapKind::Normalized);
  p.values << 0.5f;
  CHECK(bce_loss(t, p) == doctest::Approx(std::log(2.0)).epsilon(1e-6));

  // Confident wrong prediction is clamped, not infinite.
  p.values << 0.0f;
  double loss = bce_loss(t, p);
  CHECK(std::isfinite(loss));
  CHECK(loss == doctest::Approx(-std::log(1e-7)).epsilon(1e-6));

  Map2D t4 = make_map(2, 2, MapKind::Binary);
  t4.values << 1, 0, 1, 0;
  Map2D p4 = make_map(2, 2, MapKind::Normalized);
  p4.values << 0.5f, 0.5f, 0.5f, 0.5f;
  CHECK(bce_loss(t4, p4, Reduction::Sum) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-9));
  CHECK(bce_loss(t4, p4, Reduction::Mean) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("iou loss identities") {
  std::mt19937 rng(21);
  Map2D g = random_truth(8, 8, rng);
  Map2D gp = g;
  gp.kind = MapKind::Normalized;
  CHECK(iou_loss(gp, g) == 0.0);

  Map2D left = make_map(4, 4, MapKind::Binary);
  Map2D right = make_map(4, 4, MapKind::Binary);
  for (int i = 0; i < 4; ++i) {
    left.values(i, 0) = 1.0f;
    right.values(i, 3) = 1.0f;
  }
  Map2D leftp = left;
  leftp.kind = MapKind::Normalized;
  CHECK(iou_loss(leftp, right) == 1.0);

  // Intersection 1, union 3: loss = 1 - 1/3, exactly as computed in double.
  Map2D a = make_map(1, 3, MapKind::Normalized);
  a.values << 1, 1, 0;
  Map2D b = make_map(1, 3, MapKind::Binary);
  b.values << 0, 1, 1;
  CHECK(iou_loss(a, b) == 1.0 - 1.0 / 3.0);

  Map2D empty_pred = make_map(2, 2, MapKind::Normalized);
  Map2D empty_truth = make_map(2, 2, MapKind::Binary);
  CHECK_THROWS_AS(iou_loss(empty_pred, empty_truth), Error);
}

TEST_CASE("hybrid loss is the exact sum of its parts") {
  std::mt19937 rng(31);
  Map2D edge_pred = random_pred(8, 8, rng);
  Map2D edge_truth = random_truth(8, 8, rng);
  Map2D final_pred = random_pred(8, 8, rng);
  Map2D final_truth = random_truth(8, 8, rng);
  HybridLoss h = hybrid_loss(edge_pred, edge_truth, final_pred, final_truth);
  CHECK(h.edge == bce_loss(edge_truth, edge_pred));
  CHECK(h.final == iou_loss(final_pred, final_truth) + bce_loss(final_truth, final_pred));
  CHECK(h.total == h.edge + h.final);

  Map2D raw = make_map(8, 8, MapKind::Raw);
  CHECK_THROWS_AS(hybrid_loss(raw, edge_truth, final_pred, final_truth), Error);
}
