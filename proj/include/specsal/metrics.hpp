#pragma once

#include "specsal/cube.hpp"

#include <string>

namespace specsal {

// Prediction maps must be normalized ([0,1]); ground truth must be binary.
void validate_metric_inputs(const Map2D& pred, const Map2D& truth);

double mae(const Map2D& pred, const Map2D& truth);

// Structure similarity: alpha * S_region + (1 - alpha) * S_object, clamped
// to [0,1]. Degenerate truth: all-zero -> 1 - mean(pred), all-one ->
// mean(pred).
double s_measure(const Map2D& pred, const Map2D& truth, double alpha = 0.5);

struct CurvePoint {
  int threshold = 0;  // 0..255
  double precision = 0.0, recall = 0.0;
  double tpr = 0.0, fpr = 0.0;
};

// Predictions are quantized to round(255 * v); B(t) = quantized >= t for
// each integer threshold. Empty B gives precision 1; F is 0 where both
// precision and recall are 0.
struct PrResult {
  std::vector<CurvePoint> curve;  // 256 points, precision/recall filled
  double f_beta_max = 0.0;
};
PrResult pr_f_measure(const Map2D& pred, const Map2D& truth, double beta2 = 0.3);

// Same 256 thresholds; AUC integrates the curve plus virtual endpoints
// (0,0) and (1,1) with the trapezoid rule over FPR-sorted points.
struct RocResult {
  std::vector<CurvePoint> curve;  // 256 points, tpr/fpr filled
  double auc = 0.0;
};
RocResult roc_auc(const Map2D& pred, const Map2D& truth);

// Pearson correlation (population moments), guarded so that exactly
// (anti)proportional deviation vectors give exactly +/-1. Errors when either
// input is constant.
double pearson_cc(const Map2D& pred, const Map2D& truth);

struct MetricReport {
  double mae = 0.0;
  double s_measure = 0.0;
  double f_beta_max = 0.0;
  double auc = 0.0;
  double cc = 0.0;
  std::vector<CurvePoint> curve;  // 256 merged PR/ROC points
};

MetricReport compute_metrics(const Map2D& pred, const Map2D& truth, double beta2 = 0.3,
                             double alpha = 0.5);

// key=value lines for the scalar metrics.
std::string report_text(const MetricReport& report);
// CSV with header threshold,precision,recall,tpr,fpr.
std::string curve_csv(const std::vector<CurvePoint>& curve);

}  // namespace specsal
