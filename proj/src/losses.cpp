#include "specsal/losses.hpp"

#include <algorithm>
#include <cmath>

namespace specsal {

namespace {

constexpr double kClampEps = 1e-7;

void require_same_shape(const Map2D& a, const Map2D& b, const char* what) {
  require(a.height() == b.height() && a.width() == b.width(), what);
  validate_map(a);
  validate_map(b);
}

}  // namespace

double bce_loss(const Map2D& target, const Map2D& pred, Reduction reduction) {
  require_same_shape(target, pred, "bce: map dimensions differ");
  require(target.kind != MapKind::Raw && pred.kind != MapKind::Raw,
          "bce: maps must be normalized or binary");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pred.values.size(); ++i) {
    double t = target.values.data()[i];
    double p = std::clamp(static_cast<double>(pred.values.data()[i]), kClampEps,
                          1.0 - kClampEps);
    sum -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
  }
  if (reduction == Reduction::Mean) sum /= pred.values.size();
  return sum;
}

double iou_loss(const Map2D& pred, const Map2D& truth) {
  require_same_shape(pred, truth, "iou: map dimensions differ");
  require(pred.kind != MapKind::Raw && truth.kind != MapKind::Raw,
          "iou: maps must be normalized or binary");
  double inter = 0.0, uni = 0.0;
  for (Eigen::Index i = 0; i < pred.values.size(); ++i) {
    double s = pred.values.data()[i];
    double g = truth.values.data()[i];
    inter += s * g;
    uni += s + g - s * g;
  }
  require(uni != 0.0, "iou: empty union");
  return 1.0 - inter / uni;
}

HybridLoss hybrid_loss(const Map2D& edge_pred, const Map2D& edge_truth,
                       const Map2D& final_pred, const Map2D& final_truth) {
  HybridLoss out;
  out.edge = bce_loss(edge_truth, edge_pred);
  out.final = iou_loss(final_pred, final_truth) + bce_loss(final_truth, final_pred);
  out.total = out.edge + out.final;
  return out;
}

}  // namespace specsal
