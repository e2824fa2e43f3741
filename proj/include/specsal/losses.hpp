#pragma once

#include "specsal/cube.hpp"

namespace specsal {

enum class Reduction { Sum, Mean };

// -sum(t*log(p) + (1-t)*log(1-p)); predictions are clamped to
// [1e-7, 1 - 1e-7] before the logs.
double bce_loss(const Map2D& target, const Map2D& pred,
                Reduction reduction = Reduction::Sum);

// 1 - sum(S*G) / sum(S + G - S*G). Errors when the union term is zero.
double iou_loss(const Map2D& pred, const Map2D& truth);

struct HybridLoss {
  double edge = 0.0;   // bce over the edge maps
  double final = 0.0;  // iou + bce over the saliency maps
  double total = 0.0;  // edge + final
};

HybridLoss hybrid_loss(const Map2D& edge_pred, const Map2D& edge_truth,
                       const Map2D& final_pred, const Map2D& final_truth);

}  // namespace specsal
