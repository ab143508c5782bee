#ifndef STYLECAP_FEATURES_LOSS_HPP_
#define STYLECAP_FEATURES_LOSS_HPP_

#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/features/types.hpp"

namespace stylecap::features {

enum class AttributeLossKind {
  // Per-class weighted binary cross-entropy over sigmoid outputs; the
  // multi-label reading, used by default.
  sigmoid_bce,
  // Weighted cross-entropy against the renormalized probability vector.
  softmax_ce,
};

struct LossConfig {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::vector<long> class_counts;  // per attribute class, for balancing
  double cb_beta = 0.999;
  AttributeLossKind attribute_loss = AttributeLossKind::sigmoid_bce;
};

struct DetectionLoss {
  double total = 0.0;
  double cls_term = 0.0;
  double reg_term = 0.0;
  double att_term = 0.0;
};

// Sum over components of 0.5 d^2 for |d| < 1 and |d| - 0.5 otherwise.
double smooth_l1(const Vec& d);

// Effective-number class weights w_c proportional to (1-beta)/(1-beta^n_c),
// normalized to mean 1.
std::vector<double> class_balanced_weights(const std::vector<long>& class_counts, double cb_beta);

// Objectness cross-entropy over all anchors, box regression over positive
// anchors, and the class-balanced attribute term over anchors that carry
// attributes:
//   total = cls/N_cls + lambda1 * reg/N_reg + lambda2 * att/N_att
double binary_cross_entropy(double p, int label);
DetectionLoss detection_loss(const std::vector<AnchorPrediction>& preds,
                             const std::vector<AnchorTarget>& targets, const LossConfig& cfg);

}  // namespace stylecap::features

#endif  // STYLECAP_FEATURES_LOSS_HPP_
