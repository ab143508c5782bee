#include "stylecap/features/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stylecap::features {

namespace {
constexpr double kProbEps = 1e-7;

double clamp_prob(double p) { return std::clamp(p, kProbEps, 1.0 - kProbEps); }
}  // namespace

AnchorTarget AnchorTarget::background() {
  AnchorTarget t;
  t.label = 0;
  t.has_attribute = false;
  return t;
}

Mat RegionFeatureSet::feature_matrix() const {
  Mat m(k(), feature_dim());
  for (int i = 0; i < k(); ++i) m.row(i) = regions[static_cast<std::size_t>(i)].feature.transpose();
  return m;
}

std::vector<std::vector<int>> RegionFeatureSet::attribute_id_sets() const {
  std::vector<std::vector<int>> sets;
  sets.reserve(regions.size());
  for (const auto& r : regions) {
    std::vector<int> ids;
    ids.reserve(r.attributes.size());
    for (const auto& a : r.attributes) ids.push_back(a.id);
    sets.push_back(std::move(ids));
  }
  return sets;
}

double smooth_l1(const Vec& d) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double a = std::abs(d[i]);
    sum += a < 1.0 ? 0.5 * d[i] * d[i] : a - 0.5;
  }
  return sum;
}

std::vector<double> class_balanced_weights(const std::vector<long>& class_counts, double cb_beta) {
  if (!(cb_beta >= 0.0 && cb_beta < 1.0)) {
    throw std::invalid_argument("class_balanced_weights: cb_beta must lie in [0, 1)");
  }
  if (class_counts.empty()) throw std::invalid_argument("class_balanced_weights: no classes");
  std::vector<double> w(class_counts.size());
  for (std::size_t c = 0; c < class_counts.size(); ++c) {
    if (class_counts[c] < 1) throw std::invalid_argument("class_balanced_weights: count < 1");
    if (cb_beta == 0.0) {
      w[c] = 1.0;
    } else {
      w[c] = (1.0 - cb_beta) / (1.0 - std::pow(cb_beta, static_cast<double>(class_counts[c])));
    }
  }
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= static_cast<double>(w.size());
  for (double& v : w) v /= mean;
  return w;
}

double binary_cross_entropy(double p, int label) {
  const double q = clamp_prob(p);
  return label ? -std::log(q) : -std::log(1.0 - q);
}

DetectionLoss detection_loss(const std::vector<AnchorPrediction>& preds,
                             const std::vector<AnchorTarget>& targets, const LossConfig& cfg) {
  if (preds.size() != targets.size()) {
    throw std::invalid_argument("detection_loss: prediction/target length mismatch");
  }
  if (preds.empty()) throw std::invalid_argument("detection_loss: empty anchor list");

  const std::vector<double> weights =
      cfg.class_counts.empty() ? std::vector<double>() : class_balanced_weights(cfg.class_counts, cfg.cb_beta);

  double cls = 0.0, reg = 0.0, att = 0.0;
  long n_cls = static_cast<long>(preds.size());
  long n_reg = 0, n_att = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    const auto& t = targets[i];
    cls += binary_cross_entropy(p.objectness, t.label);

    if (t.label == 1) {
      Vec d(4);
      for (int j = 0; j < 4; ++j) {
        d[j] = p.box[static_cast<std::size_t>(j)] - t.box[static_cast<std::size_t>(j)];
      }
      reg += smooth_l1(d);
      ++n_reg;
    }

    if (t.has_attribute) {
      if (p.attribute_probs.size() != t.attribute_labels.size()) {
        throw std::invalid_argument("detection_loss: attribute dimension mismatch");
      }
      const std::size_t num_classes = p.attribute_probs.size();
      double anchor_att = 0.0;
      if (cfg.attribute_loss == AttributeLossKind::sigmoid_bce) {
        for (std::size_t c = 0; c < num_classes; ++c) {
          const double w = weights.empty() ? 1.0 : weights.at(c);
          anchor_att += w * binary_cross_entropy(p.attribute_probs[c], t.attribute_labels[c]);
        }
      } else {
        double norm = 0.0;
        for (double q : p.attribute_probs) norm += clamp_prob(q);
        for (std::size_t c = 0; c < num_classes; ++c) {
          if (!t.attribute_labels[c]) continue;
          const double w = weights.empty() ? 1.0 : weights.at(c);
          anchor_att += -w * std::log(clamp_prob(p.attribute_probs[c]) / norm);
        }
      }
      att += anchor_att;
      ++n_att;
    }
  }

  DetectionLoss out;
  out.cls_term = cls / static_cast<double>(n_cls);
  out.reg_term = n_reg > 0 ? reg / static_cast<double>(n_reg) : 0.0;
  out.att_term = n_att > 0 ? att / static_cast<double>(n_att) : 0.0;
  out.total = out.cls_term + cfg.lambda1 * out.reg_term + cfg.lambda2 * out.att_term;
  return out;
}

}  // namespace stylecap::features
