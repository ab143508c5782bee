#ifndef STYLECAP_FEATURES_TYPES_HPP_
#define STYLECAP_FEATURES_TYPES_HPP_

#include <array>
#include <string>
#include <vector>

#include "stylecap/common.hpp"

namespace stylecap::features {

struct AttributeScore {
  int id = 0;
  double score = 0.0;
};

struct AnchorPrediction {
  double objectness = 0.0;              // p_i
  std::array<double, 4> box{};          // b_i
  std::vector<double> attribute_probs;  // one probability per attribute class
};

struct AnchorTarget {
  int label = 0;                      // p*_i in {0, 1}
  std::array<double, 4> box{};        // b*_i
  std::vector<int> attribute_labels;  // multi-hot over the attribute classes
  bool has_attribute = false;         // beta_i

  static AnchorTarget background();
};

struct Region {
  std::array<double, 4> box{};
  int category_id = 0;
  double confidence = 0.0;
  std::vector<AttributeScore> attributes;  // the A_k set for this region
  Vec feature;                             // v_k
};

struct RegionFeatureSet {
  std::string image_id;
  std::vector<Region> regions;

  int k() const { return static_cast<int>(regions.size()); }
  int feature_dim() const { return regions.empty() ? 0 : static_cast<int>(regions.front().feature.size()); }
  // K x D matrix of stacked region features.
  Mat feature_matrix() const;
  // Attribute ids per region, in score order as stored.
  std::vector<std::vector<int>> attribute_id_sets() const;
};

}  // namespace stylecap::features

#endif  // STYLECAP_FEATURES_TYPES_HPP_
