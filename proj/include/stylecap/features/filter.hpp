#ifndef STYLECAP_FEATURES_FILTER_HPP_
#define STYLECAP_FEATURES_FILTER_HPP_

#include <vector>

#include "stylecap/features/types.hpp"

namespace stylecap::features {

struct FilterConfig {
  double objectness_threshold = 0.5;
  double attribute_threshold = 0.3;
  int k_max = 100;
  // When fewer regions than k_min survive the objectness cut, refill from the
  // rejects in confidence order. Off by default: the confidence floor wins.
  bool top_up = false;
  int k_min = 10;
};

// Keeps regions with confidence >= objectness_threshold (at most k_max, by
// descending confidence, ties by lower original index) and drops attribute
// scores below attribute_threshold. Throws EmptySceneError when nothing
// survives. Running the filter on its own output is a no-op.
RegionFeatureSet filter_detections(const RegionFeatureSet& raw, const FilterConfig& cfg = {});

}  // namespace stylecap::features

#endif  // STYLECAP_FEATURES_FILTER_HPP_
