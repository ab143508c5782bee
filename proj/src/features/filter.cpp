#include "stylecap/features/filter.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stylecap/common.hpp"

namespace stylecap::features {

RegionFeatureSet filter_detections(const RegionFeatureSet& raw, const FilterConfig& cfg) {
  if (cfg.k_max < 1) throw std::invalid_argument("filter_detections: k_max < 1");
  if (cfg.top_up && cfg.k_min > cfg.k_max) {
    throw std::invalid_argument("filter_detections: k_min > k_max");
  }

  std::vector<std::size_t> order(raw.regions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.regions[a].confidence > raw.regions[b].confidence;
  });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    if (raw.regions[idx].confidence >= cfg.objectness_threshold &&
        static_cast<int>(kept.size()) < cfg.k_max) {
      kept.push_back(idx);
    }
  }
  if (cfg.top_up) {
    for (std::size_t idx : order) {
      if (static_cast<int>(kept.size()) >= cfg.k_min) break;
      if (raw.regions[idx].confidence < cfg.objectness_threshold) kept.push_back(idx);
    }
  }
  if (kept.empty()) {
    throw EmptySceneError("filter_detections: no region meets the objectness threshold for image '" +
                          raw.image_id + "'");
  }

  RegionFeatureSet out;
  out.image_id = raw.image_id;
  out.regions.reserve(kept.size());
  for (std::size_t idx : kept) {
    Region r = raw.regions[idx];
    std::vector<AttributeScore> atts;
    for (const auto& a : r.attributes) {
      if (a.score >= cfg.attribute_threshold) atts.push_back(a);
    }
    r.attributes = std::move(atts);
    out.regions.push_back(std::move(r));
  }
  return out;
}

}  // namespace stylecap::features
