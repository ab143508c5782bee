#include "stylecap/decode/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace stylecap::decode {

std::string to_string(ConstraintMode m) {
  switch (m) {
    case ConstraintMode::none: return "none";
    case ConstraintMode::weak: return "weak";
    case ConstraintMode::individual: return "individual";
    case ConstraintMode::multi_object: return "multi_object";
  }
  throw std::invalid_argument("to_string: invalid constraint mode");
}

ConstraintMode constraint_mode_from_string(const std::string& s) {
  if (s == "none") return ConstraintMode::none;
  if (s == "weak") return ConstraintMode::weak;
  if (s == "individual") return ConstraintMode::individual;
  if (s == "multi_object" || s == "multi-object") return ConstraintMode::multi_object;
  throw std::invalid_argument("constraint_mode_from_string: '" + s + "'");
}

std::set<std::string> AttributeWords::words_for(int id) const {
  auto sit = synonyms.find(id);
  if (sit != synonyms.end() && !sit->second.empty()) return sit->second;
  auto nit = names.find(id);
  if (nit == names.end()) {
    throw UnknownAttributeError("AttributeWords: no word for attribute id " + std::to_string(id));
  }
  return {nit->second};
}

AttributeWords attribute_words_from_synonym_sets(const std::vector<corpus::SynonymSet>& sets) {
  AttributeWords out;
  for (const auto& s : sets) {
    out.names[s.attribute_id] = s.canonical;
    out.synonyms[s.attribute_id] = s.synonyms;
  }
  return out;
}

namespace {

// Region indices that still carry attributes, plus the sorted distinct ids.
std::vector<std::size_t> attributed_regions(const features::RegionFeatureSet& detections) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < detections.regions.size(); ++r) {
    if (!detections.regions[r].attributes.empty()) out.push_back(r);
  }
  return out;
}

std::vector<int> distinct_attribute_ids(const features::RegionFeatureSet& detections) {
  std::set<int> ids;
  for (const auto& region : detections.regions) {
    for (const auto& a : region.attributes) ids.insert(a.id);
  }
  return {ids.begin(), ids.end()};
}

ConstraintSpec degraded_to_none(ConstraintMode requested) {
  ConstraintSpec spec;
  spec.mode = ConstraintMode::none;
  spec.degraded = true;
  spec.warning = "no detected attributes; requested mode '" + to_string(requested) + "' dropped";
  return spec;
}

}  // namespace

ConstraintSpec pick_constraints(const features::RegionFeatureSet& detections, ConstraintMode mode,
                                const AttributeWords& words, Rng& rng) {
  ConstraintSpec spec;
  spec.mode = mode;
  if (mode == ConstraintMode::none) return spec;

  const std::vector<int> ids = distinct_attribute_ids(detections);
  if (ids.empty()) return degraded_to_none(mode);

  switch (mode) {
    case ConstraintMode::weak: {
      std::set<std::string> all;
      for (int id : ids) {
        const auto ws = words.words_for(id);
        all.insert(ws.begin(), ws.end());
      }
      spec.groups.push_back(std::move(all));
      spec.min_groups = 1;
      return spec;
    }
    case ConstraintMode::individual: {
      const int id = ids[rng.uniform_index(ids.size())];
      spec.groups.push_back(words.words_for(id));
      spec.min_groups = 1;
      return spec;
    }
    case ConstraintMode::multi_object: {
      const std::vector<std::size_t> regions = attributed_regions(detections);
      if (regions.size() < 2) {
        const int id = ids[rng.uniform_index(ids.size())];
        spec.mode = ConstraintMode::individual;
        spec.groups.push_back(words.words_for(id));
        spec.min_groups = 1;
        spec.degraded = true;
        spec.warning = "fewer than 2 attributed regions; multi_object degraded to individual";
        return spec;
      }
      const std::size_t first = regions[rng.uniform_index(regions.size())];
      std::size_t second = first;
      while (second == first) second = regions[rng.uniform_index(regions.size())];
      for (std::size_t r : {first, second}) {
        const auto& atts = detections.regions[r].attributes;
        const int id = atts[rng.uniform_index(atts.size())].id;
        spec.groups.push_back(words.words_for(id));
      }
      spec.min_groups = 2;
      return spec;
    }
    case ConstraintMode::none: break;
  }
  throw std::invalid_argument("pick_constraints: invalid mode");
}

std::uint32_t fsa_advance(std::uint32_t state, const std::string& word, const ConstraintSpec& spec) {
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    if (spec.groups[g].count(word)) state |= 1u << g;
  }
  return state;
}

bool fsa_accepting(std::uint32_t state, const ConstraintSpec& spec) {
  int bits = 0;
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    if (state & (1u << g)) ++bits;
  }
  return bits >= spec.min_groups;
}

ConstraintAutomaton::ConstraintAutomaton(const ConstraintSpec& spec,
                                         const corpus::Vocabulary& vocab)
    : num_groups_(static_cast<int>(spec.groups.size())), min_groups_(spec.min_groups) {
  if (num_groups_ > 30) throw std::invalid_argument("ConstraintAutomaton: too many groups");
  if (min_groups_ > num_groups_) {
    throw std::invalid_argument("ConstraintAutomaton: min_groups exceeds group count");
  }
  token_masks_.assign(static_cast<std::size_t>(vocab.size()), 0u);
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    for (const auto& w : spec.groups[g]) {
      if (!vocab.contains(w)) continue;
      const int id = vocab.index(w);
      if (id == corpus::Vocabulary::kUnk) continue;
      token_masks_[static_cast<std::size_t>(id)] |= 1u << g;
    }
  }
}

std::uint32_t ConstraintAutomaton::advance(std::uint32_t state, int token_id) const {
  return state | token_masks_.at(static_cast<std::size_t>(token_id));
}

bool ConstraintAutomaton::accepting(std::uint32_t state) const {
  int bits = 0;
  for (int g = 0; g < num_groups_; ++g) {
    if (state & (1u << g)) ++bits;
  }
  return bits >= min_groups_;
}

std::vector<int> ConstraintAutomaton::unreachable_groups() const {
  std::vector<int> out;
  for (int g = 0; g < num_groups_; ++g) {
    bool reachable = false;
    for (const auto mask : token_masks_) {
      if (mask & (1u << g)) {
        reachable = true;
        break;
      }
    }
    if (!reachable) out.push_back(g);
  }
  return out;
}

}  // namespace stylecap::decode
