#ifndef STYLECAP_DECODE_CONSTRAINTS_HPP_
#define STYLECAP_DECODE_CONSTRAINTS_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylecap/corpus/vocabulary.hpp"
#include "stylecap/features/types.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::decode {

enum class ConstraintMode { none, weak, individual, multi_object };

std::string to_string(ConstraintMode m);
ConstraintMode constraint_mode_from_string(const std::string& s);

// Word forms behind attribute ids; a group is the synonym pool of one
// attribute, or just its name when no pool is known.
struct AttributeWords {
  std::map<int, std::string> names;
  std::map<int, std::set<std::string>> synonyms;

  std::set<std::string> words_for(int id) const;
};

AttributeWords attribute_words_from_synonym_sets(const std::vector<corpus::SynonymSet>& sets);

struct ConstraintSpec {
  ConstraintMode mode = ConstraintMode::none;
  std::vector<std::set<std::string>> groups;
  int min_groups = 0;  // accepting states satisfy at least this many groups
  // Set when the scene could not support the requested mode and a weaker
  // spec was returned instead.
  bool degraded = false;
  std::string warning;
};

// weak: one group holding the union of all detected attribute words.
// individual: the synonym pool of one uniformly drawn detected attribute.
// multi_object: one attribute from each of two distinct drawn regions; falls
// back to individual (one attributed region) or none (zero), with a warning.
ConstraintSpec pick_constraints(const features::RegionFeatureSet& detections, ConstraintMode mode,
                                const AttributeWords& words, Rng& rng);

// Bit g of the state is set once a group-g word has been produced; bits are
// never cleared.
std::uint32_t fsa_advance(std::uint32_t state, const std::string& word, const ConstraintSpec& spec);

bool fsa_accepting(std::uint32_t state, const ConstraintSpec& spec);

// The spec compiled against a vocabulary: per-token group masks.
class ConstraintAutomaton {
 public:
  ConstraintAutomaton(const ConstraintSpec& spec, const corpus::Vocabulary& vocab);

  std::uint32_t advance(std::uint32_t state, int token_id) const;
  bool accepting(std::uint32_t state) const;
  int num_groups() const { return num_groups_; }
  std::uint32_t num_states() const { return 1u << num_groups_; }
  // Groups none of whose words are in the vocabulary; any such group makes
  // full satisfaction impossible.
  std::vector<int> unreachable_groups() const;

 private:
  std::vector<std::uint32_t> token_masks_;
  int num_groups_ = 0;
  int min_groups_ = 0;
};

}  // namespace stylecap::decode

#endif  // STYLECAP_DECODE_CONSTRAINTS_HPP_
