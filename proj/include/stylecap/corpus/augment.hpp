#ifndef STYLECAP_CORPUS_AUGMENT_HPP_
#define STYLECAP_CORPUS_AUGMENT_HPP_

#include <utility>
#include <vector>

#include "stylecap/corpus/types.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::corpus {

struct NounSite {
  std::size_t position = 0;
  int category_id = 0;

  bool operator==(const NounSite& o) const {
    return position == o.position && category_id == o.category_id;
  }
};

// Per-region annotation handed over from the detector: the region's object
// category plus the attribute ids detected on it.
struct RegionAnnotation {
  int category_id = 0;
  std::vector<int> attribute_ids;
};

struct AugmentConfig {
  // Pool synonyms across all attributes annotated for a category (union)
  // instead of sampling one attribute first and then one of its synonyms.
  bool pool_synonyms = true;
};

// Dictionary scan for nouns belonging to any object category. A token
// matching several categories yields one site per category; sites are ordered
// by position, then category id.
std::vector<NounSite> match_noun_sites(const std::vector<Token>& tokens,
                                       const std::vector<ObjectNounSet>& noun_sets);

// Inserts one sampled style adjective in front of every matched noun whose
// category carries at least one annotated attribute. Nouns already preceded
// by a known style adjective are skipped so repeated augmentation cannot
// stack adjectives. The caption's sentiment is recomputed as the majority
// polarity of the inserted adjectives (ties give neutral).
Caption augment_with_attributes(const Caption& caption,
                                const std::vector<RegionAnnotation>& region_annotations,
                                const std::vector<ObjectNounSet>& noun_sets,
                                const std::vector<SynonymSet>& synonym_sets,
                                const SentimentLexicon& lexicon, Rng& rng,
                                const AugmentConfig& cfg = {});

// Inserts one adjective sampled from the ANP table in front of every noun
// that appears as a table key with the requested sentiment; the caption is
// labeled with that sentiment.
Caption augment_with_anps(const Caption& caption, const AnpTable& anps, Sentiment sentiment,
                          Rng& rng);

// Strips every token whose inserted flag is set; inverse of augmentation.
std::vector<Token> strip_inserted(const std::vector<Token>& tokens);

}  // namespace stylecap::corpus

#endif  // STYLECAP_CORPUS_AUGMENT_HPP_
