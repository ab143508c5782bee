#include "stylecap/corpus/augment.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stylecap::corpus {

namespace {

bool in_any_synonym_set(const std::string& word, const std::vector<SynonymSet>& synonym_sets) {
  for (const auto& s : synonym_sets) {
    if (s.synonyms.count(word)) return true;
  }
  return false;
}

Sentiment majority_polarity(const std::vector<std::string>& inserted,
                            const SentimentLexicon& lexicon) {
  int pos = 0, neg = 0;
  for (const auto& w : inserted) {
    if (!lexicon.has(w)) continue;
    switch (lexicon.polarity(w)) {
      case Sentiment::positive: ++pos; break;
      case Sentiment::negative: ++neg; break;
      default: break;
    }
  }
  if (pos > neg) return Sentiment::positive;
  if (neg > pos) return Sentiment::negative;
  return Sentiment::neutral;
}

}  // namespace

std::vector<NounSite> match_noun_sites(const std::vector<Token>& tokens,
                                       const std::vector<ObjectNounSet>& noun_sets) {
  std::vector<NounSite> sites;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::word) continue;
    std::vector<int> cats;
    for (const auto& ns : noun_sets) {
      if (ns.nouns.count(tokens[i].text)) cats.push_back(ns.category_id);
    }
    std::sort(cats.begin(), cats.end());
    for (int c : cats) sites.push_back({i, c});
  }
  return sites;
}

Caption augment_with_attributes(const Caption& caption,
                                const std::vector<RegionAnnotation>& region_annotations,
                                const std::vector<ObjectNounSet>& noun_sets,
                                const std::vector<SynonymSet>& synonym_sets,
                                const SentimentLexicon& lexicon, Rng& rng,
                                const AugmentConfig& cfg) {
  if (caption.provenance != Provenance::original) {
    throw std::invalid_argument("augment_with_attributes: caption already augmented");
  }

  std::map<int, const SynonymSet*> synonyms_by_attribute;
  for (const auto& s : synonym_sets) synonyms_by_attribute[s.attribute_id] = &s;

  // Attribute annotations pooled per category over all regions.
  std::map<int, std::set<int>> category_attributes;
  for (const auto& r : region_annotations) {
    for (int a : r.attribute_ids) category_attributes[r.category_id].insert(a);
  }

  // One insertion slot per noun position; a noun matching several annotated
  // categories contributes all of them to the same slot, so it still receives
  // exactly one adjective.
  std::map<std::size_t, std::set<int>> position_attributes;
  for (const auto& site : match_noun_sites(caption.tokens, noun_sets)) {
    auto it = category_attributes.find(site.category_id);
    if (it == category_attributes.end() || it->second.empty()) continue;
    position_attributes[site.position].insert(it->second.begin(), it->second.end());
  }

  std::map<std::size_t, std::string> insertions;
  std::vector<std::string> inserted_words;
  for (const auto& [pos, attrs] : position_attributes) {
    if (pos > 0 && in_any_synonym_set(caption.tokens[pos - 1].text, synonym_sets)) continue;

    std::string adjective;
    if (cfg.pool_synonyms) {
      std::set<std::string> pool;
      for (int a : attrs) {
        auto it = synonyms_by_attribute.find(a);
        if (it != synonyms_by_attribute.end()) {
          pool.insert(it->second->synonyms.begin(), it->second->synonyms.end());
        }
      }
      if (pool.empty()) continue;
      std::vector<std::string> flat(pool.begin(), pool.end());
      adjective = flat[rng.uniform_index(flat.size())];
    } else {
      std::vector<int> with_synonyms;
      for (int a : attrs) {
        if (synonyms_by_attribute.count(a)) with_synonyms.push_back(a);
      }
      if (with_synonyms.empty()) continue;
      const auto& chosen = *synonyms_by_attribute.at(with_synonyms[rng.uniform_index(with_synonyms.size())]);
      std::vector<std::string> flat(chosen.synonyms.begin(), chosen.synonyms.end());
      adjective = flat[rng.uniform_index(flat.size())];
    }
    insertions[pos] = adjective;
    inserted_words.push_back(adjective);
  }

  if (insertions.empty()) return caption;

  Caption out;
  out.image_id = caption.image_id;
  out.provenance = Provenance::attribute_augmented;
  out.sentiment = majority_polarity(inserted_words, lexicon);
  for (std::size_t i = 0; i < caption.tokens.size(); ++i) {
    auto it = insertions.find(i);
    if (it != insertions.end()) out.tokens.push_back({it->second, TokenKind::word, true});
    out.tokens.push_back(caption.tokens[i]);
  }
  return out;
}

Caption augment_with_anps(const Caption& caption, const AnpTable& anps, Sentiment sentiment,
                          Rng& rng) {
  if (caption.provenance != Provenance::original) {
    throw std::invalid_argument("augment_with_anps: caption already augmented");
  }
  if (sentiment != Sentiment::positive && sentiment != Sentiment::negative) {
    throw std::invalid_argument("augment_with_anps: sentiment must be positive or negative");
  }

  std::map<std::size_t, std::string> insertions;
  for (std::size_t i = 0; i < caption.tokens.size(); ++i) {
    const auto& tok = caption.tokens[i];
    if (tok.kind != TokenKind::word || !anps.has(tok.text, sentiment)) continue;
    if (i > 0) {
      // Skip nouns already carrying one of their table adjectives.
      const auto& prev = caption.tokens[i - 1].text;
      bool already_styled = false;
      for (const auto& [s, adjectives] : anps.entries.at(tok.text)) {
        (void)s;
        if (adjectives.count(prev)) {
          already_styled = true;
          break;
        }
      }
      if (already_styled) continue;
    }
    const auto& set = anps.adjectives(tok.text, sentiment);
    std::vector<std::string> flat(set.begin(), set.end());
    insertions[i] = flat[rng.uniform_index(flat.size())];
  }

  if (insertions.empty()) return caption;

  Caption out;
  out.image_id = caption.image_id;
  out.provenance = Provenance::anp_augmented;
  out.sentiment = sentiment;
  for (std::size_t i = 0; i < caption.tokens.size(); ++i) {
    auto it = insertions.find(i);
    if (it != insertions.end()) out.tokens.push_back({it->second, TokenKind::word, true});
    out.tokens.push_back(caption.tokens[i]);
  }
  return out;
}

std::vector<Token> strip_inserted(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (!t.inserted) out.push_back(t);
  }
  return out;
}

}  // namespace stylecap::corpus
