#include "stylecap/corpus/types.hpp"

#include <stdexcept>

namespace stylecap::corpus {

std::string Caption::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

bool AnpTable::has(const std::string& noun, Sentiment s) const {
  auto it = entries.find(noun);
  if (it == entries.end()) return false;
  auto jt = it->second.find(s);
  return jt != it->second.end() && !jt->second.empty();
}

const std::set<std::string>& AnpTable::adjectives(const std::string& noun, Sentiment s) const {
  return entries.at(noun).at(s);
}

double SentimentLexicon::score(const std::string& word) const {
  auto it = scores.find(word);
  if (it == scores.end()) throw std::out_of_range("lexicon has no entry for '" + word + "'");
  return it->second;
}

Sentiment SentimentLexicon::polarity(const std::string& word) const {
  const double s = score(word);
  if (s > pos_cutoff) return Sentiment::positive;
  if (s < neg_cutoff) return Sentiment::negative;
  return Sentiment::neutral;
}

std::string to_string(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return "pos";
    case Sentiment::negative: return "neg";
    case Sentiment::neutral: return "neu";
    case Sentiment::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

Sentiment sentiment_from_string(const std::string& s) {
  if (s == "pos" || s == "positive") return Sentiment::positive;
  if (s == "neg" || s == "negative") return Sentiment::negative;
  if (s == "neu" || s == "neutral") return Sentiment::neutral;
  if (s == "unlabeled") return Sentiment::unlabeled;
  throw std::invalid_argument("unknown sentiment label '" + s + "'");
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::original: return "original";
    case Provenance::attribute_augmented: return "attribute_augmented";
    case Provenance::anp_augmented: return "anp_augmented";
  }
  return "original";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "original") return Provenance::original;
  if (s == "attribute_augmented") return Provenance::attribute_augmented;
  if (s == "anp_augmented") return Provenance::anp_augmented;
  throw std::invalid_argument("unknown provenance label '" + s + "'");
}

}  // namespace stylecap::corpus
