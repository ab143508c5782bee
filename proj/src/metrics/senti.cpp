#include "stylecap/metrics/senti.hpp"

#include <set>
#include <stdexcept>

namespace stylecap::metrics {

namespace {

bool has_pair(const TokenSeq& caption, const corpus::AnpTable& anps, corpus::Sentiment sentiment,
              bool adjacent_only) {
  if (adjacent_only) {
    for (std::size_t i = 0; i + 1 < caption.size(); ++i) {
      const std::string& noun = caption[i + 1];
      if (!anps.has(noun, sentiment)) continue;
      if (anps.adjectives(noun, sentiment).count(caption[i])) return true;
    }
    return false;
  }
  const std::set<std::string> words(caption.begin(), caption.end());
  for (const auto& [noun, by_sentiment] : anps.entries) {
    if (!words.count(noun)) continue;
    auto it = by_sentiment.find(sentiment);
    if (it == by_sentiment.end()) continue;
    for (const auto& adj : it->second) {
      if (words.count(adj)) return true;
    }
  }
  return false;
}

std::set<std::string> sentiment_words(const std::vector<TokenSeq>& captions,
                                      const corpus::SentimentLexicon& lexicon) {
  std::set<std::string> out;
  for (const auto& c : captions) {
    for (const auto& w : c) {
      if (lexicon.has(w) && lexicon.polarity(w) != corpus::Sentiment::neutral) out.insert(w);
    }
  }
  return out;
}

}  // namespace

double sen_percent(const std::vector<TokenSeq>& candidates, const corpus::AnpTable& anps,
                   corpus::Sentiment sentiment, bool adjacent_only) {
  if (candidates.empty()) return 0.0;
  long hits = 0;
  for (const auto& c : candidates) {
    if (has_pair(c, anps, sentiment, adjacent_only)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(candidates.size());
}

std::pair<double, double> sentiment_pr(const CaptionSets& candidates, const CaptionSets& references,
                                       const corpus::SentimentLexicon& lexicon) {
  if (candidates.empty()) return {0.0, 0.0};
  double sp = 0.0, sr = 0.0;
  for (const auto& [image_id, cands] : candidates) {
    auto rit = references.find(image_id);
    if (rit == references.end()) {
      throw std::invalid_argument("sentiment_pr: no references for image '" + image_id + "'");
    }
    const auto c = sentiment_words(cands, lexicon);
    const auto r = sentiment_words(rit->second, lexicon);
    long shared = 0;
    for (const auto& w : c) {
      if (r.count(w)) ++shared;
    }
    if (!c.empty()) sp += static_cast<double>(shared) / static_cast<double>(c.size());
    if (!r.empty()) sr += static_cast<double>(shared) / static_cast<double>(r.size());
  }
  const double m = static_cast<double>(candidates.size());
  return {sp / m, sr / m};
}

corpus::Sentiment lexicon_classify(const TokenSeq& caption,
                                   const corpus::SentimentLexicon& lexicon) {
  long pos = 0, neg = 0;
  for (const auto& w : caption) {
    if (!lexicon.has(w)) continue;
    switch (lexicon.polarity(w)) {
      case corpus::Sentiment::positive: ++pos; break;
      case corpus::Sentiment::negative: ++neg; break;
      default: break;
    }
  }
  if (pos > neg) return corpus::Sentiment::positive;
  if (neg > pos) return corpus::Sentiment::negative;
  return corpus::Sentiment::neutral;
}

}  // namespace stylecap::metrics
