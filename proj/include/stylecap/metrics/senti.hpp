#ifndef STYLECAP_METRICS_SENTI_HPP_
#define STYLECAP_METRICS_SENTI_HPP_

#include <utility>
#include <vector>

#include "stylecap/corpus/types.hpp"
#include "stylecap/metrics/ngram.hpp"

namespace stylecap::metrics {

// 100 x fraction of captions containing an (adjective, noun) pair listed in
// the table under the requested sentiment. By default the adjective must sit
// directly before the noun; adjacent_only = false accepts any caption where
// both words of some listed pair occur.
double sen_percent(const std::vector<TokenSeq>& candidates, const corpus::AnpTable& anps,
                   corpus::Sentiment sentiment, bool adjacent_only = true);

// Precision/recall of non-neutral lexicon words shared between the pooled
// candidates and pooled references of each image, macro-averaged. An image
// with no candidate sentiment words scores precision 0; no reference
// sentiment words scores recall 0.
std::pair<double, double> sentiment_pr(const CaptionSets& candidates, const CaptionSets& references,
                                       const corpus::SentimentLexicon& lexicon);

// Majority polarity over the caption's lexicon words; ties and lexicon-free
// captions are neutral.
corpus::Sentiment lexicon_classify(const TokenSeq& caption,
                                   const corpus::SentimentLexicon& lexicon);

}  // namespace stylecap::metrics

#endif  // STYLECAP_METRICS_SENTI_HPP_
