#ifndef STYLECAP_METRICS_REPORT_HPP_
#define STYLECAP_METRICS_REPORT_HPP_

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stylecap/corpus/types.hpp"
#include "stylecap/metrics/ngram.hpp"

namespace stylecap::metrics {

struct MetricsReport {
  std::array<double, 4> bleu{};  // B1..B4
  double rouge = 0.0;
  double cider = 0.0;
  double div1 = 0.0;
  double div2 = 0.0;
  double sen_pct = 0.0;
  double sp = 0.0;
  double sr = 0.0;
  int n = 1;           // candidates per image in the input
  bool oracle = false; // true when per-image best-of-n selection was applied
};

struct EvalInputs {
  CaptionSets candidates;  // n decodes per image
  CaptionSets references;
  const corpus::AnpTable* anps = nullptr;           // enables SEN%
  corpus::Sentiment sen_sentiment = corpus::Sentiment::positive;
  bool sen_adjacent_only = true;
  const corpus::SentimentLexicon* lexicon = nullptr;  // enables SP/SR
};

// Scores a chosen candidate per image against its references; Div-1/Div-2
// always cover the full candidate sets, averaged over images.
using CandidateSelector =
    std::function<std::size_t(const std::string& image_id, const std::vector<TokenSeq>& candidates,
                              const std::vector<TokenSeq>& references)>;

// Scores the first candidate of each image.
MetricsReport evaluate_first(const EvalInputs& in);

// Scores the per-image best-of-n candidate; the default selector maximizes
// CIDEr against the image's own references (ties toward the earlier
// candidate).
MetricsReport oracle_top1(const EvalInputs& in, const CandidateSelector& selector = nullptr);

nlohmann::json report_to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);

// Plain-text table, one row per labeled report. Columns: B1 B2 B3 B4 R C M
// %SEN SP SR Div-1 Div-2; M always prints "n/a".
std::string render_report_table(const std::vector<std::pair<std::string, MetricsReport>>& rows);

}  // namespace stylecap::metrics

#endif  // STYLECAP_METRICS_REPORT_HPP_
