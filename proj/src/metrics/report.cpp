#include "stylecap/metrics/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "stylecap/metrics/scores.hpp"
#include "stylecap/metrics/senti.hpp"

namespace stylecap::metrics {

namespace {

void validate(const EvalInputs& in) {
  if (in.candidates.empty()) throw std::invalid_argument("evaluate: no candidates");
  for (const auto& [image_id, cands] : in.candidates) {
    if (cands.empty()) {
      throw std::invalid_argument("evaluate: image '" + image_id + "' has no candidates");
    }
    auto rit = in.references.find(image_id);
    if (rit == in.references.end() || rit->second.empty()) {
      throw std::invalid_argument("evaluate: image '" + image_id + "' has no references");
    }
  }
}

MetricsReport score_selection(const EvalInputs& in,
                              const std::map<std::string, TokenSeq>& chosen) {
  MetricsReport r;

  std::vector<TokenSeq> cands;
  std::vector<std::vector<TokenSeq>> refs;
  for (const auto& [image_id, cand] : chosen) {
    cands.push_back(cand);
    refs.push_back(in.references.at(image_id));
  }
  const auto b = corpus_bleu(cands, refs, 4);
  for (std::size_t i = 0; i < 4; ++i) r.bleu[i] = b[i];

  double rouge_sum = 0.0;
  for (std::size_t i = 0; i < cands.size(); ++i) rouge_sum += rouge_l(cands[i], refs[i]);
  r.rouge = rouge_sum / static_cast<double>(cands.size());

  const CiderScorer cider_scorer(in.references);
  r.cider = cider_scorer.corpus_score(chosen);

  double div1 = 0.0, div2 = 0.0;
  for (const auto& [image_id, set] : in.candidates) {
    div1 += div_n(set, 1);
    div2 += div_n(set, 2);
  }
  r.div1 = div1 / static_cast<double>(in.candidates.size());
  r.div2 = div2 / static_cast<double>(in.candidates.size());

  if (in.anps) {
    r.sen_pct = sen_percent(cands, *in.anps, in.sen_sentiment, in.sen_adjacent_only);
  }
  if (in.lexicon) {
    CaptionSets chosen_sets;
    for (const auto& [image_id, cand] : chosen) chosen_sets[image_id] = {cand};
    const auto pr = sentiment_pr(chosen_sets, in.references, *in.lexicon);
    r.sp = pr.first;
    r.sr = pr.second;
  }

  int n = 0;
  for (const auto& [image_id, set] : in.candidates) {
    n = std::max(n, static_cast<int>(set.size()));
  }
  r.n = n;
  return r;
}

}  // namespace

MetricsReport evaluate_first(const EvalInputs& in) {
  validate(in);
  std::map<std::string, TokenSeq> chosen;
  for (const auto& [image_id, cands] : in.candidates) chosen[image_id] = cands.front();
  MetricsReport r = score_selection(in, chosen);
  r.oracle = false;
  return r;
}

MetricsReport oracle_top1(const EvalInputs& in, const CandidateSelector& selector) {
  validate(in);

  CandidateSelector select = selector;
  CiderScorer scorer(in.references);
  if (!select) {
    select = [&scorer](const std::string& image_id, const std::vector<TokenSeq>& cands,
                       const std::vector<TokenSeq>&) {
      std::size_t best = 0;
      double best_score = scorer.score(image_id, cands[0]);
      for (std::size_t i = 1; i < cands.size(); ++i) {
        const double s = scorer.score(image_id, cands[i]);
        if (s > best_score) {
          best = i;
          best_score = s;
        }
      }
      return best;
    };
  }

  std::map<std::string, TokenSeq> chosen;
  for (const auto& [image_id, cands] : in.candidates) {
    const std::size_t idx = select(image_id, cands, in.references.at(image_id));
    if (idx >= cands.size()) throw std::invalid_argument("oracle_top1: selector index out of range");
    chosen[image_id] = cands[idx];
  }
  MetricsReport r = score_selection(in, chosen);
  r.oracle = true;
  return r;
}

nlohmann::json report_to_json(const MetricsReport& r) {
  return nlohmann::json{{"B1", r.bleu[0]}, {"B2", r.bleu[1]},   {"B3", r.bleu[2]},
                        {"B4", r.bleu[3]}, {"R", r.rouge},      {"C", r.cider},
                        {"M", nullptr},    {"Div1", r.div1},    {"Div2", r.div2},
                        {"SEN_pct", r.sen_pct}, {"SP", r.sp},   {"SR", r.sr},
                        {"n", r.n},        {"oracle", r.oracle}};
}

MetricsReport report_from_json(const nlohmann::json& j) {
  MetricsReport r;
  r.bleu = {j.at("B1").get<double>(), j.at("B2").get<double>(), j.at("B3").get<double>(),
            j.at("B4").get<double>()};
  r.rouge = j.at("R").get<double>();
  r.cider = j.at("C").get<double>();
  r.div1 = j.at("Div1").get<double>();
  r.div2 = j.at("Div2").get<double>();
  r.sen_pct = j.at("SEN_pct").get<double>();
  r.sp = j.at("SP").get<double>();
  r.sr = j.at("SR").get<double>();
  r.n = j.at("n").get<int>();
  r.oracle = j.at("oracle").get<bool>();
  return r;
}

std::string render_report_table(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::size_t label_width = 5;
  for (const auto& [label, r] : rows) label_width = std::max(label_width, label.size());

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %6s %6s %6s %6s %6s %6s %4s %6s %6s %6s %6s %6s\n",
                static_cast<int>(label_width), "run", "B1", "B2", "B3", "B4", "R", "C", "M",
                "%SEN", "SP", "SR", "Div-1", "Div-2");
  out += buf;
  for (const auto& [label, r] : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%-*s %6.3f %6.3f %6.3f %6.3f %6.3f %6.2f %4s %6.1f %6.3f %6.3f %6.3f %6.3f\n",
                  static_cast<int>(label_width), label.c_str(), r.bleu[0], r.bleu[1], r.bleu[2],
                  r.bleu[3], r.rouge, r.cider, "n/a", r.sen_pct, r.sp, r.sr, r.div1, r.div2);
    out += buf;
  }
  return out;
}

}  // namespace stylecap::metrics
