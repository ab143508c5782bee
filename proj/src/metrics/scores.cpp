#include "stylecap/metrics/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stylecap::metrics {

namespace {
constexpr double kPrecisionFloor = 1e-9;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  if (clipped.empty()) {
    clipped.assign(o.clipped.size(), 0);
    total.assign(o.total.size(), 0);
  }
  if (clipped.size() != o.clipped.size()) throw std::invalid_argument("BleuStats: order mismatch");
  for (std::size_t i = 0; i < clipped.size(); ++i) {
    clipped[i] += o.clipped[i];
    total[i] += o.total[i];
  }
  candidate_len += o.candidate_len;
  reference_len += o.reference_len;
  return *this;
}

BleuStats bleu_stats(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int max_n) {
  if (max_n < 1) throw std::invalid_argument("bleu_stats: max_n < 1");
  if (references.empty()) throw std::invalid_argument("bleu_stats: no references");

  BleuStats s;
  s.clipped.assign(static_cast<std::size_t>(max_n), 0);
  s.total.assign(static_cast<std::size_t>(max_n), 0);
  s.candidate_len = static_cast<long>(candidate.size());

  long best_len = static_cast<long>(references.front().size());
  for (const auto& r : references) {
    const long len = static_cast<long>(r.size());
    const long d = std::abs(len - s.candidate_len);
    const long best_d = std::abs(best_len - s.candidate_len);
    if (d < best_d || (d == best_d && len < best_len)) best_len = len;
  }
  s.reference_len = best_len;

  for (int n = 1; n <= max_n; ++n) {
    const auto cand_counts = ngram_counts(candidate, n);
    std::map<NGram, long> max_ref;
    for (const auto& r : references) {
      for (const auto& [g, c] : ngram_counts(r, n)) {
        auto it = max_ref.find(g);
        if (it == max_ref.end() || c > it->second) max_ref[g] = c;
      }
    }
    long clipped = 0, total = 0;
    for (const auto& [g, c] : cand_counts) {
      total += c;
      auto it = max_ref.find(g);
      if (it != max_ref.end()) clipped += std::min(c, it->second);
    }
    s.clipped[static_cast<std::size_t>(n - 1)] = clipped;
    s.total[static_cast<std::size_t>(n - 1)] = total;
  }
  return s;
}

std::vector<double> bleu_from_stats(const BleuStats& stats) {
  const int max_n = static_cast<int>(stats.clipped.size());
  std::vector<double> out(static_cast<std::size_t>(max_n), 0.0);
  if (stats.candidate_len == 0) return out;

  const double bp = stats.candidate_len >= stats.reference_len
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(stats.reference_len) /
                                             static_cast<double>(stats.candidate_len));
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const long total = stats.total[static_cast<std::size_t>(n - 1)];
    const long clipped = stats.clipped[static_cast<std::size_t>(n - 1)];
    const double p =
        (total > 0 && clipped > 0) ? static_cast<double>(clipped) / static_cast<double>(total)
                                   : kPrecisionFloor;
    log_sum += std::log(p);
    out[static_cast<std::size_t>(n - 1)] = bp * std::exp(log_sum / n);
  }
  return out;
}

std::vector<double> bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references,
                         int max_n) {
  return bleu_from_stats(bleu_stats(candidate, references, max_n));
}

std::vector<double> corpus_bleu(const std::vector<TokenSeq>& candidates,
                                const std::vector<std::vector<TokenSeq>>& references, int max_n) {
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("corpus_bleu: candidate/reference count mismatch");
  }
  if (candidates.empty()) throw std::invalid_argument("corpus_bleu: empty corpus");
  BleuStats acc;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    acc += bleu_stats(candidates[i], references[i], max_n);
  }
  return bleu_from_stats(acc);
}

namespace {

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double rouge_l(const TokenSeq& candidate, const std::vector<TokenSeq>& references, double beta) {
  if (references.empty()) throw std::invalid_argument("rouge_l: no references");
  if (candidate.empty()) return 0.0;
  double best = 0.0;
  for (const auto& ref : references) {
    if (ref.empty()) continue;
    const double lcs = static_cast<double>(lcs_length(candidate, ref));
    if (lcs == 0.0) continue;
    const double prec = lcs / static_cast<double>(candidate.size());
    const double rec = lcs / static_cast<double>(ref.size());
    const double f = (1.0 + beta * beta) * prec * rec / (rec + beta * beta * prec);
    best = std::max(best, f);
  }
  return best;
}

CiderScorer::CiderScorer(const CaptionSets& references, int max_n) : max_n_(max_n) {
  if (references.empty()) throw std::invalid_argument("CiderScorer: empty reference corpus");
  if (max_n < 1) throw std::invalid_argument("CiderScorer: max_n < 1");

  for (const auto& [image_id, refs] : references) {
    if (refs.empty()) {
      throw std::invalid_argument("CiderScorer: image '" + image_id + "' has no references");
    }
    std::map<NGram, long> seen;
    for (const auto& r : refs) {
      for (int n = 1; n <= max_n_; ++n) {
        for (const auto& [g, c] : ngram_counts(r, n)) seen[g] = 1;
      }
    }
    for (const auto& [g, one] : seen) document_frequency_[g] += one;
  }
  log_num_images_ = std::log(static_cast<double>(references.size()));

  for (const auto& [image_id, refs] : references) {
    auto& vecs = reference_vecs_[image_id];
    for (const auto& r : refs) vecs.push_back(vectorize(r));
  }
}

CiderScorer::TfIdfVec CiderScorer::vectorize(const TokenSeq& tokens) const {
  TfIdfVec v;
  v.weights.resize(static_cast<std::size_t>(max_n_));
  v.norm.assign(static_cast<std::size_t>(max_n_), 0.0);
  for (int n = 1; n <= max_n_; ++n) {
    auto& w = v.weights[static_cast<std::size_t>(n - 1)];
    double sq = 0.0;
    for (const auto& [g, c] : ngram_counts(tokens, n)) {
      auto it = document_frequency_.find(g);
      const double df = it == document_frequency_.end() ? 1.0 : static_cast<double>(it->second);
      const double idf = log_num_images_ - std::log(std::max(1.0, df));
      const double weight = static_cast<double>(c) * idf;
      w[g] = weight;
      sq += weight * weight;
    }
    v.norm[static_cast<std::size_t>(n - 1)] = std::sqrt(sq);
  }
  return v;
}

double CiderScorer::cosine(const TfIdfVec& a, const TfIdfVec& b, int order) {
  const auto& wa = a.weights[static_cast<std::size_t>(order)];
  const auto& wb = b.weights[static_cast<std::size_t>(order)];
  const double na = a.norm[static_cast<std::size_t>(order)];
  const double nb = b.norm[static_cast<std::size_t>(order)];
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  double dot = 0.0;
  for (const auto& [g, w] : wa) {
    auto it = wb.find(g);
    if (it != wb.end()) dot += w * it->second;
  }
  return dot / (na * nb);
}

double CiderScorer::score(const std::string& image_id, const TokenSeq& candidate) const {
  auto it = reference_vecs_.find(image_id);
  if (it == reference_vecs_.end()) {
    throw std::invalid_argument("CiderScorer: unknown image '" + image_id + "'");
  }
  const TfIdfVec cand = vectorize(candidate);
  double sum_over_orders = 0.0;
  for (int n = 0; n < max_n_; ++n) {
    double sim = 0.0;
    for (const auto& ref : it->second) sim += cosine(cand, ref, n);
    sum_over_orders += sim / static_cast<double>(it->second.size());
  }
  return 10.0 * sum_over_orders / static_cast<double>(max_n_);
}

double CiderScorer::corpus_score(const std::map<std::string, TokenSeq>& candidates) const {
  if (candidates.empty()) throw std::invalid_argument("CiderScorer: no candidates");
  double sum = 0.0;
  for (const auto& [image_id, cand] : candidates) sum += score(image_id, cand);
  return sum / static_cast<double>(candidates.size());
}

double div_n(const std::vector<TokenSeq>& captions, int n, bool per_caption_average) {
  if (captions.empty()) throw std::invalid_argument("div_n: empty caption set");
  if (n < 1) throw std::invalid_argument("div_n: n < 1");

  if (per_caption_average) {
    double sum = 0.0;
    for (const auto& c : captions) {
      if (c.empty()) continue;
      std::map<NGram, long> distinct = ngram_counts(c, n);
      sum += static_cast<double>(distinct.size()) / static_cast<double>(c.size());
    }
    return sum / static_cast<double>(captions.size());
  }

  std::map<NGram, long> distinct;
  long words = 0;
  for (const auto& c : captions) {
    words += static_cast<long>(c.size());
    for (const auto& [g, cnt] : ngram_counts(c, n)) distinct[g] += cnt;
  }
  if (words == 0) return 0.0;
  return static_cast<double>(distinct.size()) / static_cast<double>(words);
}

}  // namespace stylecap::metrics
