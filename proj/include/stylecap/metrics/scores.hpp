#ifndef STYLECAP_METRICS_SCORES_HPP_
#define STYLECAP_METRICS_SCORES_HPP_

#include <map>
#include <string>
#include <vector>

#include "stylecap/metrics/ngram.hpp"

namespace stylecap::metrics {

// Per-sentence clipped/total n-gram counts plus lengths; summing these over a
// corpus and finishing once gives corpus-level BLEU.
struct BleuStats {
  std::vector<long> clipped;  // one entry per order 1..max_n
  std::vector<long> total;
  long candidate_len = 0;
  long reference_len = 0;  // closest reference length, ties toward the shorter

  BleuStats& operator+=(const BleuStats& o);
};

BleuStats bleu_stats(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int max_n);

// B1..Bmax_n: geometric mean of modified precisions up to each order, times
// the brevity penalty; zero precisions are replaced by 1e-9. All-empty
// candidates give all zeros.
std::vector<double> bleu_from_stats(const BleuStats& stats);

std::vector<double> bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references,
                         int max_n = 4);

std::vector<double> corpus_bleu(const std::vector<TokenSeq>& candidates,
                                const std::vector<std::vector<TokenSeq>>& references, int max_n = 4);

// LCS F-measure, best reference wins.
double rouge_l(const TokenSeq& candidate, const std::vector<TokenSeq>& references,
               double beta = 1.2);

// TF-IDF n-gram cosine consensus; document frequencies come from the
// evaluation references themselves (an n-gram counts once per image), scores
// are 10 x the mean over orders 1..4 of the average cosine to the image's
// references. No length penalty.
class CiderScorer {
 public:
  explicit CiderScorer(const CaptionSets& references, int max_n = 4);

  double score(const std::string& image_id, const TokenSeq& candidate) const;

  // Mean per-image score; every candidate image must have references.
  double corpus_score(const std::map<std::string, TokenSeq>& candidates) const;

  int max_n() const { return max_n_; }

 private:
  struct TfIdfVec {
    std::vector<std::map<NGram, double>> weights;  // per order
    std::vector<double> norm;                      // per order
  };

  TfIdfVec vectorize(const TokenSeq& tokens) const;
  static double cosine(const TfIdfVec& a, const TfIdfVec& b, int order);

  int max_n_;
  std::map<NGram, long> document_frequency_;
  double log_num_images_;
  std::map<std::string, std::vector<TfIdfVec>> reference_vecs_;
};

// Distinct n-grams across the set divided by total words across the set; the
// per-caption-average variant averages the same ratio computed per caption.
double div_n(const std::vector<TokenSeq>& captions, int n, bool per_caption_average = false);

}  // namespace stylecap::metrics

#endif  // STYLECAP_METRICS_SCORES_HPP_
