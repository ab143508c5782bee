#ifndef STYLECAP_LATENT_PRIOR_HPP_
#define STYLECAP_LATENT_PRIOR_HPP_

#include <map>
#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/corpus/types.hpp"

namespace stylecap::latent {

// Mixture components of the structured latent prior: one mean per attribute
// category, with a variance shared by all of them.
struct AttributePrior {
  std::map<int, Vec> means;  // attribute_id -> mu_i, all of length z
  double sigma2 = 1.0;
  int z = 0;
};

enum class SentimentCluster { negative, neutral, positive };

double cluster_value(SentimentCluster c);  // -0.5, 0.0, +0.5
SentimentCluster cluster_for(corpus::Sentiment s);
std::string to_string(SentimentCluster c);
SentimentCluster cluster_from_string(const std::string& s);

// Every attribute mean is the word's lexicon score broadcast to z dims.
// Attributes missing from the lexicon raise UnknownAttributeError.
AttributePrior init_sentiwordnet(const corpus::SentimentLexicon& lexicon,
                                 const std::map<int, std::string>& attribute_names, int z);

// Attribute means are sentiment-informative word-embedding coordinates: the
// 20 attributes with most extreme lexicon scores vote, via the first
// principal component of their embeddings, for the n coordinates kept; each
// attribute's kept coordinates are then tiled by repetition to length z (the
// last repeat truncated). Fewer than 20 attributes: all vote, with a warning.
AttributePrior init_sentiglove(const std::map<std::string, Vec>& glove,
                               const std::map<int, std::string>& attribute_names,
                               const corpus::SentimentLexicon& lexicon, int n, int z,
                               std::vector<std::string>* warnings = nullptr);

// Attention-weighted average of per-region attribute-mean averages:
//   mu_t = sum_k (alpha_k / J_k) sum_{i in A_k} mu_i
// Regions with no attributes are dropped and the remaining alpha renormalized
// to sum 1 (set renormalize = false to keep raw alpha, empty regions
// contributing zero). All regions empty gives the zero vector.
Vec prior_mean(const Vec& alpha, const std::vector<std::vector<int>>& attribute_sets,
               const AttributePrior& prior, bool renormalize = true);

// Constant cluster-value vector; the same at every decoding step.
Vec sentiment_prior_mean(SentimentCluster c, int z);

}  // namespace stylecap::latent

#endif  // STYLECAP_LATENT_PRIOR_HPP_
