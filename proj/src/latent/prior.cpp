#include "stylecap/latent/prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stylecap/latent/pca.hpp"

namespace stylecap::latent {

double cluster_value(SentimentCluster c) {
  switch (c) {
    case SentimentCluster::negative: return -0.5;
    case SentimentCluster::neutral: return 0.0;
    case SentimentCluster::positive: return 0.5;
  }
  throw std::invalid_argument("cluster_value: invalid cluster");
}

SentimentCluster cluster_for(corpus::Sentiment s) {
  switch (s) {
    case corpus::Sentiment::positive: return SentimentCluster::positive;
    case corpus::Sentiment::negative: return SentimentCluster::negative;
    case corpus::Sentiment::neutral:
    case corpus::Sentiment::unlabeled: return SentimentCluster::neutral;
  }
  throw std::invalid_argument("cluster_for: invalid sentiment");
}

std::string to_string(SentimentCluster c) {
  switch (c) {
    case SentimentCluster::negative: return "negative";
    case SentimentCluster::neutral: return "neutral";
    case SentimentCluster::positive: return "positive";
  }
  throw std::invalid_argument("to_string: invalid cluster");
}

SentimentCluster cluster_from_string(const std::string& s) {
  if (s == "negative") return SentimentCluster::negative;
  if (s == "neutral") return SentimentCluster::neutral;
  if (s == "positive") return SentimentCluster::positive;
  throw std::invalid_argument("cluster_from_string: '" + s + "'");
}

AttributePrior init_sentiwordnet(const corpus::SentimentLexicon& lexicon,
                                 const std::map<int, std::string>& attribute_names, int z) {
  if (z < 1) throw std::invalid_argument("init_sentiwordnet: z < 1");
  AttributePrior prior;
  prior.z = z;
  prior.sigma2 = 1.0;
  for (const auto& [id, name] : attribute_names) {
    if (!lexicon.has(name)) {
      throw UnknownAttributeError("init_sentiwordnet: no lexicon score for '" + name + "'");
    }
    prior.means[id] = Vec::Constant(z, lexicon.score(name));
  }
  return prior;
}

AttributePrior init_sentiglove(const std::map<std::string, Vec>& glove,
                               const std::map<int, std::string>& attribute_names,
                               const corpus::SentimentLexicon& lexicon, int n, int z,
                               std::vector<std::string>* warnings) {
  if (z < 1) throw std::invalid_argument("init_sentiglove: z < 1");
  if (n < 1) throw std::invalid_argument("init_sentiglove: n < 1");
  if (attribute_names.empty()) throw std::invalid_argument("init_sentiglove: no attributes");

  Eigen::Index d = -1;
  for (const auto& [id, name] : attribute_names) {
    auto it = glove.find(name);
    if (it == glove.end()) {
      throw UnknownAttributeError("init_sentiglove: no embedding for '" + name + "'");
    }
    if (d < 0) d = it->second.size();
    if (it->second.size() != d) throw std::invalid_argument("init_sentiglove: ragged embeddings");
  }
  if (n > d) throw std::invalid_argument("init_sentiglove: n exceeds embedding dim");

  // The 20 attributes whose lexicon scores sit farthest from neutral pick the
  // coordinates; unscored attributes count as neutral.
  std::vector<std::pair<int, std::string>> ranked(attribute_names.begin(), attribute_names.end());
  auto extremeness = [&](const std::string& name) {
    return lexicon.has(name) ? std::abs(lexicon.score(name) - 0.5) : 0.0;
  };
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    return extremeness(a.second) > extremeness(b.second);
  });
  const std::size_t vote_count = std::min<std::size_t>(20, ranked.size());
  if (vote_count < 20 && warnings) {
    warnings->push_back("init_sentiglove: only " + std::to_string(vote_count) +
                        " attributes available for coordinate selection (wanted 20)");
  }

  Mat votes(static_cast<Eigen::Index>(vote_count), d);
  for (std::size_t r = 0; r < vote_count; ++r) {
    votes.row(static_cast<Eigen::Index>(r)) = glove.at(ranked[r].second).transpose();
  }
  const std::vector<int> dims = pca_principal_dims(votes, n);

  AttributePrior prior;
  prior.z = z;
  prior.sigma2 = 1.0;
  for (const auto& [id, name] : attribute_names) {
    const Vec& g = glove.at(name);
    Vec mu(z);
    for (int j = 0; j < z; ++j) mu[j] = g[dims[static_cast<std::size_t>(j % n)]];
    prior.means[id] = std::move(mu);
  }
  return prior;
}

Vec prior_mean(const Vec& alpha, const std::vector<std::vector<int>>& attribute_sets,
               const AttributePrior& prior, bool renormalize) {
  const std::size_t k = attribute_sets.size();
  if (static_cast<std::size_t>(alpha.size()) != k) {
    throw std::invalid_argument("prior_mean: alpha length does not match region count");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < -1e-12) throw std::invalid_argument("prior_mean: negative attention weight");
    total += alpha[i];
  }
  if (k > 0 && std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("prior_mean: attention weights must sum to 1");
  }

  Vec mu = Vec::Zero(prior.z);
  double mass = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    if (!attribute_sets[r].empty()) mass += alpha[static_cast<Eigen::Index>(r)];
  }
  if (mass <= 0.0) return mu;

  for (std::size_t r = 0; r < k; ++r) {
    const auto& ids = attribute_sets[r];
    if (ids.empty()) continue;
    Vec region_sum = Vec::Zero(prior.z);
    for (int id : ids) {
      auto it = prior.means.find(id);
      if (it == prior.means.end()) {
        throw UnknownAttributeError("prior_mean: no mean for attribute id " + std::to_string(id));
      }
      region_sum += it->second;
    }
    const double a = renormalize ? alpha[static_cast<Eigen::Index>(r)] / mass
                                 : alpha[static_cast<Eigen::Index>(r)];
    mu += (a / static_cast<double>(ids.size())) * region_sum;
  }
  return mu;
}

Vec sentiment_prior_mean(SentimentCluster c, int z) {
  if (z < 1) throw std::invalid_argument("sentiment_prior_mean: z < 1");
  return Vec::Constant(z, cluster_value(c));
}

}  // namespace stylecap::latent
