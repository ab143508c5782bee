#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/corpus/io.hpp"
#include "stylecap/latent/gaussian.hpp"
#include "stylecap/latent/pca.hpp"
#include "stylecap/latent/prior.hpp"
#include "stylecap/latent/prior_io.hpp"
#include "stylecap/rng.hpp"

using namespace stylecap;
using namespace stylecap::latent;

namespace {

std::string data_path(const std::string& name) {
  return std::string(STYLECAP_DATA_DIR) + "/" + name;
}

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double log_density_diag(const Vec& x, const Vec& mean, const Vec& log_var) {
  double lp = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double var = std::exp(log_var[i]);
    const double d = x[i] - mean[i];
    lp += -0.5 * (std::log(2.0 * M_PI) + log_var[i] + d * d / var);
  }
  return lp;
}

}  // namespace

TEST_CASE("kl_gaussian vanishes exactly when q equals the prior") {
  GaussianParams q;
  q.mean = vec({0.3, -0.7, 1.1});
  q.log_var = Vec::Constant(3, std::log(2.5));
  CHECK(std::abs(kl_gaussian(q, q.mean, 2.5)) <= 1e-15);
}

TEST_CASE("kl_gaussian matches the closed form on a hand-checked instance") {
  GaussianParams q;
  q.mean = vec({1.0, -1.0});
  q.log_var = vec({std::log(0.5), std::log(2.0)});
  // Per dimension 0.5 (log(vp/vq) + (vq + dmu^2)/vp - 1); the two log terms
  // cancel here and the value is exactly 0.25 + 1.0.
  CHECK(kl_gaussian(q, Vec::Zero(2), 1.0) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("kl_gaussian agrees with a Monte-Carlo estimate of the divergence") {
  GaussianParams q;
  q.mean = vec({0.8, -0.4, 0.2});
  q.log_var = vec({std::log(0.6), std::log(1.7), std::log(1.0)});
  const Vec prior_mean_vec = vec({0.1, 0.3, -0.5});
  const double prior_var = 1.3;

  const double analytic = kl_gaussian(q, prior_mean_vec, prior_var);

  const Vec prior_log_var = Vec::Constant(3, std::log(prior_var));
  Rng rng(424242);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec x = sample_gaussian(q, rng);
    const double ratio =
        log_density_diag(x, q.mean, q.log_var) - log_density_diag(x, prior_mean_vec, prior_log_var);
    sum += ratio;
    sum_sq += ratio * ratio;
  }
  const double mc = sum / n;
  const double var = sum_sq / n - mc * mc;
  const double se = std::sqrt(var / n);
  CHECK(std::abs(mc - analytic) < 4.0 * se);
  CHECK(analytic >= 0.0);
}

TEST_CASE("isotropic_gaussian broadcasts the variance") {
  const auto g = isotropic_gaussian(vec({1.0, 2.0}), 0.25);
  CHECK(g.mean == vec({1.0, 2.0}));
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(g.log_var[i] == doctest::Approx(std::log(0.25)));
}

TEST_CASE("sample_gaussian replays per seed and has the requested moments") {
  GaussianParams q;
  q.mean = vec({2.0, -3.0});
  q.log_var = vec({std::log(4.0), std::log(0.09)});

  Rng r1(5), r2(5);
  CHECK(sample_gaussian(q, r1) == sample_gaussian(q, r2));

  Rng rng(99);
  Vec mean = Vec::Zero(2), m2 = Vec::Zero(2);
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const Vec x = sample_gaussian(q, rng);
    mean += x;
    m2 += x.cwiseProduct(x);
  }
  mean /= n;
  m2 /= n;
  CHECK(mean[0] == doctest::Approx(2.0).epsilon(0.02));
  CHECK(mean[1] == doctest::Approx(-3.0).epsilon(0.01));
  CHECK(m2[0] - mean[0] * mean[0] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(m2[1] - mean[1] * mean[1] == doctest::Approx(0.09).epsilon(0.05));
}

TEST_CASE("first_principal_component agrees with a dense eigensolver") {
  Rng rng(2718);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 20; ++trial) {
    const Eigen::Index m = 4 + static_cast<Eigen::Index>(rng.uniform_index(8));
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.uniform_index(5));
    Mat rows(m, d);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < d; ++j) rows(i, j) = rng.normal() * (1.0 + static_cast<double>(j));

    const Mat centered = rows.rowwise() - rows.colwise().mean();
    const Mat cov = centered.transpose() * centered / static_cast<double>(m - 1);
    Eigen::SelfAdjointEigenSolver<Mat> solver(cov);
    const Vec evals = solver.eigenvalues();
    // Skip near-degenerate draws; power iteration cannot separate those.
    if (evals[d - 1] - evals[d - 2] < 0.05 * evals[d - 1]) continue;
    ++tested;

    const Vec expected = solver.eigenvectors().col(d - 1);
    const Vec pc = first_principal_component(rows);
    CHECK(pc.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pc.dot(expected)) == doctest::Approx(1.0).epsilon(1e-8));

    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(pc[i]) > std::abs(pc[pivot])) pivot = i;
    CHECK(pc[pivot] > 0.0);
  }
  CHECK(tested == 20);
}

TEST_CASE("first_principal_component rejects degenerate input") {
  Mat constant = Mat::Ones(5, 3) * 2.0;
  CHECK_THROWS_AS(first_principal_component(constant), std::invalid_argument);
  CHECK_THROWS_AS(first_principal_component(Mat::Random(1, 3)), std::invalid_argument);
}

TEST_CASE("pca_principal_dims orders by loading and breaks ties low") {
  // Columns 0 and 1 are identical, column 2 is noise an order smaller.
  Rng rng(13);
  Mat rows(40, 3);
  for (Eigen::Index i = 0; i < 40; ++i) {
    const double main = rng.normal();
    rows(i, 0) = main;
    rows(i, 1) = main;
    rows(i, 2) = 0.05 * rng.normal();
  }
  const auto dims = pca_principal_dims(rows, 3);
  REQUIRE(dims.size() == 3);
  CHECK(dims[0] == 0);
  CHECK(dims[1] == 1);
  CHECK(dims[2] == 2);
  CHECK_THROWS_AS(pca_principal_dims(rows, 4), std::invalid_argument);
  CHECK_THROWS_AS(pca_principal_dims(rows, 0), std::invalid_argument);
}

TEST_CASE("init_sentiwordnet broadcasts lexicon scores and flags unknowns") {
  corpus::SentimentLexicon lexicon;
  lexicon.scores = {{"lovely", 0.9}, {"ugly", 0.1}};
  const std::map<int, std::string> names = {{4, "lovely"}, {9, "ugly"}};
  const auto prior = init_sentiwordnet(lexicon, names, 5);
  CHECK(prior.z == 5);
  CHECK(prior.sigma2 == doctest::Approx(1.0));
  REQUIRE(prior.means.size() == 2);
  CHECK(prior.means.at(4) == Vec::Constant(5, 0.9));
  CHECK(prior.means.at(9) == Vec::Constant(5, 0.1));

  const std::map<int, std::string> bad = {{0, "zebra"}};
  CHECK_THROWS_AS(init_sentiwordnet(lexicon, bad, 5), UnknownAttributeError);
}

TEST_CASE("init_sentiglove picks sentiment-informative embedding coordinates") {
  const auto glove = corpus::read_glove_text(data_path("glove_toy.txt"));
  const auto lexicon = corpus::read_lexicon_tsv(data_path("lexicon.tsv"));
  std::map<int, std::string> names;
  int id = 0;
  for (const auto& [word, g] : glove) names[id++] = word;
  REQUIRE(names.size() == 30);

  std::vector<std::string> warnings;
  const auto prior = init_sentiglove(glove, names, lexicon, 2, 5, &warnings);
  CHECK(warnings.empty());
  CHECK(prior.z == 5);
  REQUIRE(prior.means.size() == 30);

  // The planted signal lives in embedding coordinates 1 and 4; each mean is
  // that coordinate pair tiled to length z.
  int lovely_id = -1, gloomy_id = -1;
  for (const auto& [i, w] : names) {
    if (w == "lovely") lovely_id = i;
    if (w == "gloomy") gloomy_id = i;
  }
  const Vec& lovely = prior.means.at(lovely_id);
  CHECK(lovely == vec({0.8102, 0.5294, 0.8102, 0.5294, 0.8102}));
  const Vec& gloomy = prior.means.at(gloomy_id);
  CHECK(gloomy == vec({-0.9771, -0.412, -0.9771, -0.412, -0.9771}));
}

TEST_CASE("init_sentiglove warns below twenty voters and flags missing embeddings") {
  const auto glove = corpus::read_glove_text(data_path("glove_toy.txt"));
  const auto lexicon = corpus::read_lexicon_tsv(data_path("lexicon.tsv"));
  const std::map<int, std::string> few = {
      {0, "lovely"}, {1, "gloomy"}, {2, "great"}, {3, "ugly"}, {4, "furry"}};
  std::vector<std::string> warnings;
  const auto prior = init_sentiglove(glove, few, lexicon, 2, 4, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(prior.means.size() == 5);

  const std::map<int, std::string> missing = {{0, "lovely"}, {1, "zebra"}};
  CHECK_THROWS_AS(init_sentiglove(glove, missing, lexicon, 2, 4, nullptr), UnknownAttributeError);
}

namespace {

// Mirror of the structured prior mean, written as the plain nested loop.
Vec prior_mean_oracle(const Vec& alpha, const std::vector<std::vector<int>>& sets,
                      const AttributePrior& prior, bool renormalize) {
  double mass = 0.0;
  for (std::size_t r = 0; r < sets.size(); ++r) {
    if (!sets[r].empty()) mass += alpha[static_cast<Eigen::Index>(r)];
  }
  Vec mu = Vec::Zero(prior.z);
  if (mass <= 0.0) return mu;
  for (std::size_t r = 0; r < sets.size(); ++r) {
    if (sets[r].empty()) continue;
    double a = alpha[static_cast<Eigen::Index>(r)];
    if (renormalize) a /= mass;
    for (int id : sets[r]) {
      for (int j = 0; j < prior.z; ++j) {
        mu[j] += a / static_cast<double>(sets[r].size()) * prior.means.at(id)[j];
      }
    }
  }
  return mu;
}

}  // namespace

TEST_CASE("prior_mean matches the nested-loop oracle across random instances") {
  Rng rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const int z = 2 + static_cast<int>(rng.uniform_index(6));
    const int num_attributes = 3 + static_cast<int>(rng.uniform_index(5));
    AttributePrior prior;
    prior.z = z;
    for (int id = 0; id < num_attributes; ++id) {
      Vec mu(z);
      for (int j = 0; j < z; ++j) mu[j] = rng.uniform(-2.0, 2.0);
      prior.means[id] = mu;
    }

    const std::size_t k = 1 + rng.uniform_index(5);
    std::vector<std::vector<int>> sets(k);
    for (auto& s : sets) {
      const std::size_t j = rng.uniform_index(4);  // 0 leaves the region empty
      for (std::size_t a = 0; a < j; ++a) {
        s.push_back(static_cast<int>(rng.uniform_index(static_cast<std::size_t>(num_attributes))));
      }
    }
    Vec alpha(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha[i] = rng.uniform() + 1e-3;
    alpha /= alpha.sum();

    for (bool renorm : {true, false}) {
      const Vec got = prior_mean(alpha, sets, prior, renorm);
      const Vec want = prior_mean_oracle(alpha, sets, prior, renorm);
      REQUIRE(got.size() == want.size());
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("prior_mean stays inside the convex hull bounds of the attribute means") {
  Rng rng(808);
  AttributePrior prior;
  prior.z = 3;
  for (int id = 0; id < 6; ++id) {
    Vec mu(3);
    for (int j = 0; j < 3; ++j) mu[j] = rng.uniform(-1.0, 1.0);
    prior.means[id] = mu;
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<int>> sets(3);
    for (auto& s : sets) {
      const std::size_t j = 1 + rng.uniform_index(3);
      for (std::size_t a = 0; a < j; ++a) s.push_back(static_cast<int>(rng.uniform_index(6)));
    }
    Vec alpha(3);
    for (int i = 0; i < 3; ++i) alpha[i] = rng.uniform() + 1e-3;
    alpha /= alpha.sum();

    Vec lo = Vec::Constant(3, 1e9), hi = Vec::Constant(3, -1e9);
    for (const auto& [id, mu] : prior.means) {
      lo = lo.cwiseMin(mu);
      hi = hi.cwiseMax(mu);
    }
    const Vec got = prior_mean(alpha, sets, prior);
    for (int j = 0; j < 3; ++j) {
      CHECK(got[j] >= lo[j] - 1e-12);
      CHECK(got[j] <= hi[j] + 1e-12);
    }
  }
}

TEST_CASE("prior_mean is invariant under joint region permutation") {
  AttributePrior prior;
  prior.z = 4;
  prior.means[0] = vec({1.0, 0.0, -1.0, 0.5});
  prior.means[1] = vec({0.2, 0.4, 0.6, 0.8});
  prior.means[2] = vec({-0.3, 0.9, 0.1, -0.7});

  const std::vector<std::vector<int>> sets = {{0, 1}, {}, {2}, {1}};
  const Vec alpha = vec({0.4, 0.3, 0.2, 0.1});
  const Vec base = prior_mean(alpha, sets, prior);

  const std::vector<std::size_t> perm = {2, 0, 3, 1};
  std::vector<std::vector<int>> sets_p(4);
  Vec alpha_p(4);
  for (std::size_t i = 0; i < 4; ++i) {
    sets_p[i] = sets[perm[i]];
    alpha_p[static_cast<Eigen::Index>(i)] = alpha[static_cast<Eigen::Index>(perm[i])];
  }
  const Vec permuted = prior_mean(alpha_p, sets_p, prior);
  CHECK((base - permuted).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("prior_mean handles empty regions and validates alpha") {
  AttributePrior prior;
  prior.z = 2;
  prior.means[0] = vec({1.0, 2.0});

  const Vec alpha = vec({0.5, 0.5});
  CHECK(prior_mean(alpha, {{}, {}}, prior) == Vec::Zero(2));
  // One annotated region takes all renormalized mass.
  CHECK(prior_mean(alpha, {{0}, {}}, prior) == vec({1.0, 2.0}));
  // Without renormalization the raw attention weight stays.
  CHECK(prior_mean(alpha, {{0}, {}}, prior, false) == vec({0.5, 1.0}));

  CHECK_THROWS_AS(prior_mean(vec({0.5}), {{0}, {}}, prior), std::invalid_argument);
  CHECK_THROWS_AS(prior_mean(vec({0.9, 0.3}), {{0}, {}}, prior), std::invalid_argument);
  CHECK_THROWS_AS(prior_mean(vec({1.5, -0.5}), {{0}, {}}, prior), std::invalid_argument);
  CHECK_THROWS_AS(prior_mean(alpha, {{7}, {}}, prior), UnknownAttributeError);
}

TEST_CASE("sentiment clusters map to fixed broadcast values") {
  CHECK(cluster_value(SentimentCluster::negative) == doctest::Approx(-0.5));
  CHECK(cluster_value(SentimentCluster::neutral) == doctest::Approx(0.0));
  CHECK(cluster_value(SentimentCluster::positive) == doctest::Approx(0.5));
  CHECK(sentiment_prior_mean(SentimentCluster::positive, 3) == Vec::Constant(3, 0.5));
  CHECK(cluster_for(corpus::Sentiment::positive) == SentimentCluster::positive);
  CHECK(cluster_for(corpus::Sentiment::negative) == SentimentCluster::negative);
  CHECK(cluster_for(corpus::Sentiment::neutral) == SentimentCluster::neutral);
  CHECK(cluster_for(corpus::Sentiment::unlabeled) == SentimentCluster::neutral);
  CHECK(cluster_from_string(to_string(SentimentCluster::negative)) == SentimentCluster::negative);
}

TEST_CASE("attribute prior json round-trips exactly") {
  AttributePrior prior;
  prior.z = 3;
  prior.sigma2 = 0.125;
  prior.means[2] = vec({0.1, -0.2, 0.3});
  prior.means[7] = vec({1.0 / 3.0, 2.0 / 7.0, -5.0 / 11.0});

  const auto j = prior_to_json(prior);
  const auto back = prior_from_json(j);
  CHECK(back.z == prior.z);
  CHECK(back.sigma2 == prior.sigma2);
  REQUIRE(back.means.size() == 2);
  CHECK(back.means.at(2) == prior.means.at(2));
  CHECK(back.means.at(7) == prior.means.at(7));

  const std::string path =
      (std::filesystem::temp_directory_path() / "stylecap_test_prior.json").string();
  write_prior_json(path, prior);
  const auto from_file = read_prior_json(path);
  CHECK(from_file.means.at(7) == prior.means.at(7));
  CHECK(from_file.sigma2 == prior.sigma2);
  std::remove(path.c_str());
}
