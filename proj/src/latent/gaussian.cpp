#include "stylecap/latent/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace stylecap::latent {

GaussianParams isotropic_gaussian(const Vec& mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("isotropic_gaussian: variance must be positive");
  GaussianParams g;
  g.mean = mean;
  g.log_var = Vec::Constant(mean.size(), std::log(variance));
  return g;
}

double kl_gaussian(const GaussianParams& q, const Vec& prior_mean, double prior_var) {
  if (!(prior_var > 0.0)) throw std::invalid_argument("kl_gaussian: prior variance must be positive");
  if (q.mean.size() != q.log_var.size() || q.mean.size() != prior_mean.size()) {
    throw std::invalid_argument("kl_gaussian: dimension mismatch");
  }
  const double log_prior_var = std::log(prior_var);
  double kl = 0.0;
  for (Eigen::Index i = 0; i < q.mean.size(); ++i) {
    const double lv = q.log_var[i];
    if (!std::isfinite(lv)) throw std::invalid_argument("kl_gaussian: non-finite log variance");
    const double var_q = std::exp(lv);
    const double dmu = q.mean[i] - prior_mean[i];
    kl += 0.5 * (log_prior_var - lv) + (var_q + dmu * dmu) / (2.0 * prior_var) - 0.5;
  }
  return kl;
}

Vec sample_gaussian(const GaussianParams& params, Rng& rng) {
  if (params.mean.size() != params.log_var.size()) {
    throw std::invalid_argument("sample_gaussian: dimension mismatch");
  }
  Vec z(params.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z[i] = params.mean[i] + std::exp(0.5 * params.log_var[i]) * rng.normal();
  }
  return z;
}

}  // namespace stylecap::latent
