#ifndef STYLECAP_LATENT_GAUSSIAN_HPP_
#define STYLECAP_LATENT_GAUSSIAN_HPP_

#include "stylecap/common.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::latent {

struct GaussianParams {
  Vec mean;
  Vec log_var;  // per-dimension log sigma^2
};

GaussianParams isotropic_gaussian(const Vec& mean, double variance);

// KL(q || p) for diagonal q and an isotropic prior N(prior_mean, prior_var I):
// per dimension log(sigma_p / sigma_q) + (sigma_q^2 + (mu_q - mu_p)^2) /
// (2 sigma_p^2) - 1/2, summed. Nonnegative; zero iff q equals the prior.
double kl_gaussian(const GaussianParams& q, const Vec& prior_mean, double prior_var);

// Reparameterized draw mean + sigma * eps with eps standard normal, one rng
// call per dimension in index order.
Vec sample_gaussian(const GaussianParams& params, Rng& rng);

}  // namespace stylecap::latent

#endif  // STYLECAP_LATENT_GAUSSIAN_HPP_
