#ifndef STYLECAP_LATENT_PCA_HPP_
#define STYLECAP_LATENT_PCA_HPP_

#include <vector>

#include "stylecap/common.hpp"

namespace stylecap::latent {

// Leading eigenvector of the covariance of the mean-centered rows (unit norm,
// sign fixed so the largest-magnitude entry is positive), by power iteration.
// Throws std::invalid_argument for fewer than 2 rows or rank-0 data.
Vec first_principal_component(const Mat& rows);

// The n coordinate indices with largest |loading| in the first principal
// component, in decreasing-loading order; equal loadings break toward the
// lower index.
std::vector<int> pca_principal_dims(const Mat& rows, int n);

}  // namespace stylecap::latent

#endif  // STYLECAP_LATENT_PCA_HPP_
