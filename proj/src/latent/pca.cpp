#include "stylecap/latent/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stylecap/rng.hpp"

namespace stylecap::latent {

Vec first_principal_component(const Mat& rows) {
  const Eigen::Index m = rows.rows();
  const Eigen::Index d = rows.cols();
  if (m < 2) throw std::invalid_argument("first_principal_component: need at least 2 rows");
  if (d < 1) throw std::invalid_argument("first_principal_component: need at least 1 column");

  const Mat centered = rows.rowwise() - rows.colwise().mean();
  const Mat cov = centered.transpose() * centered / static_cast<double>(m - 1);
  if (cov.cwiseAbs().maxCoeff() < 1e-14) {
    throw std::invalid_argument("first_principal_component: zero-variance data");
  }

  Rng rng(0x9e3779b97f4a7c15ull);
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.normal();
  v.normalize();

  for (int iter = 0; iter < 20000; ++iter) {
    Vec next = cov * v;
    const double norm = next.norm();
    if (norm < 1e-300) {
      throw std::invalid_argument("first_principal_component: degenerate iterate");
    }
    next /= norm;
    // Eigenvectors are sign-ambiguous; compare against both orientations.
    const double delta = std::min((next - v).norm(), (next + v).norm());
    v = next;
    if (delta < 1e-14) break;
  }

  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < d; ++i) {
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  }
  if (v[pivot] < 0.0) v = -v;
  return v;
}

std::vector<int> pca_principal_dims(const Mat& rows, int n) {
  if (n < 1 || n > rows.cols()) {
    throw std::invalid_argument("pca_principal_dims: n out of range");
  }
  const Vec pc = first_principal_component(rows);

  std::vector<int> idx(static_cast<std::size_t>(pc.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(pc[a]) > std::abs(pc[b]); });
  idx.resize(static_cast<std::size_t>(n));
  return idx;
}

}  // namespace stylecap::latent
