// Test-only oracles, independent of the library's solver paths.
#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "hodge/complex_data.hpp"
#include "hodge/conformal.hpp"
#include "hodge/meshgen.hpp"
#include "hodge/spectra.hpp"

namespace oracle {

using hodge::Index;
using hodge::MatX;
using hodge::SpMat;
using hodge::SpMatI;
using hodge::VecX;

/// Float rank via full-pivot LU; cross-checks the exact rational ranks.
inline Index dense_rank(const SpMatI& a) {
  MatX d = a.cast<double>().toDense();
  Eigen::FullPivLU<MatX> lu(d);
  lu.setThreshold(1e-9);
  return lu.rank();
}

/// Analytic discrete eigenvalues of the P1 pencil on a uniform circle of
/// circumference L with k edges: 6(1-cos t)/(h^2 (2+cos t)), t = 2 pi j / k.
inline std::vector<double> circle_p1_eigenvalues(int k, double circumference = 1.0) {
  const double h = circumference / k;
  std::vector<double> vals;
  for (int j = 1; j < k; ++j) {
    const double t = 2.0 * 3.14159265358979323846 * j / k;
    vals.push_back(6.0 * (1.0 - std::cos(t)) / (h * h * (2.0 + std::cos(t))));
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

/// Exact-(p+1)-form spectrum by a dense Gram route on im d: the quadratic
/// form |delta w|^2 over |w|^2 with delta = M_p^{-1} d^T M_{p+1}. Shares only
/// the coboundary with the pencil path.
inline VecX exact_upper_spectrum_dense(const hodge::spectra::GeneralizedEigenproblem& prob,
                                       Index k) {
  MatX mp = MatX(prob.mass);
  MatX mup = MatX(prob.mass_up);
  MatX d = MatX(prob.d_kept);
  Eigen::LLT<MatX> mllt(mp);

  // basis of im d via column-pivoted QR of d
  Eigen::ColPivHouseholderQR<MatX> qr(d);
  qr.setThreshold(1e-10);
  const Index r = qr.rank();
  MatX w = qr.householderQ() * MatX::Identity(d.rows(), r);

  MatX delta = mllt.solve(d.transpose() * (mup * w));  // M_p^{-1} d^T M_{p+1} W
  MatX a = delta.transpose() * mp * delta;
  MatX b = w.transpose() * mup * w;
  a = 0.5 * (a + a.transpose()).eval();
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<MatX> ges(a, b, Eigen::EigenvaluesOnly);
  VecX vals = ges.eigenvalues();
  return vals.head(std::min(k, vals.size()));
}

inline VecX random_vec(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  VecX v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline double m_norm(const SpMat& m, const VecX& x) { return std::sqrt(std::abs(x.dot(m * x))); }

}  // namespace oracle
