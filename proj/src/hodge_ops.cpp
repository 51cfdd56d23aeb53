#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <random>

#include "hodge/spectra.hpp"

namespace hodge::spectra {

namespace {

/// Solves K x = rhs subject to Z^T M x = 0 where span(Z) = ker K, via the
/// bordered system [[K, MZ], [(MZ)^T, 0]].
class BorderedSolver {
public:
  BorderedSolver(const SpMat& k, const SpMat& m, const SpMat& z) : n_(k.rows()), m_(z.cols()) {
    if (m_ == 0) {
      ldlt_.compute(k);
      if (ldlt_.info() != Eigen::Success)
        throw Error(ErrorKind::SolverFailure, "stiffness factorization failed");
      return;
    }
    SpMat mz = m * z;
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(k.nonZeros() + 2 * mz.nonZeros()));
    for (int c = 0; c < k.outerSize(); ++c)
      for (SpMat::InnerIterator it(k, c); it; ++it)
        trips.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
    for (int c = 0; c < mz.outerSize(); ++c)
      for (SpMat::InnerIterator it(mz, c); it; ++it) {
        trips.push_back({static_cast<int>(it.row()), static_cast<int>(n_ + it.col()), it.value()});
        trips.push_back({static_cast<int>(n_ + it.col()), static_cast<int>(it.row()), it.value()});
      }
    SpMat b(n_ + m_, n_ + m_);
    b.setFromTriplets(trips.begin(), trips.end());
    lu_.compute(b);
    if (lu_.info() != Eigen::Success)
      throw Error(ErrorKind::SolverFailure, "bordered factorization failed");
  }

  VecX solve(const VecX& rhs) const {
    if (m_ == 0) return ldlt_.solve(rhs);
    VecX full = VecX::Zero(n_ + m_);
    full.head(n_) = rhs;
    VecX sol = lu_.solve(full);
    return sol.head(n_);
  }

private:
  Index n_, m_;
  Eigen::SimplicialLDLT<SpMat> ldlt_;
  Eigen::SparseLU<SpMat> lu_;
};

double m_norm(const SpMat& m, const VecX& x) { return std::sqrt(std::max(0.0, x.dot(m * x))); }

}  // namespace

HodgeParts hodge_decompose(const CochainComplex& cc, const ConformalField& f, int p,
                           const Cochain& omega) {
  if (omega.degree != p || omega.values.size() != cc.count(p))
    throw Error(ErrorKind::InvalidInput, "cochain degree/carrier mismatch");

  const SpMat m_p = mass_matrix(cc, f, p).matrix;

  VecX exact = VecX::Zero(cc.count(p));
  if (p >= 1) {
    auto prob = assemble(cc, f, p - 1, BoundaryCondition::Absolute);
    BorderedSolver solver(prob.stiffness, prob.mass, prob.kernel.basis);
    VecX rhs = prob.d_kept.transpose() * (m_p * omega.values);
    VecX alpha = solver.solve(rhs);
    exact = prob.d_kept * alpha;
  }

  ClosedBasis z = closed_cochain_basis(cc, p);
  VecX closed = VecX::Zero(cc.count(p));
  if (z.dim > 0) {
    MatX g = MatX(z.basis.transpose() * (m_p * z.basis));
    Eigen::LLT<MatX> llt(g);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorKind::SolverFailure, "closed-basis Gram factorization failed");
    closed = z.basis * llt.solve(VecX(z.basis.transpose() * (m_p * omega.values)));
  }

  HodgeParts parts;
  parts.exact = {p, exact};
  parts.harmonic = {p, closed - exact};
  parts.coexact = {p, omega.values - closed};
  return parts;
}

Cochain minimal_primitive(const CochainComplex& cc, const ConformalField& f,
                          const Cochain& omega, double tol) {
  const int p = omega.degree - 1;
  if (omega.degree < 1 || omega.degree > cc.n || omega.values.size() != cc.count(omega.degree))
    throw Error(ErrorKind::InvalidInput, "primitive input must be a (p+1)-cochain, 1 <= p+1 <= n");

  auto prob = assemble(cc, f, p, BoundaryCondition::Absolute);
  const double omega_norm = m_norm(prob.mass_up, omega.values);
  if (omega_norm == 0.0) return {p, VecX::Zero(cc.count(p))};

  BorderedSolver solver(prob.stiffness, prob.mass, prob.kernel.basis);
  VecX rhs = prob.d_kept.transpose() * (prob.mass_up * omega.values);
  VecX phi = solver.solve(rhs);

  const double residual = m_norm(prob.mass_up, VecX(prob.d_kept * phi - omega.values)) / omega_norm;
  if (!(residual <= tol))
    throw Error(ErrorKind::NotExact,
                "cochain is not exact: primitive residual " + std::to_string(residual));
  return {p, phi};
}

MinMaxResult minmax_check(const GeneralizedEigenproblem& prob, Index i, Index trials,
                          unsigned long long seed) {
  const Index n = prob.size();
  if (n > 200)
    throw Error(ErrorKind::InvalidInput, "min-max oracle restricted to dimension <= 200");

  // coexact basis from M^{-1} d^T, M-orthonormalized; independent of the
  // eigensolver path
  MatX md = MatX(prob.mass);
  Eigen::LLT<MatX> mllt(md);
  if (mllt.info() != Eigen::Success)
    throw Error(ErrorKind::SolverFailure, "mass factorization failed");
  MatX cand = mllt.solve(MatX(prob.d_kept.transpose()));

  std::vector<VecX> basis;
  double max_norm = 0.0;
  for (Index c = 0; c < cand.cols(); ++c) max_norm = std::max(max_norm, cand.col(c).norm());
  for (Index c = 0; c < cand.cols(); ++c) {
    VecX v = cand.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const VecX& q : basis) v -= q.dot(md * v) * q;
    double nv = m_norm(prob.mass, v);
    if (nv > 1e-10 * std::max(max_norm, 1.0)) basis.push_back(v / nv);
  }
  const Index m = static_cast<Index>(basis.size());
  if (m != n - prob.kernel.dim)
    throw Error(ErrorKind::SolverFailure, "coexact basis rank mismatch in min-max oracle");
  if (i < 1 || i > m) throw Error(ErrorKind::InvalidInput, "min-max index out of range");

  MatX q(n, m);
  for (Index c = 0; c < m; ++c) q.col(c) = basis[static_cast<size_t>(c)];
  MatX g = q.transpose() * (prob.stiffness * q);
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatX> es(g);
  VecX mu = es.eigenvalues();

  MinMaxResult res;
  res.reference = mu;
  res.upper_bound_ok = true;
  res.best_trial = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  for (Index t = 0; t < trials; ++t) {
    MatX r(m, i);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < i; ++b) r(a, b) = dist(rng);
    MatX a = r.transpose() * g * r;
    a = 0.5 * (a + a.transpose()).eval();
    MatX b = r.transpose() * r;
    Eigen::GeneralizedSelfAdjointEigenSolver<MatX> small(a, b, Eigen::EigenvaluesOnly);
    const double value = small.eigenvalues().maxCoeff();
    res.best_trial = std::min(res.best_trial, value);
    if (value < mu[i - 1] * (1.0 - 1e-9) - 1e-12) res.upper_bound_ok = false;
  }

  MatX r = es.eigenvectors().leftCols(i);
  MatX a = r.transpose() * g * r;
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<MatX> small(a, MatX(r.transpose() * r),
                                                       Eigen::EigenvaluesOnly);
  res.achieved = small.eigenvalues().maxCoeff();
  return res;
}

}  // namespace hodge::spectra
