#include "hodge/spectra.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>

namespace hodge::spectra {

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Absolute ? "absolute" : "relative";
}

namespace {

SpMat select_submatrix(const SpMat& a, const std::vector<Index>& rows,
                       const std::vector<Index>& cols, Index nrows, Index ncols) {
  std::vector<Index> rmap(static_cast<size_t>(nrows), -1), cmap(static_cast<size_t>(ncols), -1);
  for (size_t i = 0; i < rows.size(); ++i) rmap[static_cast<size_t>(rows[i])] = static_cast<Index>(i);
  for (size_t i = 0; i < cols.size(); ++i) cmap[static_cast<size_t>(cols[i])] = static_cast<Index>(i);
  std::vector<Triplet> trips;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMat::InnerIterator it(a, k); it; ++it) {
      Index r = rmap[static_cast<size_t>(it.row())];
      Index c = cmap[static_cast<size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.push_back({static_cast<int>(r), static_cast<int>(c), it.value()});
    }
  SpMat out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMatI select_submatrix_int(const SpMatI& a, const std::vector<Index>& rows,
                            const std::vector<Index>& cols, Index nrows, Index ncols) {
  std::vector<Index> rmap(static_cast<size_t>(nrows), -1), cmap(static_cast<size_t>(ncols), -1);
  for (size_t i = 0; i < rows.size(); ++i) rmap[static_cast<size_t>(rows[i])] = static_cast<Index>(i);
  for (size_t i = 0; i < cols.size(); ++i) cmap[static_cast<size_t>(cols[i])] = static_cast<Index>(i);
  std::vector<TripletI> trips;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMatI::InnerIterator it(a, k); it; ++it) {
      Index r = rmap[static_cast<size_t>(it.row())];
      Index c = cmap[static_cast<size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.push_back({static_cast<int>(r), static_cast<int>(c), it.value()});
    }
  SpMatI out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<Index> complement(Index n, const std::vector<Index>& removed) {
  std::vector<char> gone(static_cast<size_t>(n), 0);
  for (Index r : removed) gone[static_cast<size_t>(r)] = 1;
  std::vector<Index> keep;
  keep.reserve(static_cast<size_t>(n) - removed.size());
  for (Index i = 0; i < n; ++i)
    if (!gone[static_cast<size_t>(i)]) keep.push_back(i);
  return keep;
}

std::vector<Index> identity_map(Index n) {
  std::vector<Index> v(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

/// M-orthogonal projector onto the complement of an exact kernel basis.
class KernelProjector {
public:
  KernelProjector(const SpMat& kernel_basis, const SpMat& mass)
      : z_(kernel_basis), mz_(mass * kernel_basis) {
    if (z_.cols() > 0) {
      MatX g = MatX(z_.transpose() * mz_);
      llt_.compute(g);
      if (llt_.info() != Eigen::Success)
        throw Error(ErrorKind::SolverFailure, "kernel Gram factorization failed");
    }
  }
  void apply(MatX& x) const {
    if (z_.cols() == 0) return;
    MatX coeff = llt_.solve(MatX(mz_.transpose() * x));
    x -= z_ * coeff;
  }
  void apply(VecX& x) const {
    if (z_.cols() == 0) return;
    VecX coeff = llt_.solve(VecX(mz_.transpose() * x));
    x -= z_ * coeff;
  }

private:
  SpMat z_, mz_;
  Eigen::LLT<MatX> llt_;
};

void m_orthonormalize(MatX& x, const SpMat& m, std::mt19937_64& rng,
                      const KernelProjector& proj) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    MatX gram = x.transpose() * (m * x);
    Eigen::LLT<MatX> llt(gram);
    if (llt.info() == Eigen::Success) {
      double dmin = llt.matrixL().toDenseMatrix().diagonal().minCoeff();
      double dmax = llt.matrixL().toDenseMatrix().diagonal().maxCoeff();
      if (dmin > 1e-10 * dmax) {
        x = llt.matrixL().solve(x.transpose()).transpose();
        return;
      }
    }
    // rank loss: refresh with random directions and retry
    std::normal_distribution<double> dist;
    for (Index j = 0; j < x.cols(); ++j)
      for (Index i = 0; i < x.rows(); ++i) x(i, j) += 1e-8 * dist(rng);
    proj.apply(x);
  }
  throw Error(ErrorKind::SolverFailure, "block orthonormalization broke down");
}

EigenSolveResult dense_solve(const GeneralizedEigenproblem& prob, Index k) {
  const Index n = prob.size();
  MatX kd = MatX(prob.stiffness);
  MatX md = MatX(prob.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatX> ges(kd, md,
                                                     Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success)
    throw Error(ErrorKind::SolverFailure, "dense generalized eigensolver failed");
  VecX w = ges.eigenvalues();
  const Index kd_exact = prob.kernel.dim;

  // kernel classification anchored to exact arithmetic
  double first_nonzero = (kd_exact < n) ? std::abs(w[kd_exact]) : 0.0;
  double thr = std::max(1e-8, 1e-6 * first_nonzero);
  Index below = 0;
  for (Index i = 0; i < n; ++i)
    if (w[i] < thr) ++below;
  if (below != kd_exact)
    throw Error(ErrorKind::KernelMismatch,
                "float kernel count " + std::to_string(below) + " != exact " +
                    std::to_string(kd_exact));

  EigenSolveResult res;
  res.kernel_dim = kd_exact;
  const Index avail = n - kd_exact;
  const Index k_eff = std::min(k, avail);
  res.truncated = k > avail;
  res.values = w.segment(kd_exact, k_eff);
  res.vectors = ges.eigenvectors().middleCols(kd_exact, k_eff);
  return res;
}

EigenSolveResult sparse_solve(const GeneralizedEigenproblem& prob, Index k,
                              const SolveOptions& opts) {
  const Index n = prob.size();
  const Index kd_exact = prob.kernel.dim;
  const Index avail = n - kd_exact;
  const Index k_eff = std::min(k, avail);

  EigenSolveResult res;
  res.kernel_dim = kd_exact;
  res.truncated = k > avail;
  if (k_eff <= 0) {
    res.values = VecX(0);
    res.vectors = MatX(n, 0);
    return res;
  }

  const SpMat& K = prob.stiffness;
  const SpMat& M = prob.mass;
  KernelProjector proj(prob.kernel.basis, M);

  // SPD shift: kernel directions are removed by the projector, so any s > 0
  // keeps the nonkernel ordering while making K + sM factorizable
  double trace_k = 0.0, trace_m = 0.0;
  for (Index i = 0; i < n; ++i) {
    trace_k += K.coeff(i, i);
    trace_m += M.coeff(i, i);
  }
  const double s = std::max(1e-10, 1e-3 * trace_k / std::max(trace_m, 1e-300));
  SpMat a = K + s * M;
  Eigen::SimplicialLDLT<SpMat> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw Error(ErrorKind::SolverFailure,
                "sparse factorization failed at shift " + std::to_string(s));

  const Index b = std::min<Index>(avail, k_eff + opts.block_extra);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> dist;
  MatX x(n, b);
  for (Index j = 0; j < b; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = dist(rng);
  proj.apply(x);
  m_orthonormalize(x, M, rng, proj);

  VecX theta = VecX::Zero(b);
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    MatX y = ldlt.solve(MatX(M * x));
    proj.apply(y);
    m_orthonormalize(y, M, rng, proj);
    MatX h = y.transpose() * (K * y);
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatX> es(h);
    if (es.info() != Eigen::Success)
      throw Error(ErrorKind::SolverFailure, "Rayleigh-Ritz eigensolver failed");
    x = y * es.eigenvectors();
    theta = es.eigenvalues();
    res.iterations = iter;

    bool converged = true;
    for (Index i = 0; i < k_eff && converged; ++i) {
      VecX kx = K * x.col(i);
      VecX mx = M * x.col(i);
      double rnorm = (kx - theta[i] * mx).norm();
      double scale = kx.norm() + std::abs(theta[i]) * mx.norm();
      converged = rnorm <= opts.tol * std::max(scale, 1e-300);
    }
    if (converged) break;
    if (iter == opts.max_iterations)
      throw Error(ErrorKind::SolverFailure,
                  "eigensolver did not converge in " + std::to_string(iter) + " iterations");
  }

  res.values = theta.head(k_eff);
  res.vectors = x.leftCols(k_eff);
  return res;
}

}  // namespace

GeneralizedEigenproblem assemble(const CochainComplex& cc, const ConformalField& f, int p,
                                 BoundaryCondition bc) {
  if (bc == BoundaryCondition::Relative)
    return assemble(cc, f, p, bc, boundary_skeleton_dofs(cc));
  return assemble(cc, f, p, bc, {});
}

GeneralizedEigenproblem assemble(const CochainComplex& cc, const ConformalField& f, int p,
                                 BoundaryCondition bc,
                                 const std::vector<std::vector<Index>>& boundary_dofs) {
  if (p < 0 || p >= cc.n)
    throw Error(ErrorKind::InvalidInput, "eigenproblem degree must lie in [0, n-1]");

  GeneralizedEigenproblem prob;
  prob.degree = p;
  prob.bc = bc;

  const SpMat m_p = mass_matrix(cc, f, p).matrix;
  const SpMat m_up = mass_matrix(cc, f, p + 1).matrix;
  const SpMat& d = cc.d[static_cast<size_t>(p)];
  const SpMatI& d_int = cc.d_int[static_cast<size_t>(p)];

  if (bc == BoundaryCondition::Absolute) {
    prob.dof_keep = identity_map(cc.count(p));
    prob.dof_keep_up = identity_map(cc.count(p + 1));
    prob.mass = m_p;
    prob.mass_up = m_up;
    prob.d_kept = d;
    prob.d_kept_int = d_int;
  } else {
    const auto& removed_p =
        static_cast<size_t>(p) < boundary_dofs.size() ? boundary_dofs[static_cast<size_t>(p)]
                                                      : std::vector<Index>{};
    const auto& removed_up = static_cast<size_t>(p + 1) < boundary_dofs.size()
                                 ? boundary_dofs[static_cast<size_t>(p + 1)]
                                 : std::vector<Index>{};
    prob.dof_keep = complement(cc.count(p), removed_p);
    prob.dof_keep_up = complement(cc.count(p + 1), removed_up);
    prob.mass = select_submatrix(m_p, prob.dof_keep, prob.dof_keep, cc.count(p), cc.count(p));
    prob.mass_up = select_submatrix(m_up, prob.dof_keep_up, prob.dof_keep_up, cc.count(p + 1),
                                    cc.count(p + 1));
    prob.d_kept = select_submatrix(d, prob.dof_keep_up, prob.dof_keep, cc.count(p + 1), cc.count(p));
    prob.d_kept_int = select_submatrix_int(d_int, prob.dof_keep_up, prob.dof_keep, cc.count(p + 1),
                                           cc.count(p));
  }
  prob.stiffness = SpMat(prob.d_kept.transpose() * prob.mass_up * prob.d_kept);
  SpMat st = SpMat(prob.stiffness.transpose());
  prob.stiffness = 0.5 * (prob.stiffness + st);
  prob.kernel = kernel_of(prob.d_kept_int, static_cast<Index>(prob.dof_keep.size()));
  return prob;
}

EigenSolveResult solve_coexact(const GeneralizedEigenproblem& prob, Index k,
                               const SolveOptions& opts) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "k must be >= 0");
  if (prob.size() <= opts.dense_threshold) return dense_solve(prob, k);
  return sparse_solve(prob, k, opts);
}

std::vector<Cluster> cluster_multiplicities(const VecX& eigenvalues, double rel_tol) {
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "cluster tolerance must be positive");
  std::vector<Cluster> clusters;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues[i];
    if (i > 0 && v < eigenvalues[i - 1] * (1.0 - 1e-12) - 1e-300)
      throw Error(ErrorKind::InvalidInput, "eigenvalues must be ascending");
    if (!clusters.empty()) {
      Cluster& c = clusters.back();
      if (v - eigenvalues[i - 1] <= rel_tol * std::abs(c.value)) {
        c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
        c.multiplicity += 1;
        continue;
      }
    }
    clusters.push_back({v, 1});
  }
  return clusters;
}

SpectrumReport coexact_spectrum(const GeneralizedEigenproblem& prob, Index k,
                                double cluster_rel_tol, const SolveOptions& opts,
                                ReportMetadata metadata) {
  EigenSolveResult solve = solve_coexact(prob, k, opts);
  SpectrumReport rep;
  rep.degree = prob.degree;
  rep.bc = prob.bc;
  rep.eigenvalues = solve.values;
  rep.clusters = cluster_multiplicities(solve.values, cluster_rel_tol);
  rep.kernel_dim = solve.kernel_dim;
  rep.truncated = solve.truncated;
  rep.metadata = std::move(metadata);
  return rep;
}

SpectrumReport full_spectrum(const CochainComplex& cc, const ConformalField& f, int p,
                             BoundaryCondition bc, Index k, double cluster_rel_tol,
                             const SolveOptions& opts, ReportMetadata metadata) {
  if (p < 0 || p > cc.n) throw Error(ErrorKind::InvalidInput, "degree outside [0, n]");

  std::vector<double> merged;
  bool truncated = false;
  Index rank_down = 0;
  Index closed_dim_p = 0;

  if (p < cc.n) {
    auto prob = assemble(cc, f, p, bc);
    auto up = solve_coexact(prob, k, opts);
    truncated |= up.truncated;
    closed_dim_p = up.kernel_dim;
    for (Index i = 0; i < up.values.size(); ++i) merged.push_back(up.values[i]);
  } else {
    // top degree: every kept cochain is closed
    closed_dim_p = cc.count(p);
    if (bc == BoundaryCondition::Relative)
      closed_dim_p -= static_cast<Index>(boundary_skeleton_dofs(cc)[static_cast<size_t>(p)].size());
  }
  if (p >= 1) {
    auto prob_down = assemble(cc, f, p - 1, bc);
    auto down = solve_coexact(prob_down, k, opts);
    truncated |= down.truncated;
    rank_down = static_cast<Index>(prob_down.dof_keep.size()) - down.kernel_dim;
    for (Index i = 0; i < down.values.size(); ++i) merged.push_back(down.values[i]);
  }

  std::sort(merged.begin(), merged.end());
  if (static_cast<Index>(merged.size()) > k) merged.resize(static_cast<size_t>(k));

  SpectrumReport rep;
  rep.degree = p;
  rep.bc = bc;
  rep.eigenvalues = Eigen::Map<const VecX>(merged.data(), static_cast<Index>(merged.size()));
  rep.clusters = cluster_multiplicities(rep.eigenvalues, cluster_rel_tol);
  rep.kernel_dim = closed_dim_p - rank_down;  // b_p
  rep.truncated = truncated;
  rep.metadata = std::move(metadata);
  return rep;
}

}  // namespace hodge::spectra
