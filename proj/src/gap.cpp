#include "hodge/gap.hpp"

#include <cmath>

namespace hodge::gap {

EigenspacePack restrict_form(const MatX& span, const SpMat& mass, const SpMat& form) {
  if (span.cols() == 0) throw Error(ErrorKind::InvalidInput, "empty span");
  MatX gram = span.transpose() * (mass * span);
  Eigen::LLT<MatX> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidInput, "span is numerically rank deficient");
  MatX basis = llt.matrixL().solve(span.transpose()).transpose();

  EigenspacePack pack;
  pack.basis = basis;
  pack.q = basis.transpose() * (form * basis);
  pack.q = 0.5 * (pack.q + pack.q.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatX> es(pack.q, Eigen::EigenvaluesOnly);
  pack.values = es.eigenvalues();
  return pack;
}

EigenspacePack pack_from_eigenpairs(const MatX& vectors, const VecX& values) {
  EigenspacePack pack;
  pack.basis = vectors;
  pack.values = values;
  pack.q = values.asDiagonal();
  return pack;
}

Isometry subspace_isometry(const EigenspacePack& e0, const EigenspacePack& e1, const SpMat& mass) {
  if (e0.basis.cols() != e1.basis.cols())
    throw Error(ErrorKind::InvalidInput, "eigenspace packs have different dimensions");
  if (e0.basis.rows() != e1.basis.rows())
    throw Error(ErrorKind::InvalidInput, "eigenspace packs live in different ambient spaces");

  // overlap in the M-inner product; projection coords of E0 onto E1 are W^T
  MatX w = e0.basis.transpose() * (mass * e1.basis);
  Eigen::JacobiSVD<MatX> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Isometry iso;
  iso.singular_values = svd.singularValues();
  for (Index i = 0; i < iso.singular_values.size(); ++i) {
    double c = std::min(1.0, std::max(-1.0, iso.singular_values[i]));
    iso.principal_angles.push_back(std::acos(c));
  }
  const double smin = iso.singular_values.minCoeff();
  iso.aligned = smin >= 0.5;
  if (!iso.aligned)
    throw Error(ErrorKind::SubspacesTooFar,
                "subspaces too far: smallest overlap singular value " + std::to_string(smin));
  iso.map = svd.matrixV() * svd.matrixU().transpose();  // polar factor of W^T
  return iso;
}

SpectralGapReport n_gap(const EigenspacePack& e0, const EigenspacePack& e1, const SpMat& mass) {
  Isometry iso = subspace_isometry(e0, e1, mass);
  MatX diff = iso.map.transpose() * e1.q * iso.map - e0.q;
  diff = 0.5 * (diff + diff.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatX> es(diff, Eigen::EigenvaluesOnly);
  SpectralGapReport rep;
  rep.gap = es.eigenvalues().cwiseAbs().maxCoeff();
  rep.aligned = iso.aligned;
  rep.principal_angles = iso.principal_angles;
  return rep;
}

bool check_star_hypothesis(const VecX& values, Index n, double eta, double bound) {
  if (n < 1 || values.size() < n + 1)
    throw Error(ErrorKind::InvalidInput, "need at least N+1 eigenvalues for hypothesis (*)");
  return values[n] >= values[n - 1] + eta && values[n] <= bound;
}

}  // namespace hodge::gap
