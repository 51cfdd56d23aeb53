#pragma once

#include <vector>

#include "hodge/types.hpp"

namespace hodge::gap {

/// An N-dimensional sum of eigenspaces: M-orthonormal basis, the N smallest
/// eigenvalues, and the quadratic form restricted to the span (expressed in
/// the basis coordinates; for an eigenbasis this is diag(values)).
struct EigenspacePack {
  MatX basis;    // ambient_dim x N, M-orthonormal
  VecX values;   // the N eigenvalues
  MatX q;        // N x N symmetric: the quadratic form on the span
};

/// Builds a pack from any spanning set: M-orthonormalizes the basis and
/// represents the form K on the span. `values` is diag(q) after rotation to
/// the basis that diagonalizes q (ascending).
EigenspacePack restrict_form(const MatX& span, const SpMat& mass, const SpMat& form);

/// Pack straight from eigensolver output (basis already M-orthonormal).
EigenspacePack pack_from_eigenpairs(const MatX& vectors, const VecX& values);

struct Isometry {
  MatX map;                      // N x N orthogonal: coords of E0 -> coords of E1
  VecX singular_values;          // cosines of the principal angles
  std::vector<double> principal_angles;
  bool aligned = false;          // smallest singular value >= 0.5
};

/// Natural isometry between two N-dimensional subspaces of the same ambient
/// M-inner-product space: polar factor of the M-orthogonal projection of E0
/// onto E1. Errors when the subspaces are too far apart (hypothesis (*)
/// failure signal).
Isometry subspace_isometry(const EigenspacePack& e0, const EigenspacePack& e1, const SpMat& mass);

struct SpectralGapReport {
  double gap = 0.0;  // operator norm of q1 o psi - q0
  bool aligned = false;
  std::vector<double> principal_angles;
};

/// N-spectral gap between two quadratic forms on their lowest-N eigenspaces.
SpectralGapReport n_gap(const EigenspacePack& e0, const EigenspacePack& e1, const SpMat& mass);

/// lambda_1 <= ... <= lambda_N < lambda_N + eta <= lambda_{N+1} <= bound.
/// Needs at least N+1 eigenvalues.
bool check_star_hypothesis(const VecX& eigenvalues, Index n, double eta, double bound);

}  // namespace hodge::gap
