#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodge/cohomology.hpp"
#include "hodge/complex_data.hpp"
#include "hodge/conformal.hpp"

namespace hodge::spectra {

enum class BoundaryCondition { Absolute, Relative };

std::string to_string(BoundaryCondition bc);

/// Discrete pencil for the coexact p-form spectrum: K x = mu M x with
/// K = d^T M_{p+1} d. Absolute keeps every p-dof of the carrier; Relative
/// deletes the dofs on the boundary skeleton at degrees p and p+1 (the
/// stiffness is unchanged by the row deletion, the bookkeeping becomes the
/// relative complex). The kernel of d is carried as an exact-arithmetic basis.
struct GeneralizedEigenproblem {
  int degree = 0;
  BoundaryCondition bc = BoundaryCondition::Absolute;
  SpMat stiffness;           // K on kept dofs
  SpMat mass;                // M_p on kept dofs
  SpMat mass_up;             // M_{p+1} on kept (p+1)-dofs
  SpMat d_kept;              // coboundary, kept rows/cols
  SpMatI d_kept_int;
  std::vector<Index> dof_keep;     // kept p-dofs (ambient ids)
  std::vector<Index> dof_keep_up;  // kept (p+1)-dofs
  ClosedBasis kernel;              // exact basis of ker d_kept

  Index size() const { return mass.rows(); }
};

GeneralizedEigenproblem assemble(const CochainComplex& cc, const ConformalField& f, int p,
                                 BoundaryCondition bc);
/// Variant with an explicit boundary skeleton (per-degree ambient dof ids),
/// e.g. the boundary of a subdomain inside a closed mesh.
GeneralizedEigenproblem assemble(const CochainComplex& cc, const ConformalField& f, int p,
                                 BoundaryCondition bc,
                                 const std::vector<std::vector<Index>>& boundary_dofs);

struct SolveOptions {
  Index dense_threshold = 1200;  // below: dense generalized eigensolver
  unsigned long long seed = 0;
  double tol = 1e-11;       // relative residual on Ritz pairs
  int max_iterations = 800;
  int block_extra = 5;      // block size = k + block_extra
};

struct EigenSolveResult {
  VecX values;   // ascending, kernel excluded
  MatX vectors;  // M-orthonormal columns (kept-dof coordinates)
  Index kernel_dim = 0;
  bool truncated = false;
  int iterations = 0;
};

/// k smallest nonkernel eigenpairs. The float kernel count is cross-checked
/// against the exact-arithmetic kernel dimension; mismatch is a hard error.
EigenSolveResult solve_coexact(const GeneralizedEigenproblem& prob, Index k,
                               const SolveOptions& opts = {});

struct Cluster {
  double value = 0.0;  // cluster mean
  int multiplicity = 0;
};

/// Greedy clustering: a value joins the current cluster iff its gap to the
/// previous value is at most rel_tol times the running cluster mean.
std::vector<Cluster> cluster_multiplicities(const VecX& eigenvalues, double rel_tol);

struct ReportMetadata {
  double epsilon = 1.0;
  double volume = 0.0;
  std::string mesh_id;
};

struct SpectrumReport {
  int degree = 0;
  BoundaryCondition bc = BoundaryCondition::Absolute;
  VecX eigenvalues;  // ascending, kernel excluded
  std::vector<Cluster> clusters;
  Index kernel_dim = 0;
  bool truncated = false;
  ReportMetadata metadata;
};

SpectrumReport coexact_spectrum(const GeneralizedEigenproblem& prob, Index k,
                                double cluster_rel_tol = 1e-6, const SolveOptions& opts = {},
                                ReportMetadata metadata = {});

/// Union of the coexact spectra at degrees p and p-1 plus a kernel of
/// dimension b_p (the harmonic space of the full Laplacian).
SpectrumReport full_spectrum(const CochainComplex& cc, const ConformalField& f, int p,
                             BoundaryCondition bc, Index k, double cluster_rel_tol = 1e-6,
                             const SolveOptions& opts = {}, ReportMetadata metadata = {});

struct HodgeParts {
  Cochain exact;
  Cochain harmonic;
  Cochain coexact;
};

/// M_p-orthogonal splitting omega = exact + harmonic + coexact (Absolute).
HodgeParts hodge_decompose(const CochainComplex& cc, const ConformalField& f, int p,
                           const Cochain& omega);

/// The primitive of an exact (p+1)-cochain that is M_p-orthogonal to every
/// closed p-cochain (hence of least norm among all primitives). Fails with
/// the residual when omega is not exact.
Cochain minimal_primitive(const CochainComplex& cc, const ConformalField& f,
                          const Cochain& omega, double tol = 1e-10);

struct MinMaxResult {
  VecX reference;       // mu_{p,1..} from an independent dense Gram route
  double best_trial;    // smallest trial value observed for index i
  double achieved;      // value of the eigenvector span
  bool upper_bound_ok;  // every trial >= mu_i (within roundoff)
};

/// Randomized min-max over i-dimensional subspaces of exact (p+1)-cochains,
/// evaluated with minimal-norm primitives. Dense; oracle use only.
MinMaxResult minmax_check(const GeneralizedEigenproblem& prob, Index i, Index trials,
                          unsigned long long seed = 0);

}  // namespace hodge::spectra
