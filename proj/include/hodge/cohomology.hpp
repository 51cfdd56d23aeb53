#pragma once

#include <vector>

#include "hodge/complex_data.hpp"
#include "hodge/exact.hpp"
#include "hodge/simplicial.hpp"

namespace hodge {

struct CohomologySummary {
  std::vector<Index> betti;          // b_p, p = 0..n
  std::vector<Index> relative_dims;  // d_p = dim H^p(U/M) when a subdomain is attached
};

/// Rational Betti numbers b_p = dim ker d_p - rank d_{p-1}, all ranks exact.
std::vector<Index> betti_numbers(const OrientedSimplicialComplex& m);
std::vector<Index> betti_numbers(const CochainComplex& cc);

/// dim H^p(U/M): closed p-cochains of the closure of U modulo restrictions of
/// closed p-cochains of M (exact cochains of U are restrictions of exact
/// cochains of M, so the quotient by restrict(Z_M) + B_U computes it).
Index relative_cohomology_dim(const CochainComplex& m, const std::vector<Index>& u_cells, int p);

/// Simplicial convenience: builds the closure complex internally.
Index relative_cohomology_dim(const OrientedSimplicialComplex& m, const Subdomain& u, int p);

/// Exact basis of closed p-cochains {x : d_p x = 0} converted to double.
/// For p = n every cochain is closed.
struct ClosedBasis {
  Index dim = 0;
  SpMat basis;  // counts[p] x dim, exact span
};
ClosedBasis closed_cochain_basis(const CochainComplex& cc, int p);

/// Kernel of an integer matrix with a possibly empty row set.
ClosedBasis kernel_of(const SpMatI& d, Index cols);

}  // namespace hodge
