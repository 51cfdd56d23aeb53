#pragma once

#include <map>
#include <vector>

#include "hodge/types.hpp"

namespace hodge {

/// An oriented simplex, stored with sorted vertex indices. Input permutation
/// signs are absorbed into cochain coefficients, so the stored orientation is
/// always the one induced by the vertex order.
struct Simplex {
  std::vector<int> vertices;  // strictly increasing
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Sorts vertices in place; returns the sign of the sorting permutation.
/// Throws on repeated vertices.
int canonicalize(std::vector<int>& vertices);

struct OrientedSimplicialComplex {
  int n = 0;  // top dimension
  std::vector<std::vector<Simplex>> skeleta;        // [p][index]
  std::vector<std::map<std::vector<int>, Index>> lookup;  // sorted vertices -> index
  std::vector<SpMatI> boundary;  // boundary[p]: counts(p-1) x counts(p), p >= 1

  Index count(int p) const {
    if (p < 0 || p > n) return 0;
    return static_cast<Index>(skeleta[static_cast<size_t>(p)].size());
  }
  Index index_of(int p, const std::vector<int>& sorted_vertices) const;
  /// Coboundary d_p as integer matrix: counts(p+1) x counts(p).
  SpMatI coboundary(int p) const;
  Index euler_characteristic() const;
};

/// Builds the full complex from same-dimension top simplices. Orientation
/// convention: faces of the sorted simplex [v0..vp] carry sign (-1)^k for the
/// face dropping v_k, which makes boundary-of-boundary vanish identically.
OrientedSimplicialComplex build_complex(const std::vector<std::vector<int>>& top_simplices);

/// A region of top cells together with its closure and the skeleton of its
/// boundary inside the ambient complex.
struct Subdomain {
  std::vector<Index> top_cells;                       // sorted ambient top-cell ids
  std::vector<std::vector<Index>> closure;            // [p] -> ambient simplex ids
  std::vector<std::vector<Index>> boundary_skeleton;  // [p] -> ambient simplex ids
};

Subdomain make_subdomain(const OrientedSimplicialComplex& m,
                         std::vector<Index> top_cells);

/// The closure of a subdomain as a standalone complex, plus per-degree maps
/// from closure simplex ids back to ambient ids.
struct ClosureComplex {
  OrientedSimplicialComplex complex;
  std::vector<std::vector<Index>> to_ambient;  // [p][closure id] = ambient id
};

ClosureComplex closure_complex(const OrientedSimplicialComplex& m, const Subdomain& u);

/// Restriction of a p-cochain on the ambient complex to the subdomain closure.
/// Commutes with the coboundary.
Cochain restrict_cochain(const OrientedSimplicialComplex& m, const Subdomain& u,
                         const ClosureComplex& closure, const Cochain& omega);

}  // namespace hodge
