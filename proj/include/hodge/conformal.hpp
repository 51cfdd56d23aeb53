#pragma once

#include <vector>

#include "hodge/complex_data.hpp"

namespace hodge {

/// A positive conformal factor per top cell. A factor f multiplies the
/// metric as f^2 g, so the degree-p mass weight is f^(n-2p) and the volume
/// weight f^n.
struct ConformalField {
  VecX factor;
};

ConformalField unit_field(const CochainComplex& cc);

/// f = 1 on the region's top cells, eps elsewhere. Requires 0 < eps <= 1.
ConformalField squeeze_field(const CochainComplex& cc, const std::vector<Index>& region_cells,
                             double eps);

/// Monotone approximation of the sharp squeeze from above: geometric decay
/// with combinatorial distance d from the region,
/// f_j = eps^min(1, d*j/(D+1)) with D the largest distance in the mesh.
/// f_j >= f_{j+1} >= squeeze_field pointwise, equality once j > D.
ConformalField smoothing_sequence(const CochainComplex& cc, const std::vector<Index>& region_cells,
                                  double eps, int j);

/// BFS distance from the region over the top-cell adjacency.
std::vector<int> cell_distances(const CochainComplex& cc, const std::vector<Index>& region_cells);

struct MassMatrix {
  int degree = 0;
  SpMat matrix;
};

/// Whitney mass of degree p with per-cell weight f^(n-2p). Symmetrized after
/// assembly; positive definiteness checked by factorization (smallest pivot
/// > 1e-12 x largest).
MassMatrix mass_matrix(const CochainComplex& cc, const ConformalField& f, int p);

/// Conformally weighted volume: sum of f^n * vol over top cells.
double volume(const CochainComplex& cc, const ConformalField& f);

}  // namespace hodge
