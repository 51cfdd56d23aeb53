#pragma once

#include <vector>

#include "hodge/geometry.hpp"
#include "hodge/simplicial.hpp"
#include "hodge/types.hpp"

namespace hodge {

/// Unweighted local mass of one degree on one top cell.
struct LocalBlock {
  std::vector<Index> dofs;  // global p-cell ids
  MatX mass;
};

struct TopCellData {
  double volume = 0.0;
  std::vector<LocalBlock> local;  // [p], p = 0..n
};

/// The assembled view every solver consumes: per-degree cell counts, integer
/// coboundaries, and per-top-cell local mass data. Simplicial complexes and
/// tensor products both lower to this.
struct CochainComplex {
  int n = 0;
  std::vector<Index> counts;      // [p], p = 0..n
  std::vector<SpMatI> d_int;      // [p]: counts[p+1] x counts[p], p = 0..n-1
  std::vector<SpMat> d;           // double copies of d_int
  std::vector<TopCellData> cells;
  std::vector<std::vector<Index>> neighbors;  // top-cell adjacency

  Index count(int p) const {
    return (p < 0 || p > n) ? 0 : counts[static_cast<size_t>(p)];
  }
  const SpMat& coboundary(int p) const { return d[static_cast<size_t>(p)]; }
  double total_volume() const;
};

/// Lower a simplicial complex plus metric to the assembled view.
/// Rejects degenerate cells by index.
CochainComplex cochain_complex(const OrientedSimplicialComplex& m, const MetricData& metric);

/// Restriction to a subset of top cells: keeps every dof appearing in a
/// selected cell (the closure), renumbers, and restricts the coboundaries.
struct RestrictedComplex {
  CochainComplex cc;
  std::vector<std::vector<Index>> dof_to_ambient;  // [p][local] = ambient id
  std::vector<Index> ambient_cells;                // selected top cells
};

RestrictedComplex restrict_to_cells(const CochainComplex& cc, std::vector<Index> cells);

/// Per-degree ids of cells on the topological boundary: the downward closure
/// of (n-1)-cells with fewer than two top cofaces.
std::vector<std::vector<Index>> boundary_skeleton_dofs(const CochainComplex& cc);

/// Maps ambient dof ids through a restriction (ambient -> local, -1 if absent).
std::vector<Index> invert_dof_map(const std::vector<Index>& to_ambient, Index ambient_count);

}  // namespace hodge
