#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hodge/simplicial.hpp"
#include "hodge/types.hpp"

namespace hodge {

/// Piecewise-flat geometry: either an embedding (vertex coordinates, any
/// ambient dimension) or per-edge lengths. Each top simplex gets a constant
/// flat metric from its edge-length Gram matrix.
struct MetricData {
  std::optional<MatX> vertex_coords;                 // V x ambient
  std::map<std::pair<int, int>, double> edge_lengths;  // sorted vertex pair

  double edge_length(int u, int v) const;
  bool empty() const { return !vertex_coords && edge_lengths.empty(); }
};

/// Gram matrix of the edge vectors (v1-v0, ..., vn-v0) of a simplex.
MatX simplex_gram(const std::vector<int>& vertices, const MetricData& metric);

/// Unsigned volume from the Gram matrix: sqrt(det G) / n!.
double simplex_volume(const MatX& gram);

/// <dlambda_i, dlambda_j> for all n+1 barycentric coordinates.
MatX barycentric_gradient_products(const MatX& gram);

/// Local Whitney p-form mass on one n-simplex: one row/column per local
/// p-face, faces enumerated as lexicographic (p+1)-subsets of {0..n}.
MatX whitney_local_mass(int n, int p, const MatX& gram_products, double volume);

/// Lexicographic (p+1)-subsets of {0..n}; the local face enumeration.
std::vector<std::vector<int>> local_faces(int n, int p);

}  // namespace hodge
