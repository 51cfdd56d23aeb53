#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/complex_data.hpp"
#include "hodge/product.hpp"

namespace hodge::meshgen {

/// File-level mesh description: either simplicial top cells with geometry, or
/// a tensor product of factor meshes. Regions name top-cell subsets (product
/// regions index the flattened left-fold product cells).
struct Mesh {
  int dimension = 0;
  std::vector<std::vector<int>> top_cells;
  std::optional<MatX> vertex_coords;
  std::map<std::pair<int, int>, double> edge_lengths;
  std::vector<Mesh> factors;  // nonempty: tensor product mesh
  std::map<std::string, std::vector<Index>> regions;

  bool is_product() const { return !factors.empty(); }
};

Mesh circle(int k, double circumference = 1.0);
Mesh torus2(int k);
Mesh torus_tensor(const std::vector<int>& dims, const std::vector<int>& region_box = {});
Mesh sphere_ico(int level, double band_halfwidth = 0.3);
Mesh disk_in_torus(int k, double radius);
Mesh point();

/// Solver-ready form of a mesh: the assembled complex, the simplicial carrier
/// when there is one, and resolved regions.
struct Realized {
  CochainComplex cc;
  std::optional<OrientedSimplicialComplex> simplicial;
  MetricData metric;
  std::map<std::string, std::vector<Index>> regions;
};

Realized realize(const Mesh& mesh);

}  // namespace hodge::meshgen
