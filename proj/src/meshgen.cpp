#include "hodge/meshgen.hpp"

#include <cmath>
#include <map>

namespace hodge::meshgen {

namespace {

constexpr double kPi = 3.14159265358979323846;

void set_length(Mesh& mesh, int u, int v, double len) {
  if (u > v) std::swap(u, v);
  mesh.edge_lengths[{u, v}] = len;
}

}  // namespace

Mesh circle(int k, double circumference) {
  if (k < 3) throw Error(ErrorKind::InvalidInput, "circle needs at least 3 edges");
  if (!(circumference > 0.0))
    throw Error(ErrorKind::InvalidInput, "circumference must be positive");
  Mesh mesh;
  mesh.dimension = 1;
  const double r = circumference / (2.0 * k * std::sin(kPi / k));
  MatX coords(k, 2);
  for (int i = 0; i < k; ++i) {
    coords(i, 0) = r * std::cos(2.0 * kPi * i / k);
    coords(i, 1) = r * std::sin(2.0 * kPi * i / k);
    mesh.top_cells.push_back({i, (i + 1) % k});
    set_length(mesh, i, (i + 1) % k, circumference / k);
  }
  mesh.vertex_coords = coords;
  return mesh;
}

Mesh torus2(int k) {
  if (k < 3) throw Error(ErrorKind::InvalidInput, "torus grid needs k >= 3");
  Mesh mesh;
  mesh.dimension = 2;
  const double h = 1.0 / k;
  auto vid = [k](int i, int j) { return ((i % k + k) % k) * k + ((j % k + k) % k); };
  MatX coords(k * k, 2);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      coords(vid(i, j), 0) = i * h;
      coords(vid(i, j), 1) = j * h;
    }
  mesh.vertex_coords = coords;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      mesh.top_cells.push_back({a, b, c});
      mesh.top_cells.push_back({a, c, d});
      set_length(mesh, a, b, h);
      set_length(mesh, b, c, h);
      set_length(mesh, c, d, h);
      set_length(mesh, a, d, h);
      set_length(mesh, a, c, h * std::sqrt(2.0));
    }
  return mesh;
}

Mesh disk_in_torus(int k, double radius) {
  if (!(radius > 0.0) || radius >= 0.5)
    throw Error(ErrorKind::InvalidInput, "disk radius must lie in (0, 0.5)");
  Mesh mesh = torus2(k);
  const double h = 1.0 / k;
  std::vector<Index> disk;
  for (size_t t = 0; t < mesh.top_cells.size(); ++t) {
    // periodic barycenter offset from the torus center
    const int i = static_cast<int>(t) / (2 * k) % k;
    const int j = static_cast<int>(t) / 2 % k;
    const bool lower = t % 2 == 0;  // (a,b,c) vs (a,c,d)
    const double bx = (i + (lower ? 2.0 / 3.0 : 1.0 / 3.0)) * h;
    const double by = (lower ? j + 1.0 / 3.0 : j + 2.0 / 3.0) * h;
    double dx = bx - 0.5, dy = by - 0.5;
    dx -= std::round(dx);
    dy -= std::round(dy);
    if (std::hypot(dx, dy) < radius) disk.push_back(static_cast<Index>(t));
  }
  if (disk.empty()) throw Error(ErrorKind::InvalidInput, "disk region is empty at this resolution");
  mesh.regions["U"] = disk;
  return mesh;
}

Mesh torus_tensor(const std::vector<int>& dims, const std::vector<int>& region_box) {
  if (dims.empty()) throw Error(ErrorKind::InvalidInput, "torus_tensor needs at least one factor");
  if (!region_box.empty() && region_box.size() != dims.size())
    throw Error(ErrorKind::InvalidInput, "region box rank must match dims");
  Mesh mesh;
  mesh.dimension = static_cast<int>(dims.size());
  for (int k : dims) mesh.factors.push_back(circle(k));

  if (!region_box.empty()) {
    for (size_t i = 0; i < dims.size(); ++i)
      if (region_box[i] < 1 || region_box[i] > dims[i])
        throw Error(ErrorKind::InvalidInput, "region box exceeds dims");
    // flattened left-fold product cell ids for the index box
    std::vector<Index> cells;
    std::vector<int> idx(dims.size(), 0);
    while (true) {
      bool inside = true;
      for (size_t i = 0; i < dims.size(); ++i) inside &= idx[i] < region_box[i];
      if (inside) {
        Index flat = 0;
        for (size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
        cells.push_back(flat);
      }
      size_t carry = dims.size();
      while (carry > 0) {
        if (++idx[carry - 1] < dims[carry - 1]) break;
        idx[carry - 1] = 0;
        --carry;
      }
      if (carry == 0) break;
    }
    mesh.regions["U"] = cells;
  }
  return mesh;
}

Mesh sphere_ico(int level, double band_halfwidth) {
  if (level < 0 || level > 5) throw Error(ErrorKind::InvalidInput, "ico level must be in [0, 5]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi},  {0, 1, phi},
      {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      if (a > b) std::swap(a, b);
      auto it = midpoint.find({a, b});
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[static_cast<size_t>(a)] + verts[static_cast<size_t>(b)]).normalized();
      verts.push_back(m);
      int id = static_cast<int>(verts.size()) - 1;
      midpoint[{a, b}] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  Mesh mesh;
  mesh.dimension = 2;
  MatX coords(static_cast<Index>(verts.size()), 3);
  for (size_t i = 0; i < verts.size(); ++i) coords.row(static_cast<Index>(i)) = verts[i];
  mesh.vertex_coords = coords;
  std::vector<Index> band;
  for (size_t t = 0; t < faces.size(); ++t) {
    mesh.top_cells.push_back({faces[t][0], faces[t][1], faces[t][2]});
    const double bz = (verts[static_cast<size_t>(faces[t][0])].z() +
                       verts[static_cast<size_t>(faces[t][1])].z() +
                       verts[static_cast<size_t>(faces[t][2])].z()) /
                      3.0;
    if (std::abs(bz) < band_halfwidth) band.push_back(static_cast<Index>(t));
  }
  if (!band.empty()) mesh.regions["U"] = band;
  return mesh;
}

Mesh point() {
  Mesh mesh;
  mesh.dimension = 0;
  mesh.top_cells = {{0}};
  MatX coords(1, 1);
  coords(0, 0) = 0.0;
  mesh.vertex_coords = coords;
  return mesh;
}

Realized realize(const Mesh& mesh) {
  Realized out;
  if (mesh.is_product()) {
    std::vector<CochainComplex> parts;
    for (const auto& f : mesh.factors) parts.push_back(realize(f).cc);
    CochainComplex acc = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) acc = tensor_product_complex(acc, parts[i]);
    out.cc = std::move(acc);
  } else {
    OrientedSimplicialComplex sc = build_complex(mesh.top_cells);
    MetricData metric;
    metric.vertex_coords = mesh.vertex_coords;
    metric.edge_lengths = mesh.edge_lengths;
    if (metric.empty())
      throw Error(ErrorKind::InvalidInput, "mesh has neither coordinates nor edge lengths");
    out.cc = cochain_complex(sc, metric);
    out.simplicial = std::move(sc);
    out.metric = std::move(metric);
  }
  for (const auto& [name, cells] : mesh.regions) {
    for (Index c : cells)
      if (c < 0 || c >= static_cast<Index>(out.cc.cells.size()))
        throw Error(ErrorKind::InvalidInput, "region '" + name + "' cell out of range");
    out.regions[name] = cells;
  }
  return out;
}

}  // namespace hodge::meshgen
