#include "hodge/complex_data.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace hodge {

double CochainComplex::total_volume() const {
  double v = 0.0;
  for (const auto& c : cells) v += c.volume;
  return v;
}

CochainComplex cochain_complex(const OrientedSimplicialComplex& m, const MetricData& metric) {
  CochainComplex cc;
  cc.n = m.n;
  cc.counts.resize(static_cast<size_t>(m.n) + 1);
  for (int p = 0; p <= m.n; ++p) cc.counts[static_cast<size_t>(p)] = m.count(p);

  cc.d_int.resize(static_cast<size_t>(m.n));
  cc.d.resize(static_cast<size_t>(m.n));
  for (int p = 0; p < m.n; ++p) {
    cc.d_int[static_cast<size_t>(p)] = m.coboundary(p);
    cc.d[static_cast<size_t>(p)] = cc.d_int[static_cast<size_t>(p)].cast<double>();
  }

  const Index ntop = m.count(m.n);
  cc.cells.resize(static_cast<size_t>(ntop));
  for (Index t = 0; t < ntop; ++t) {
    const auto& verts = m.skeleta[static_cast<size_t>(m.n)][static_cast<size_t>(t)].vertices;
    MatX gram = simplex_gram(verts, metric);
    double vol = simplex_volume(gram);
    if (!(vol > 0.0))
      throw Error(ErrorKind::InvalidInput,
                  "degenerate top simplex " + std::to_string(t));
    MatX c = barycentric_gradient_products(gram);

    TopCellData data;
    data.volume = vol;
    data.local.resize(static_cast<size_t>(m.n) + 1);
    for (int p = 0; p <= m.n; ++p) {
      LocalBlock blk;
      blk.mass = whitney_local_mass(m.n, p, c, vol);
      for (const auto& face : local_faces(m.n, p)) {
        std::vector<int> fv;
        fv.reserve(face.size());
        for (int li : face) fv.push_back(verts[static_cast<size_t>(li)]);
        blk.dofs.push_back(m.index_of(p, fv));
      }
      data.local[static_cast<size_t>(p)] = std::move(blk);
    }
    cc.cells[static_cast<size_t>(t)] = std::move(data);
  }

  // adjacency via shared (n-1)-faces
  cc.neighbors.resize(static_cast<size_t>(ntop));
  if (m.n >= 1) {
    const SpMatI& bd = m.boundary[static_cast<size_t>(m.n)];
    std::vector<std::vector<Index>> face_cofaces(static_cast<size_t>(m.count(m.n - 1)));
    for (Index t = 0; t < ntop; ++t)
      for (SpMatI::InnerIterator it(bd, t); it; ++it)
        face_cofaces[static_cast<size_t>(it.row())].push_back(t);
    for (const auto& cof : face_cofaces)
      for (size_t i = 0; i < cof.size(); ++i)
        for (size_t j = i + 1; j < cof.size(); ++j) {
          cc.neighbors[static_cast<size_t>(cof[i])].push_back(cof[j]);
          cc.neighbors[static_cast<size_t>(cof[j])].push_back(cof[i]);
        }
    for (auto& v : cc.neighbors) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  return cc;
}

RestrictedComplex restrict_to_cells(const CochainComplex& cc, std::vector<Index> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (Index t : cells)
    if (t < 0 || t >= static_cast<Index>(cc.cells.size()))
      throw Error(ErrorKind::InvalidInput, "restriction cell out of range");

  RestrictedComplex out;
  out.ambient_cells = cells;
  out.cc.n = cc.n;

  // collect closure dofs per degree
  out.dof_to_ambient.resize(static_cast<size_t>(cc.n) + 1);
  std::vector<std::vector<Index>> amb_to_local(static_cast<size_t>(cc.n) + 1);
  for (int p = 0; p <= cc.n; ++p) {
    std::set<Index> used;
    for (Index t : cells)
      for (Index dof : cc.cells[static_cast<size_t>(t)].local[static_cast<size_t>(p)].dofs)
        used.insert(dof);
    out.dof_to_ambient[static_cast<size_t>(p)].assign(used.begin(), used.end());
    amb_to_local[static_cast<size_t>(p)] =
        invert_dof_map(out.dof_to_ambient[static_cast<size_t>(p)], cc.count(p));
    out.cc.counts.push_back(static_cast<Index>(used.size()));
  }

  // coboundaries: keep entries with both endpoints in the closure
  out.cc.d_int.resize(static_cast<size_t>(cc.n));
  out.cc.d.resize(static_cast<size_t>(cc.n));
  for (int p = 0; p < cc.n; ++p) {
    std::vector<TripletI> trips;
    const SpMatI& a = cc.d_int[static_cast<size_t>(p)];
    for (int col = 0; col < a.outerSize(); ++col) {
      Index lc = amb_to_local[static_cast<size_t>(p)][static_cast<size_t>(col)];
      if (lc < 0) continue;
      for (SpMatI::InnerIterator it(a, col); it; ++it) {
        Index lr = amb_to_local[static_cast<size_t>(p + 1)][static_cast<size_t>(it.row())];
        if (lr >= 0) trips.push_back({static_cast<int>(lr), static_cast<int>(lc), it.value()});
      }
    }
    SpMatI di(out.cc.counts[static_cast<size_t>(p + 1)], out.cc.counts[static_cast<size_t>(p)]);
    di.setFromTriplets(trips.begin(), trips.end());
    out.cc.d[static_cast<size_t>(p)] = di.cast<double>();
    out.cc.d_int[static_cast<size_t>(p)] = std::move(di);
  }

  // cells with remapped dofs
  std::map<Index, Index> cell_local;
  for (size_t i = 0; i < cells.size(); ++i) cell_local[cells[i]] = static_cast<Index>(i);
  for (Index t : cells) {
    TopCellData data = cc.cells[static_cast<size_t>(t)];
    for (int p = 0; p <= cc.n; ++p)
      for (auto& dof : data.local[static_cast<size_t>(p)].dofs)
        dof = amb_to_local[static_cast<size_t>(p)][static_cast<size_t>(dof)];
    out.cc.cells.push_back(std::move(data));
  }
  out.cc.neighbors.resize(cells.size());
  for (size_t i = 0; i < cells.size(); ++i)
    for (Index nb : cc.neighbors[static_cast<size_t>(cells[i])]) {
      auto it = cell_local.find(nb);
      if (it != cell_local.end()) out.cc.neighbors[i].push_back(it->second);
    }
  return out;
}

std::vector<std::vector<Index>> boundary_skeleton_dofs(const CochainComplex& cc) {
  std::vector<std::vector<Index>> out(static_cast<size_t>(cc.n) + 1);
  if (cc.n == 0) return out;
  const SpMatI& dtop = cc.d_int[static_cast<size_t>(cc.n - 1)];  // n-cells x (n-1)-cells
  std::vector<int> cofaces(static_cast<size_t>(cc.count(cc.n - 1)), 0);
  for (int col = 0; col < dtop.outerSize(); ++col)
    for (SpMatI::InnerIterator it(dtop, col); it; ++it) cofaces[static_cast<size_t>(col)]++;

  std::vector<std::set<Index>> skel(static_cast<size_t>(cc.n) + 1);
  for (Index f = 0; f < cc.count(cc.n - 1); ++f)
    if (cofaces[static_cast<size_t>(f)] < 2) skel[static_cast<size_t>(cc.n - 1)].insert(f);
  for (int p = cc.n - 1; p >= 1; --p) {
    // faces of a p-cell: nonzero pattern of the row in d_{p-1}
    SpMatI dt = SpMatI(cc.d_int[static_cast<size_t>(p - 1)].transpose());  // (p-1)-cells x p-cells
    for (Index s : skel[static_cast<size_t>(p)])
      for (SpMatI::InnerIterator it(dt, s); it; ++it)
        skel[static_cast<size_t>(p - 1)].insert(it.row());
  }
  for (int p = 0; p <= cc.n; ++p)
    out[static_cast<size_t>(p)].assign(skel[static_cast<size_t>(p)].begin(), skel[static_cast<size_t>(p)].end());
  return out;
}

std::vector<Index> invert_dof_map(const std::vector<Index>& to_ambient, Index ambient_count) {
  std::vector<Index> inv(static_cast<size_t>(ambient_count), -1);
  for (size_t i = 0; i < to_ambient.size(); ++i)
    inv[static_cast<size_t>(to_ambient[i])] = static_cast<Index>(i);
  return inv;
}

}  // namespace hodge
