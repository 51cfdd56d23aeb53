#include "hodge/simplicial.hpp"

#include <algorithm>
#include <set>

namespace hodge {

int canonicalize(std::vector<int>& vertices) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < vertices.size(); ++i) {
    int v = vertices[i];
    size_t j = i;
    while (j > 0 && vertices[j - 1] > v) {
      vertices[j] = vertices[j - 1];
      --j;
      sign = -sign;
    }
    vertices[j] = v;
  }
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] == vertices[i - 1])
      throw Error(ErrorKind::InvalidInput, "simplex has repeated vertices");
  return sign;
}

Index OrientedSimplicialComplex::index_of(int p, const std::vector<int>& sv) const {
  auto it = lookup[static_cast<size_t>(p)].find(sv);
  return it == lookup[static_cast<size_t>(p)].end() ? -1 : it->second;
}

SpMatI OrientedSimplicialComplex::coboundary(int p) const {
  if (p < 0 || p >= n) return SpMatI(count(p + 1), count(p));
  return SpMatI(boundary[static_cast<size_t>(p + 1)].transpose());
}

Index OrientedSimplicialComplex::euler_characteristic() const {
  Index chi = 0;
  for (int p = 0; p <= n; ++p) chi += (p % 2 == 0 ? 1 : -1) * count(p);
  return chi;
}

OrientedSimplicialComplex build_complex(const std::vector<std::vector<int>>& top) {
  if (top.empty()) throw Error(ErrorKind::InvalidInput, "no top simplices");
  const size_t nv = top.front().size();
  if (nv == 0) throw Error(ErrorKind::InvalidInput, "empty simplex");

  OrientedSimplicialComplex c;
  c.n = static_cast<int>(nv) - 1;
  c.skeleta.resize(nv);
  c.lookup.resize(nv);

  // generate all faces of all top simplices, dimension by dimension
  auto intern = [&](int p, const std::vector<int>& sv) -> Index {
    auto& lut = c.lookup[static_cast<size_t>(p)];
    auto it = lut.find(sv);
    if (it != lut.end()) return it->second;
    Index id = static_cast<Index>(c.skeleta[static_cast<size_t>(p)].size());
    c.skeleta[static_cast<size_t>(p)].push_back(Simplex{sv});
    lut.emplace(sv, id);
    return id;
  };

  // top cells keep the input order (regions index into it); duplicates rejected
  std::set<std::vector<int>> seen_top;
  for (const auto& t : top) {
    if (t.size() != nv)
      throw Error(ErrorKind::InvalidInput, "top simplices have inconsistent vertex counts");
    std::vector<int> s = t;
    canonicalize(s);
    if (!seen_top.insert(s).second)
      throw Error(ErrorKind::InvalidInput, "duplicate top simplex");
    intern(c.n, s);
  }
  for (int p = c.n; p >= 1; --p) {
    for (const auto& simplex : c.skeleta[static_cast<size_t>(p)]) {
      for (size_t k = 0; k < simplex.vertices.size(); ++k) {
        std::vector<int> face;
        face.reserve(simplex.vertices.size() - 1);
        for (size_t j = 0; j < simplex.vertices.size(); ++j)
          if (j != k) face.push_back(simplex.vertices[j]);
        intern(p - 1, face);
      }
    }
  }
  // canonical order below the top dimension: sort by vertex lists
  for (int p = 0; p < c.n; ++p) {
    auto& sk = c.skeleta[static_cast<size_t>(p)];
    std::sort(sk.begin(), sk.end(), [](const Simplex& a, const Simplex& b) {
      return a.vertices < b.vertices;
    });
    auto& lut = c.lookup[static_cast<size_t>(p)];
    lut.clear();
    for (size_t i = 0; i < sk.size(); ++i) lut.emplace(sk[i].vertices, static_cast<Index>(i));
  }

  c.boundary.resize(static_cast<size_t>(c.n) + 1);
  for (int p = 1; p <= c.n; ++p) {
    std::vector<TripletI> trips;
    const auto& sk = c.skeleta[static_cast<size_t>(p)];
    for (size_t i = 0; i < sk.size(); ++i) {
      const auto& verts = sk[i].vertices;
      for (size_t k = 0; k < verts.size(); ++k) {
        std::vector<int> face;
        for (size_t j = 0; j < verts.size(); ++j)
          if (j != k) face.push_back(verts[j]);
        Index fi = c.index_of(p - 1, face);
        trips.push_back({static_cast<int>(fi), static_cast<int>(i), (k % 2 == 0) ? 1 : -1});
      }
    }
    SpMatI b(c.count(p - 1), c.count(p));
    b.setFromTriplets(trips.begin(), trips.end());
    c.boundary[static_cast<size_t>(p)] = std::move(b);
  }
  return c;
}

Subdomain make_subdomain(const OrientedSimplicialComplex& m, std::vector<Index> top_cells) {
  std::sort(top_cells.begin(), top_cells.end());
  top_cells.erase(std::unique(top_cells.begin(), top_cells.end()), top_cells.end());
  for (Index t : top_cells)
    if (t < 0 || t >= m.count(m.n))
      throw Error(ErrorKind::InvalidInput, "subdomain top cell out of range");

  Subdomain u;
  u.top_cells = top_cells;
  u.closure.assign(static_cast<size_t>(m.n) + 1, {});
  u.boundary_skeleton.assign(static_cast<size_t>(m.n) + 1, {});

  std::vector<char> selected(static_cast<size_t>(m.count(m.n)), 0);
  for (Index t : top_cells) selected[static_cast<size_t>(t)] = 1;

  // closure: all faces of selected top cells
  std::vector<std::set<Index>> closure(static_cast<size_t>(m.n) + 1);
  for (Index t : top_cells) closure[static_cast<size_t>(m.n)].insert(t);
  for (int p = m.n; p >= 1; --p) {
    const SpMatI& bd = m.boundary[static_cast<size_t>(p)];
    for (Index s : closure[static_cast<size_t>(p)])
      for (SpMatI::InnerIterator it(bd, s); it; ++it)
        closure[static_cast<size_t>(p - 1)].insert(it.row());
  }
  for (int p = 0; p <= m.n; ++p)
    u.closure[static_cast<size_t>(p)].assign(closure[static_cast<size_t>(p)].begin(),
                                             closure[static_cast<size_t>(p)].end());

  // boundary seeds: (n-1)-simplices of the closure whose top cofaces are not
  // all selected; the rest of the skeleton is their downward closure
  if (m.n >= 1) {
    const SpMatI& bd_top = m.boundary[static_cast<size_t>(m.n)];
    std::vector<int> inside_cofaces(static_cast<size_t>(m.count(m.n - 1)), 0);
    std::vector<int> total_cofaces(static_cast<size_t>(m.count(m.n - 1)), 0);
    for (int t = 0; t < m.count(m.n); ++t)
      for (SpMatI::InnerIterator it(bd_top, t); it; ++it) {
        total_cofaces[static_cast<size_t>(it.row())]++;
        if (selected[static_cast<size_t>(t)]) inside_cofaces[static_cast<size_t>(it.row())]++;
      }
    std::vector<std::set<Index>> bskel(static_cast<size_t>(m.n) + 1);
    for (Index f : u.closure[static_cast<size_t>(m.n - 1)])
      if (inside_cofaces[static_cast<size_t>(f)] != total_cofaces[static_cast<size_t>(f)])
        bskel[static_cast<size_t>(m.n - 1)].insert(f);
    for (int p = m.n - 1; p >= 1; --p) {
      const SpMatI& bd = m.boundary[static_cast<size_t>(p)];
      for (Index s : bskel[static_cast<size_t>(p)])
        for (SpMatI::InnerIterator it(bd, s); it; ++it)
          bskel[static_cast<size_t>(p - 1)].insert(it.row());
    }
    for (int p = 0; p <= m.n; ++p)
      u.boundary_skeleton[static_cast<size_t>(p)].assign(bskel[static_cast<size_t>(p)].begin(),
                                                         bskel[static_cast<size_t>(p)].end());
  }
  return u;
}

ClosureComplex closure_complex(const OrientedSimplicialComplex& m, const Subdomain& u) {
  std::vector<std::vector<int>> top;
  for (Index t : u.top_cells)
    top.push_back(m.skeleta[static_cast<size_t>(m.n)][static_cast<size_t>(t)].vertices);
  ClosureComplex out;
  out.complex = build_complex(top);
  out.to_ambient.resize(static_cast<size_t>(out.complex.n) + 1);
  for (int p = 0; p <= out.complex.n; ++p) {
    auto& map = out.to_ambient[static_cast<size_t>(p)];
    map.resize(static_cast<size_t>(out.complex.count(p)));
    for (Index i = 0; i < out.complex.count(p); ++i) {
      Index amb = m.index_of(p, out.complex.skeleta[static_cast<size_t>(p)][static_cast<size_t>(i)].vertices);
      if (amb < 0) throw Error(ErrorKind::InvalidInput, "closure simplex missing in ambient complex");
      map[static_cast<size_t>(i)] = amb;
    }
  }
  return out;
}

Cochain restrict_cochain(const OrientedSimplicialComplex& m, const Subdomain&,
                         const ClosureComplex& closure, const Cochain& omega) {
  const int p = omega.degree;
  if (p < 0 || p > m.n || omega.values.size() != m.count(p))
    throw Error(ErrorKind::InvalidInput, "cochain degree/carrier mismatch");
  Cochain out;
  out.degree = p;
  const auto& map = closure.to_ambient[static_cast<size_t>(p)];
  out.values.resize(static_cast<Index>(map.size()));
  for (size_t i = 0; i < map.size(); ++i)
    out.values[static_cast<Index>(i)] = omega.values[map[i]];
  return out;
}

}  // namespace hodge
