#include "hodge/cohomology.hpp"

namespace hodge {

namespace {

std::vector<Index> betti_impl(const std::vector<Index>& counts, const std::vector<SpMatI>& d) {
  const int n = static_cast<int>(counts.size()) - 1;
  std::vector<Index> ranks(static_cast<size_t>(n) + 1, 0);  // rank d_p, p = 0..n (d_n = 0)
  for (int p = 0; p < n; ++p) ranks[static_cast<size_t>(p)] = exact::rank_q(d[static_cast<size_t>(p)]);
  std::vector<Index> betti(static_cast<size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    Index rank_prev = (p == 0) ? 0 : ranks[static_cast<size_t>(p - 1)];
    betti[static_cast<size_t>(p)] = counts[static_cast<size_t>(p)] - ranks[static_cast<size_t>(p)] - rank_prev;
  }
  return betti;
}

}  // namespace

std::vector<Index> betti_numbers(const OrientedSimplicialComplex& m) {
  std::vector<Index> counts(static_cast<size_t>(m.n) + 1);
  std::vector<SpMatI> d(static_cast<size_t>(m.n));
  for (int p = 0; p <= m.n; ++p) counts[static_cast<size_t>(p)] = m.count(p);
  for (int p = 0; p < m.n; ++p) d[static_cast<size_t>(p)] = m.coboundary(p);
  return betti_impl(counts, d);
}

std::vector<Index> betti_numbers(const CochainComplex& cc) {
  return betti_impl(cc.counts, cc.d_int);
}

ClosedBasis kernel_of(const SpMatI& d, Index cols) {
  if (d.rows() == 0) {
    // everything is closed
    SpMat id(cols, cols);
    id.setIdentity();
    return {cols, std::move(id)};
  }
  auto basis = exact::kernel_basis_exact(d);
  return {static_cast<Index>(basis.size()), exact::to_double(cols, basis)};
}

ClosedBasis closed_cochain_basis(const CochainComplex& cc, int p) {
  if (p < 0 || p > cc.n) throw Error(ErrorKind::InvalidInput, "degree outside [0, n]");
  if (p == cc.n) return kernel_of(SpMatI(0, cc.count(p)), cc.count(p));
  return kernel_of(cc.d_int[static_cast<size_t>(p)], cc.count(p));
}

Index relative_cohomology_dim(const CochainComplex& m, const std::vector<Index>& u_cells, int p) {
  if (p < 0 || p > m.n) throw Error(ErrorKind::InvalidInput, "degree outside [0, n]");

  RestrictedComplex u = restrict_to_cells(m, u_cells);
  const Index nu = u.cc.count(p);

  // Z_U: closed p-cochains of the closure
  std::vector<exact::SparseVecQ> z_u;
  if (p == m.n) {
    for (Index i = 0; i < nu; ++i) z_u.push_back({{i, exact::Rational(1)}});
  } else {
    z_u = exact::kernel_basis_exact(u.cc.d_int[static_cast<size_t>(p)]);
  }

  // restrict(Z_M): closed p-cochains of M, rows mapped into the closure
  const auto amb_to_local = invert_dof_map(u.dof_to_ambient[static_cast<size_t>(p)], m.count(p));
  std::vector<exact::SparseVecQ> span_cols;
  std::vector<exact::SparseVecQ> z_m;
  if (p == m.n) {
    for (Index i = 0; i < m.count(p); ++i) z_m.push_back({{i, exact::Rational(1)}});
  } else {
    z_m = exact::kernel_basis_exact(m.d_int[static_cast<size_t>(p)]);
  }
  for (const auto& col : z_m) {
    exact::SparseVecQ restricted;
    for (const auto& [i, v] : col) {
      Index li = amb_to_local[static_cast<size_t>(i)];
      if (li >= 0) restricted.push_back({li, v});
    }
    if (!restricted.empty()) span_cols.push_back(std::move(restricted));
  }

  // B_U: exact p-cochains of U, generated by the columns of d_{p-1} on U
  if (p >= 1) {
    const SpMatI& du = u.cc.d_int[static_cast<size_t>(p - 1)];
    for (int col = 0; col < du.outerSize(); ++col) {
      exact::SparseVecQ c;
      for (SpMatI::InnerIterator it(du, col); it; ++it)
        c.push_back({it.row(), exact::Rational(it.value())});
      if (!c.empty()) span_cols.push_back(std::move(c));
    }
  }

  const Index dim_zu = static_cast<Index>(z_u.size());
  const Index dim_span = exact::rank_q_columns(nu, span_cols);
  return dim_zu - dim_span;
}

Index relative_cohomology_dim(const OrientedSimplicialComplex& m, const Subdomain& u, int p) {
  if (p < 0 || p > m.n) throw Error(ErrorKind::InvalidInput, "degree outside [0, n]");
  // metric-free lowering: only counts, coboundaries and cell dof lists matter
  CochainComplex cc;
  cc.n = m.n;
  for (int q = 0; q <= m.n; ++q) cc.counts.push_back(m.count(q));
  cc.d_int.resize(static_cast<size_t>(m.n));
  cc.d.resize(static_cast<size_t>(m.n));
  for (int q = 0; q < m.n; ++q) {
    cc.d_int[static_cast<size_t>(q)] = m.coboundary(q);
    cc.d[static_cast<size_t>(q)] = cc.d_int[static_cast<size_t>(q)].cast<double>();
  }
  cc.cells.resize(static_cast<size_t>(m.count(m.n)));
  for (Index t = 0; t < m.count(m.n); ++t) {
    auto& cell = cc.cells[static_cast<size_t>(t)];
    cell.volume = 1.0;
    cell.local.resize(static_cast<size_t>(m.n) + 1);
    const auto& verts = m.skeleta[static_cast<size_t>(m.n)][static_cast<size_t>(t)].vertices;
    for (int q = 0; q <= m.n; ++q) {
      for (const auto& face : local_faces(m.n, q)) {
        std::vector<int> fv;
        for (int li : face) fv.push_back(verts[static_cast<size_t>(li)]);
        cell.local[static_cast<size_t>(q)].dofs.push_back(m.index_of(q, fv));
      }
    }
  }
  cc.neighbors.resize(cc.cells.size());
  return relative_cohomology_dim(cc, u.top_cells, p);
}

}  // namespace hodge
