#include "hodge/geometry.hpp"

#include <cmath>
#include <string>

namespace hodge {

double MetricData::edge_length(int u, int v) const {
  if (u > v) std::swap(u, v);
  if (!edge_lengths.empty()) {
    auto it = edge_lengths.find({u, v});
    if (it != edge_lengths.end()) return it->second;
  }
  if (vertex_coords) {
    const MatX& x = *vertex_coords;
    if (u < 0 || v >= x.rows())
      throw Error(ErrorKind::InvalidInput, "vertex index outside coordinate table");
    return (x.row(u) - x.row(v)).norm();
  }
  throw Error(ErrorKind::InvalidInput,
              "no geometry for edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
}

MatX simplex_gram(const std::vector<int>& verts, const MetricData& metric) {
  const int n = static_cast<int>(verts.size()) - 1;
  MatX g(n, n);
  std::vector<double> l0(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) l0[static_cast<size_t>(i - 1)] = metric.edge_length(verts[0], verts[static_cast<size_t>(i)]);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      double lij = (i == j) ? 0.0
                            : metric.edge_length(verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)]);
      double v = (l0[static_cast<size_t>(i - 1)] * l0[static_cast<size_t>(i - 1)] +
                  l0[static_cast<size_t>(j - 1)] * l0[static_cast<size_t>(j - 1)] - lij * lij) /
                 2.0;
      g(i - 1, j - 1) = v;
      g(j - 1, i - 1) = v;
    }
  }
  return g;
}

double simplex_volume(const MatX& gram) {
  const int n = static_cast<int>(gram.rows());
  double det = gram.determinant();
  if (!(det > 0.0)) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  return std::sqrt(det) / fact;
}

MatX barycentric_gradient_products(const MatX& gram) {
  const int n = static_cast<int>(gram.rows());
  MatX ginv = gram.inverse();
  MatX c(n + 1, n + 1);
  c.block(1, 1, n, n) = ginv;
  for (int j = 1; j <= n; ++j) {
    double s = -ginv.col(j - 1).sum();
    c(0, j) = s;
    c(j, 0) = s;
  }
  c(0, 0) = ginv.sum();
  return c;
}

std::vector<std::vector<int>> local_faces(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(p) + 1);
  // iterative lexicographic enumeration of (p+1)-subsets of {0..n}
  for (int i = 0; i <= p; ++i) cur[static_cast<size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = p;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n - p + i) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j <= p; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

double minor_det(const MatX& c, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int p = static_cast<int>(rows.size());
  if (p == 0) return 1.0;
  if (p == 1) return c(rows[0], cols[0]);
  if (p == 2)
    return c(rows[0], cols[0]) * c(rows[1], cols[1]) - c(rows[0], cols[1]) * c(rows[1], cols[0]);
  MatX m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = c(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
  return m.determinant();
}

}  // namespace

MatX whitney_local_mass(int n, int p, const MatX& c, double volume) {
  const auto faces = local_faces(n, p);
  const Index m = static_cast<Index>(faces.size());
  MatX out(m, m);
  double pfact = 1.0;
  for (int i = 2; i <= p; ++i) pfact *= i;
  const double scale = pfact * pfact * volume / ((n + 1.0) * (n + 2.0));

  std::vector<int> sub_a(static_cast<size_t>(p)), sub_b(static_cast<size_t>(p));
  for (Index a = 0; a < m; ++a) {
    const auto& fa = faces[static_cast<size_t>(a)];
    for (Index b = a; b < m; ++b) {
      const auto& fb = faces[static_cast<size_t>(b)];
      double sum = 0.0;
      for (int k = 0; k <= p; ++k) {
        for (int i = 0, t = 0; i <= p; ++i)
          if (i != k) sub_a[static_cast<size_t>(t++)] = fa[static_cast<size_t>(i)];
        for (int l = 0; l <= p; ++l) {
          for (int i = 0, t = 0; i <= p; ++i)
            if (i != l) sub_b[static_cast<size_t>(t++)] = fb[static_cast<size_t>(i)];
          const double lam = (fa[static_cast<size_t>(k)] == fb[static_cast<size_t>(l)]) ? 2.0 : 1.0;
          const double sgn = ((k + l) % 2 == 0) ? 1.0 : -1.0;
          sum += sgn * lam * minor_det(c, sub_a, sub_b);
        }
      }
      out(a, b) = scale * sum;
      out(b, a) = out(a, b);
    }
  }
  return out;
}

}  // namespace hodge
