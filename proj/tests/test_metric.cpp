#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodge/conformal.hpp"
#include "hodge/meshgen.hpp"
#include "hodge/product.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

CochainComplex unit_right_triangle() {
  MetricData metric;
  MatX coords(3, 2);
  coords << 0, 0, 1, 0, 0, 1;
  metric.vertex_coords = coords;
  return cochain_complex(build_complex({{0, 1, 2}}), metric);
}

/// Midpoint quadrature on the reference triangle; exact for quadratics, which
/// covers all Whitney 1-form inner products.
MatX whitney1_mass_by_quadrature() {
  MatX coords(3, 2);
  coords << 0, 0, 1, 0, 0, 1;
  // barycentric gradients in the plane
  std::vector<Eigen::Vector2d> grad = {{-1, -1}, {1, 0}, {0, 1}};
  auto lambda = [](const Eigen::Vector2d& x) {
    return Eigen::Vector3d(1.0 - x[0] - x[1], x[0], x[1]);
  };
  const std::vector<Eigen::Vector2d> mid = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
  const double area = 0.5;
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 2}};
  MatX mass = MatX::Zero(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (const auto& q : mid) {
        Eigen::Vector3d lam = lambda(q);
        auto [i, j] = edges[static_cast<size_t>(a)];
        auto [k, l] = edges[static_cast<size_t>(b)];
        Eigen::Vector2d wa = lam[i] * grad[static_cast<size_t>(j)] - lam[j] * grad[static_cast<size_t>(i)];
        Eigen::Vector2d wb = lam[k] * grad[static_cast<size_t>(l)] - lam[l] * grad[static_cast<size_t>(k)];
        mass(a, b) += wa.dot(wb) * area / 3.0;
      }
  return mass;
}

}  // namespace

TEST_CASE("P1 mass on the unit right triangle") {
  auto cc = unit_right_triangle();
  auto m0 = mass_matrix(cc, unit_field(cc), 0);
  const double area = 0.5;
  MatX expected = area / 12.0 * (MatX::Ones(3, 3) + MatX::Identity(3, 3));
  CHECK((MatX(m0.matrix) - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(MatX(m0.matrix).sum() == doctest::Approx(area).epsilon(1e-14));
}

TEST_CASE("Whitney 1-form mass matches quadrature; top-degree mass is 1/area") {
  auto cc = unit_right_triangle();
  auto m1 = mass_matrix(cc, unit_field(cc), 1);
  MatX expected = whitney1_mass_by_quadrature();
  CHECK((MatX(m1.matrix) - expected).cwiseAbs().maxCoeff() < 1e-14);

  auto m2 = mass_matrix(cc, unit_field(cc), 2);
  CHECK(MatX(m2.matrix)(0, 0) == doctest::Approx(2.0).epsilon(1e-14));  // 1 / area
}

TEST_CASE("edge-length and coordinate geometry agree") {
  auto mesh = meshgen::circle(12);
  MetricData coords_only;
  coords_only.vertex_coords = mesh.vertex_coords;
  MetricData lengths_only;
  lengths_only.edge_lengths = mesh.edge_lengths;
  auto c = build_complex(mesh.top_cells);
  auto cc1 = cochain_complex(c, coords_only);
  auto cc2 = cochain_complex(c, lengths_only);
  for (size_t t = 0; t < cc1.cells.size(); ++t)
    CHECK(cc1.cells[t].volume == doctest::Approx(cc2.cells[t].volume).epsilon(1e-12));
}

TEST_CASE("degenerate cells are rejected by name") {
  MetricData metric;
  metric.edge_lengths[{0, 1}] = 1.0;
  metric.edge_lengths[{0, 2}] = 1.0;
  metric.edge_lengths[{1, 2}] = 2.0;  // violates the strict triangle inequality
  auto c = build_complex({{0, 1, 2}});
  CHECK_THROWS_WITH_AS(cochain_complex(c, metric), "degenerate top simplex 0", Error);
}

TEST_CASE("conformal homogeneity: mass(c f, p) = c^(n-2p) mass(f, p)") {
  auto real = meshgen::realize(meshgen::torus2(4));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  ConformalField f{VecX::NullaryExpr(static_cast<Index>(real.cc.cells.size()),
                                     [&](Index) { return pos(rng); })};
  const double c = 1.7;
  ConformalField cf{c * f.factor};
  for (int p = 0; p <= 2; ++p) {
    SpMat lhs = mass_matrix(real.cc, cf, p).matrix;
    SpMat rhs = mass_matrix(real.cc, f, p).matrix;
    const double scale = int_pow(c, real.cc.n - 2 * p);
    CHECK((MatX(lhs) - scale * MatX(rhs)).cwiseAbs().maxCoeff() <
          1e-13 * scale * MatX(rhs).cwiseAbs().maxCoeff());
  }
}

TEST_CASE("middle-degree mass is conformally invariant in even dimension") {
  auto real = meshgen::realize(meshgen::torus2(4));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> pos(0.3, 3.0);
  ConformalField f{VecX::NullaryExpr(static_cast<Index>(real.cc.cells.size()),
                                     [&](Index) { return pos(rng); })};
  SpMat weighted = mass_matrix(real.cc, f, 1).matrix;  // n - 2p = 0
  SpMat unit = mass_matrix(real.cc, unit_field(real.cc), 1).matrix;
  CHECK((MatX(weighted) - MatX(unit)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degree-0 mass total equals the weighted volume") {
  auto real = meshgen::realize(meshgen::torus2(4));
  ConformalField f = squeeze_field(real.cc, {0, 1, 2, 3}, 0.5);
  SpMat m0 = mass_matrix(real.cc, f, 0).matrix;
  CHECK(MatX(m0).sum() == doctest::Approx(volume(real.cc, f)).epsilon(1e-12));
}

TEST_CASE("volumes") {
  auto real = meshgen::realize(meshgen::torus2(6));
  CHECK(volume(real.cc, unit_field(real.cc)) == doctest::Approx(1.0).epsilon(1e-12));

  ConformalField c{VecX::Constant(static_cast<Index>(real.cc.cells.size()), 1.3)};
  CHECK(volume(real.cc, c) == doctest::Approx(1.3 * 1.3).epsilon(1e-12));

  // squeeze limit: volume -> vol(U)
  std::vector<Index> u = {0, 1, 2, 3, 4, 5};
  double vol_u = 0.0;
  for (Index t : u) vol_u += real.cc.cells[static_cast<size_t>(t)].volume;
  CHECK(volume(real.cc, squeeze_field(real.cc, u, 1e-8)) ==
        doctest::Approx(vol_u).epsilon(1e-9));
}

TEST_CASE("squeeze field validation and scaling laws") {
  auto real = meshgen::realize(meshgen::torus2(6));
  std::vector<Index> u = real.cc.neighbors[0];
  u.push_back(0);
  CHECK_THROWS_AS(squeeze_field(real.cc, u, 0.0), Error);
  CHECK_THROWS_AS(squeeze_field(real.cc, u, -1.0), Error);
  CHECK_THROWS_AS(squeeze_field(real.cc, u, 1.5), Error);

  // eps = 1 leaves the masses unchanged
  for (int p = 0; p <= 2; ++p) {
    SpMat a = mass_matrix(real.cc, squeeze_field(real.cc, u, 1.0), p).matrix;
    SpMat b = mass_matrix(real.cc, unit_field(real.cc), p).matrix;
    CHECK((MatX(a) - MatX(b)).cwiseAbs().maxCoeff() == 0.0);
  }

  // a cochain supported away from U scales by eps^(n-2p)
  const double eps = 0.25;
  ConformalField f = squeeze_field(real.cc, u, eps);
  std::vector<char> in_u(real.cc.cells.size(), 0);
  for (Index t : u) in_u[static_cast<size_t>(t)] = 1;
  for (int p = 0; p <= 2; ++p) {
    // dofs incident only to cells outside U
    std::vector<char> touched(static_cast<size_t>(real.cc.count(p)), 0);
    for (size_t t = 0; t < real.cc.cells.size(); ++t)
      if (in_u[t])
        for (Index dof : real.cc.cells[t].local[static_cast<size_t>(p)].dofs)
          touched[static_cast<size_t>(dof)] = 1;
    std::mt19937_64 rng(2);
    VecX x = VecX::Zero(real.cc.count(p));
    for (Index i = 0; i < x.size(); ++i)
      if (!touched[static_cast<size_t>(i)]) x[i] = oracle::random_vec(1, rng)[0];
    SpMat m_eps = mass_matrix(real.cc, f, p).matrix;
    SpMat m_one = mass_matrix(real.cc, unit_field(real.cc), p).matrix;
    const double lhs = x.dot(m_eps * x);
    const double rhs = int_pow(eps, real.cc.n - 2 * p) * x.dot(m_one * x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("smoothing sequence: monotone, pinned on U, sharp beyond the diameter") {
  auto real = meshgen::realize(meshgen::torus2(8));
  std::vector<Index> u;
  for (Index t = 0; t < 8; ++t) u.push_back(t);
  const double eps = 0.1;
  const ConformalField sharp = squeeze_field(real.cc, u, eps);

  ConformalField prev = smoothing_sequence(real.cc, u, eps, 1);
  for (Index t : u) CHECK(prev.factor[t] == 1.0);
  for (int j = 2; j <= 8; ++j) {
    ConformalField next = smoothing_sequence(real.cc, u, eps, j);
    CHECK((prev.factor - next.factor).minCoeff() >= 0.0);       // f_j >= f_{j+1}
    CHECK((next.factor - sharp.factor).minCoeff() >= 0.0);      // f_j >= sharp
    prev = next;
  }
  auto dist = cell_distances(real.cc, u);
  int dmax = *std::max_element(dist.begin(), dist.end());
  ConformalField far = smoothing_sequence(real.cc, u, eps, dmax + 1);
  CHECK((far.factor - sharp.factor).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(smoothing_sequence(real.cc, u, eps, 0), Error);
}

TEST_CASE("Q_eps <= Q_j on the form side (n = 3, degree 0)") {
  auto real = meshgen::realize(meshgen::torus_tensor({4, 4, 4}, {2, 2, 2}));
  auto u = real.regions.at("U");
  const double eps = 0.2;
  SpMat d0 = real.cc.d[0];
  SpMat q_eps = SpMat(d0.transpose() * mass_matrix(real.cc, squeeze_field(real.cc, u, eps), 1).matrix * d0);
  std::mt19937_64 rng(9);
  for (int j : {1, 2, 3}) {
    SpMat q_j = SpMat(d0.transpose() *
                      mass_matrix(real.cc, smoothing_sequence(real.cc, u, eps, j), 1).matrix * d0);
    for (int trial = 0; trial < 10; ++trial) {
      VecX x = oracle::random_vec(real.cc.count(0), rng);
      CHECK(x.dot(q_eps * x) <= x.dot(q_j * x) * (1 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("tensor-product mass is the graded tensor product of factor masses") {
  auto a = meshgen::realize(meshgen::circle(4)).cc;
  auto b = meshgen::realize(meshgen::circle(5)).cc;
  auto prod = tensor_product_complex(a, b);
  auto lay = product_layout(a, b);

  ConformalField fa = unit_field(a), fb = unit_field(b), fp = unit_field(prod);
  MatX m0a = MatX(mass_matrix(a, fa, 0).matrix);
  MatX m1a = MatX(mass_matrix(a, fa, 1).matrix);
  MatX m0b = MatX(mass_matrix(b, fb, 0).matrix);
  MatX m1b = MatX(mass_matrix(b, fb, 1).matrix);

  MatX m1p = MatX(mass_matrix(prod, fp, 1).matrix);
  // block (1,0): kron(m1a, m0b); block (0,1): kron(m0a, m1b)
  const Index off01 = lay.block_offset(1, 0);
  const Index off10 = lay.block_offset(1, 1);
  for (Index ia = 0; ia < 4; ++ia)
    for (Index ib = 0; ib < 5; ++ib)
      for (Index ja = 0; ja < 4; ++ja)
        for (Index jb = 0; jb < 5; ++jb) {
          CHECK(m1p(off01 + ia * 5 + ib, off01 + ja * 5 + jb) ==
                doctest::Approx(m0a(ia, ja) * m1b(ib, jb)).epsilon(1e-14));
          CHECK(m1p(off10 + ia * 5 + ib, off10 + ja * 5 + jb) ==
                doctest::Approx(m1a(ia, ja) * m0b(ib, jb)).epsilon(1e-14));
          CHECK(m1p(off01 + ia * 5 + ib, off10 + ja * 5 + jb) == 0.0);
        }

  CHECK(volume(prod, fp) == doctest::Approx(1.0).epsilon(1e-12));
}
