#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodge/cohomology.hpp"
#include "hodge/meshgen.hpp"
#include "hodge/product.hpp"
#include "hodge/simplicial.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

std::vector<Index> betti_via_dense(const OrientedSimplicialComplex& c) {
  std::vector<Index> b(static_cast<size_t>(c.n) + 1);
  for (int p = 0; p <= c.n; ++p) {
    Index rank_p = p < c.n ? oracle::dense_rank(c.coboundary(p)) : 0;
    Index rank_prev = p > 0 ? oracle::dense_rank(c.coboundary(p - 1)) : 0;
    b[static_cast<size_t>(p)] = c.count(p) - rank_p - rank_prev;
  }
  return b;
}

bool dd_is_zero(const SpMatI& d_up, const SpMatI& d_low) {
  SpMatI prod = d_up * d_low;
  for (int k = 0; k < prod.outerSize(); ++k)
    for (SpMatI::InnerIterator it(prod, k); it; ++it)
      if (it.value() != 0) return false;
  return true;
}

CochainComplex realized(const meshgen::Mesh& mesh) { return meshgen::realize(mesh).cc; }

}  // namespace

TEST_CASE("one triangle: skeleta and the boundary orientation convention") {
  auto c = build_complex({{0, 1, 2}});
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 3);
  CHECK(c.count(2) == 1);
  // edges sorted lexicographically: (0,1), (0,2), (1,2)
  const SpMatI& b2 = c.boundary[2];
  CHECK(b2.coeff(c.index_of(1, {1, 2}), 0) == 1);
  CHECK(b2.coeff(c.index_of(1, {0, 2}), 0) == -1);
  CHECK(b2.coeff(c.index_of(1, {0, 1}), 0) == 1);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(build_complex({{0, 1, 2}, {2, 1, 0}}), Error);  // duplicate up to permutation
  CHECK_THROWS_AS(build_complex({{0, 1, 2}, {3, 4}}), Error);     // inconsistent vertex counts
  CHECK_THROWS_AS(build_complex({{0, 0, 1}}), Error);             // repeated vertex
  CHECK_THROWS_AS(build_complex({}), Error);
}

TEST_CASE("triangulated torus: Euler characteristic, dd = 0, Betti numbers") {
  for (int k : {4, 6}) {
    auto mesh = meshgen::torus2(k);
    auto c = build_complex(mesh.top_cells);
    CHECK(c.count(0) == k * k);
    CHECK(c.count(1) == 3 * k * k);
    CHECK(c.count(2) == 2 * k * k);
    CHECK(c.euler_characteristic() == 0);
    CHECK(dd_is_zero(c.boundary[1], c.boundary[2]));

    auto betti = betti_numbers(c);
    CHECK(betti == std::vector<Index>{1, 2, 1});
    CHECK(betti == betti_via_dense(c));
  }
}

TEST_CASE("Betti numbers are invariant under vertex relabeling and refinement") {
  auto mesh = meshgen::torus2(4);
  auto base = betti_numbers(build_complex(mesh.top_cells));

  std::mt19937_64 rng(3);
  std::vector<int> perm(16);
  for (int i = 0; i < 16; ++i) perm[static_cast<size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> relabeled;
  for (auto cell : mesh.top_cells) {
    for (auto& v : cell) v = perm[static_cast<size_t>(v)];
    relabeled.push_back(cell);
  }
  CHECK(betti_numbers(build_complex(relabeled)) == base);
  CHECK(betti_numbers(build_complex(meshgen::torus2(8).top_cells)) == base);
}

TEST_CASE("icosahedral spheres") {
  for (int level : {0, 1, 2}) {
    auto mesh = meshgen::sphere_ico(level);
    auto c = build_complex(mesh.top_cells);
    CHECK(c.count(0) == 10 * (1 << (2 * level)) + 2);
    CHECK(c.euler_characteristic() == 2);
    CHECK(betti_numbers(c) == std::vector<Index>{1, 0, 1});
  }
}

TEST_CASE("closed disk is contractible") {
  auto mesh = meshgen::disk_in_torus(8, 0.3);
  auto m = build_complex(mesh.top_cells);
  auto u = make_subdomain(m, mesh.regions.at("U"));
  auto closure = closure_complex(m, u);
  CHECK(betti_numbers(closure.complex) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("subdomain closure and boundary skeleton") {
  auto mesh = meshgen::disk_in_torus(8, 0.3);
  auto m = build_complex(mesh.top_cells);
  auto u = make_subdomain(m, mesh.regions.at("U"));
  // boundary skeleton is contained in the closure
  for (int p = 0; p <= m.n; ++p) {
    for (Index s : u.boundary_skeleton[static_cast<size_t>(p)]) {
      const auto& cl = u.closure[static_cast<size_t>(p)];
      CHECK(std::binary_search(cl.begin(), cl.end(), s));
    }
  }
  CHECK(u.boundary_skeleton[1].size() > 0);  // the disk has a boundary circle
  CHECK_THROWS_AS(make_subdomain(m, {static_cast<Index>(m.count(2))}), Error);
}

TEST_CASE("restrict_cochain commutes with the coboundary") {
  auto mesh = meshgen::disk_in_torus(6, 0.3);
  auto m = build_complex(mesh.top_cells);
  auto u = make_subdomain(m, mesh.regions.at("U"));
  auto closure = closure_complex(m, u);

  // constant 0-cochain restricts to the constant
  Cochain ones{0, VecX::Ones(m.count(0))};
  Cochain ru = restrict_cochain(m, u, closure, ones);
  CHECK(ru.values.size() == closure.complex.count(0));
  CHECK((ru.values.array() == 1.0).all());

  std::mt19937_64 rng(5);
  SpMat d0 = m.coboundary(0).cast<double>();
  SpMat d0u = closure.complex.coboundary(0).cast<double>();
  for (int trial = 0; trial < 10; ++trial) {
    Cochain x{0, oracle::random_vec(m.count(0), rng)};
    Cochain dx{1, d0 * x.values};
    Cochain lhs = restrict_cochain(m, u, closure, dx);
    VecX rhs = d0u * restrict_cochain(m, u, closure, x).values;
    CHECK((lhs.values - rhs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("relative cohomology dimensions") {
  SUBCASE("disk in torus, p = 1: H^1(disk) = 0 forces d_1 = 0") {
    auto mesh = meshgen::disk_in_torus(8, 0.3);
    auto m = build_complex(mesh.top_cells);
    auto u = make_subdomain(m, mesh.regions.at("U"));
    CHECK(relative_cohomology_dim(m, u, 0) == 0);
    CHECK(relative_cohomology_dim(m, u, 1) == 0);
    CHECK_THROWS_AS(relative_cohomology_dim(m, u, 3), Error);
    CHECK_THROWS_AS(relative_cohomology_dim(m, u, -1), Error);
  }
  SUBCASE("annulus on the sphere, p = 1: nothing restricts onto H^1") {
    auto mesh = meshgen::sphere_ico(2, 0.3);
    auto m = build_complex(mesh.top_cells);
    auto u = make_subdomain(m, mesh.regions.at("U"));
    auto closure = closure_complex(m, u);
    CHECK(betti_numbers(closure.complex) == std::vector<Index>{1, 1, 0});  // genuinely an annulus
    CHECK(relative_cohomology_dim(m, u, 1) == 1);
    CHECK(relative_cohomology_dim(m, u, 0) == 0);
  }
  SUBCASE("annulus winding around a torus generator restricts from the torus") {
    const int k = 6;
    auto mesh = meshgen::torus2(k);
    auto m = build_complex(mesh.top_cells);
    std::vector<Index> band;
    for (Index t = 0; t < m.count(2); ++t) {
      const int j = static_cast<int>(t) / 2 % k;
      if (j < 2) band.push_back(t);
    }
    auto u = make_subdomain(m, band);
    auto closure = closure_complex(m, u);
    CHECK(betti_numbers(closure.complex) == std::vector<Index>{1, 1, 0});
    CHECK(relative_cohomology_dim(m, u, 1) == 0);
  }
  SUBCASE("U = M gives the zero quotient in every degree") {
    auto mesh = meshgen::torus2(4);
    auto m = build_complex(mesh.top_cells);
    std::vector<Index> all;
    for (Index t = 0; t < m.count(2); ++t) all.push_back(t);
    auto u = make_subdomain(m, all);
    for (int p = 0; p <= 2; ++p) CHECK(relative_cohomology_dim(m, u, p) == 0);
  }
  SUBCASE("0 <= d_p <= b_p(U)") {
    auto mesh = meshgen::sphere_ico(1, 0.35);
    auto m = build_complex(mesh.top_cells);
    auto u = make_subdomain(m, mesh.regions.at("U"));
    auto closure = closure_complex(m, u);
    auto bu = betti_numbers(closure.complex);
    for (int p = 0; p <= 2; ++p) {
      Index dp = relative_cohomology_dim(m, u, p);
      CHECK(dp >= 0);
      CHECK(dp <= bu[static_cast<size_t>(p)]);
    }
  }
}

TEST_CASE("tensor product of two circles") {
  auto a = realized(meshgen::circle(5));
  auto b = realized(meshgen::circle(7));
  auto prod = tensor_product_complex(a, b);

  CHECK(prod.n == 2);
  CHECK(prod.count(0) == 35);
  CHECK(prod.count(1) == 70);
  CHECK(prod.count(2) == 35);

  // Koszul sign: dd = 0 exactly on the integer coboundaries
  SpMatI dd = prod.d_int[1] * prod.d_int[0];
  for (int k = 0; k < dd.outerSize(); ++k)
    for (SpMatI::InnerIterator it(dd, k); it; ++it) CHECK(it.value() == 0);

  CHECK(betti_numbers(prod) == std::vector<Index>{1, 2, 1});

  // product with a point is the identity on cell counts
  auto pt = realized(meshgen::point());
  auto same = tensor_product_complex(a, pt);
  CHECK(same.n == 1);
  CHECK(same.count(0) == a.count(0));
  CHECK(same.count(1) == a.count(1));
}

TEST_CASE("restriction of an assembled complex matches the closure complex") {
  auto mesh = meshgen::disk_in_torus(6, 0.3);
  auto real = meshgen::realize(mesh);
  auto u_cells = mesh.regions.at("U");
  auto restricted = restrict_to_cells(real.cc, u_cells);

  auto m = build_complex(mesh.top_cells);
  auto u = make_subdomain(m, u_cells);
  auto closure = closure_complex(m, u);
  for (int p = 0; p <= 2; ++p)
    CHECK(restricted.cc.count(p) == closure.complex.count(p));
  CHECK(betti_numbers(restricted.cc) == betti_numbers(closure.complex));
}
