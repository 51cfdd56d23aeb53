#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodge/exact.hpp"
#include "hodge/meshgen.hpp"
#include "hodge/simplicial.hpp"
#include "oracles.hpp"

using namespace hodge;
using exact::Rational;

namespace {

SpMatI from_triplets(Index rows, Index cols, const std::vector<TripletI>& trips) {
  SpMatI m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

TEST_CASE("3-cycle incidence matrix has rank 2") {
  // d0 of the triangle graph: edges (0,1),(0,2),(1,2)
  SpMatI d = from_triplets(3, 3,
                           {{0, 0, -1}, {0, 1, 1}, {1, 0, -1}, {1, 2, 1}, {2, 1, -1}, {2, 2, 1}});
  CHECK(exact::rank_q(d) == 2);
  CHECK(oracle::dense_rank(d) == 2);
  auto kernel = exact::kernel_basis_exact(d);
  CHECK(kernel.size() == 1);
}

TEST_CASE("rank matches dense LU on random sparse integer matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> val(-2, 2);
  std::uniform_int_distribution<int> size(3, 40);
  for (int trial = 0; trial < 25; ++trial) {
    const Index rows = size(rng), cols = size(rng);
    std::vector<TripletI> trips;
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        if (keep(rng) < 0.25) {
          int v = val(rng);
          if (v != 0) trips.push_back({static_cast<int>(i), static_cast<int>(j), v});
        }
    SpMatI a = from_triplets(rows, cols, trips);
    CHECK(exact::rank_q(a) == oracle::dense_rank(a));
  }
}

TEST_CASE("kernel basis is an exact kernel and has complementary dimension") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    std::uniform_int_distribution<int> size(2, 25);
    const Index rows = size(rng), cols = size(rng);
    std::vector<TripletI> trips;
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        if (keep(rng) < 0.3) {
          int v = val(rng);
          if (v != 0) trips.push_back({static_cast<int>(i), static_cast<int>(j), v});
        }
    SpMatI a = from_triplets(rows, cols, trips);
    auto kernel = exact::kernel_basis_exact(a);
    CHECK(static_cast<Index>(kernel.size()) == cols - exact::rank_q(a));

    // verify A x = 0 in exact arithmetic
    for (const auto& col : kernel) {
      std::vector<Rational> ax(static_cast<size_t>(rows), Rational(0));
      for (const auto& [j, v] : col)
        for (SpMatI::InnerIterator it(a, static_cast<int>(j)); it; ++it)
          ax[static_cast<size_t>(it.row())] += Rational(it.value()) * v;
      for (const auto& r : ax) CHECK(r == 0);
    }
  }
}

TEST_CASE("span rank of concatenated columns") {
  // columns e1, e2, e1+e2, 2e1 in R^3 span a plane
  std::vector<exact::SparseVecQ> cols = {
      {{0, Rational(1)}},
      {{1, Rational(1)}},
      {{0, Rational(1)}, {1, Rational(1)}},
      {{0, Rational(2)}},
  };
  CHECK(exact::rank_q_columns(3, cols) == 2);
  CHECK(exact::rank_q_columns(3, {}) == 0);
}

TEST_CASE("boundary operators of a torus have the expected exact ranks") {
  auto mesh = meshgen::torus2(6);
  auto complex = build_complex(mesh.top_cells);
  // rank d0 = V - 1, rank d1 = F - 1 on a closed connected surface
  CHECK(exact::rank_q(complex.coboundary(0)) == complex.count(0) - 1);
  CHECK(exact::rank_q(complex.coboundary(1)) == complex.count(2) - 1);
  CHECK(oracle::dense_rank(complex.coboundary(1)) == complex.count(2) - 1);
}
