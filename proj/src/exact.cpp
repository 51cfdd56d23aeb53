#include "hodge/exact.hpp"

namespace hodge::exact {

namespace {

SparseGaussian<Rational> eliminator_of(const SpMatI& a) {
  SparseGaussian<Rational> g(a.rows(), a.cols());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMatI::InnerIterator it(a, k); it; ++it)
      g.add(it.row(), it.col(), Rational(it.value()));
  g.eliminate();
  return g;
}

}  // namespace

Index rank_q(const SpMatI& a) { return eliminator_of(a).rank(); }

Index rank_q_columns(Index rows, const std::vector<SparseVecQ>& columns) {
  SparseGaussian<Rational> g(rows, static_cast<Index>(columns.size()));
  // eliminate the transpose: rows of g are the given columns
  // (rank is transpose-invariant)
  SparseGaussian<Rational> gt(static_cast<Index>(columns.size()), rows);
  for (size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, v] : columns[j]) gt.add(static_cast<Index>(j), i, v);
  gt.eliminate();
  return gt.rank();
}

std::vector<SparseVecQ> kernel_basis_exact(const SpMatI& a) {
  return eliminator_of(a).kernel_basis();
}

SpMat to_double(Index rows, const std::vector<SparseVecQ>& columns) {
  std::vector<Triplet> trips;
  for (size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, v] : columns[j])
      trips.push_back({static_cast<int>(i), static_cast<int>(j),
                       v.template convert_to<double>()});
  SpMat m(rows, static_cast<Index>(columns.size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SpMat kernel_basis(const SpMatI& a) {
  return to_double(a.cols(), kernel_basis_exact(a));
}

}  // namespace hodge::exact
