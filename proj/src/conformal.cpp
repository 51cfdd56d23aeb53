#include "hodge/conformal.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <deque>
#include <string>

namespace hodge {

ConformalField unit_field(const CochainComplex& cc) {
  return {VecX::Ones(static_cast<Index>(cc.cells.size()))};
}

ConformalField squeeze_field(const CochainComplex& cc, const std::vector<Index>& region,
                             double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    throw Error(ErrorKind::InvalidInput, "squeeze factor must satisfy 0 < eps <= 1");
  ConformalField f{VecX::Constant(static_cast<Index>(cc.cells.size()), eps)};
  for (Index t : region) {
    if (t < 0 || t >= f.factor.size())
      throw Error(ErrorKind::InvalidInput, "region cell out of range");
    f.factor[t] = 1.0;
  }
  return f;
}

std::vector<int> cell_distances(const CochainComplex& cc, const std::vector<Index>& region) {
  const Index ntop = static_cast<Index>(cc.cells.size());
  std::vector<int> dist(static_cast<size_t>(ntop), -1);
  std::deque<Index> queue;
  for (Index t : region) {
    if (t < 0 || t >= ntop)
      throw Error(ErrorKind::InvalidInput, "region cell out of range");
    dist[static_cast<size_t>(t)] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    Index t = queue.front();
    queue.pop_front();
    for (Index nb : cc.neighbors[static_cast<size_t>(t)])
      if (dist[static_cast<size_t>(nb)] < 0) {
        dist[static_cast<size_t>(nb)] = dist[static_cast<size_t>(t)] + 1;
        queue.push_back(nb);
      }
  }
  for (auto& d : dist)
    if (d < 0) d = static_cast<int>(ntop);  // unreachable component: treat as far
  return dist;
}

ConformalField smoothing_sequence(const CochainComplex& cc, const std::vector<Index>& region,
                                  double eps, int j) {
  if (j < 1) throw Error(ErrorKind::InvalidInput, "smoothing index must be >= 1");
  if (!(eps > 0.0) || eps > 1.0)
    throw Error(ErrorKind::InvalidInput, "squeeze factor must satisfy 0 < eps <= 1");
  const auto dist = cell_distances(cc, region);
  int dmax = 0;
  for (int d : dist) dmax = std::max(dmax, d);
  ConformalField f{VecX::Ones(static_cast<Index>(cc.cells.size()))};
  const double log_eps = std::log(eps);
  for (Index t = 0; t < f.factor.size(); ++t) {
    const double expo =
        std::min(1.0, static_cast<double>(dist[static_cast<size_t>(t)]) * j / (dmax + 1.0));
    // endpoints exact so the plateau field coincides with the sharp squeeze
    f.factor[t] = expo == 0.0 ? 1.0 : (expo == 1.0 ? eps : std::exp(expo * log_eps));
  }
  return f;
}

MassMatrix mass_matrix(const CochainComplex& cc, const ConformalField& f, int p) {
  if (p < 0 || p > cc.n)
    throw Error(ErrorKind::InvalidInput, "mass degree outside [0, n]");
  if (f.factor.size() != static_cast<Index>(cc.cells.size()))
    throw Error(ErrorKind::InvalidInput, "conformal field size mismatch");

  std::vector<Triplet> trips;
  const int expo = cc.n - 2 * p;
  for (size_t t = 0; t < cc.cells.size(); ++t) {
    const double fv = f.factor[static_cast<Index>(t)];
    if (!(fv > 0.0))
      throw Error(ErrorKind::InvalidInput, "conformal factor must be positive (cell " +
                                               std::to_string(t) + ")");
    const double w = int_pow(fv, expo);
    const LocalBlock& blk = cc.cells[t].local[static_cast<size_t>(p)];
    for (Index i = 0; i < blk.mass.rows(); ++i)
      for (Index jj = 0; jj < blk.mass.cols(); ++jj)
        if (blk.mass(i, jj) != 0.0)
          trips.push_back({static_cast<int>(blk.dofs[static_cast<size_t>(i)]),
                           static_cast<int>(blk.dofs[static_cast<size_t>(jj)]),
                           w * blk.mass(i, jj)});
  }
  SpMat m(cc.count(p), cc.count(p));
  m.setFromTriplets(trips.begin(), trips.end());
  SpMat mt = SpMat(m.transpose());
  m = 0.5 * (m + mt);

  // SPD check by factorization
  Eigen::SimplicialLDLT<SpMat> ldlt(m);
  bool ok = (ldlt.info() == Eigen::Success);
  if (ok) {
    const VecX dvec = ldlt.vectorD();
    const double dmax = dvec.maxCoeff();
    ok = dvec.minCoeff() > 1e-12 * dmax && dmax > 0.0;
  }
  if (!ok)
    throw Error(ErrorKind::InvalidInput,
                "mass matrix of degree " + std::to_string(p) + " is not positive definite");
  return {p, std::move(m)};
}

double volume(const CochainComplex& cc, const ConformalField& f) {
  if (f.factor.size() != static_cast<Index>(cc.cells.size()))
    throw Error(ErrorKind::InvalidInput, "conformal field size mismatch");
  double v = 0.0;
  for (size_t t = 0; t < cc.cells.size(); ++t)
    v += int_pow(f.factor[static_cast<Index>(t)], cc.n) * cc.cells[t].volume;
  return v;
}

}  // namespace hodge
