#include "hodge/product.hpp"

#include <algorithm>

namespace hodge {

ProductLayout product_layout(const CochainComplex& a, const CochainComplex& b) {
  ProductLayout l;
  l.nA = a.n;
  l.nB = b.n;
  l.countsA = a.counts;
  l.countsB = b.counts;
  return l;
}

CochainComplex tensor_product_complex(const CochainComplex& a, const CochainComplex& b) {
  const ProductLayout lay = product_layout(a, b);
  CochainComplex out;
  out.n = a.n + b.n;
  out.counts.resize(static_cast<size_t>(out.n) + 1);
  for (int p = 0; p <= out.n; ++p) out.counts[static_cast<size_t>(p)] = lay.degree_count(p);

  // coboundaries
  out.d_int.resize(static_cast<size_t>(out.n));
  out.d.resize(static_cast<size_t>(out.n));
  for (int p = 0; p < out.n; ++p) {
    std::vector<TripletI> trips;
    for (int q = 0; q <= p; ++q) {
      const int r = p - q;
      if (lay.block_count(q, r) == 0) continue;
      // dA part: (q,r) -> (q+1,r), sign +1
      if (q < a.n) {
        const SpMatI& da = a.d_int[static_cast<size_t>(q)];
        for (int col = 0; col < da.outerSize(); ++col)
          for (SpMatI::InnerIterator it(da, col); it; ++it)
            for (Index ib = 0; ib < b.count(r); ++ib)
              trips.push_back({static_cast<int>(lay.id(p + 1, q + 1, it.row(), ib)),
                               static_cast<int>(lay.id(p, q, col, ib)),
                               it.value()});
      }
      // dB part: (q,r) -> (q,r+1), sign (-1)^q
      if (r < b.n) {
        const std::int64_t sgn = (q % 2 == 0) ? 1 : -1;
        const SpMatI& db = b.d_int[static_cast<size_t>(r)];
        for (int col = 0; col < db.outerSize(); ++col)
          for (SpMatI::InnerIterator it(db, col); it; ++it)
            for (Index ia = 0; ia < a.count(q); ++ia)
              trips.push_back({static_cast<int>(lay.id(p + 1, q, ia, it.row())),
                               static_cast<int>(lay.id(p, q, ia, col)),
                               sgn * it.value()});
      }
    }
    SpMatI di(out.counts[static_cast<size_t>(p + 1)], out.counts[static_cast<size_t>(p)]);
    di.setFromTriplets(trips.begin(), trips.end());
    out.d[static_cast<size_t>(p)] = di.cast<double>();
    out.d_int[static_cast<size_t>(p)] = std::move(di);
  }

  // product cells with graded-tensor local masses
  const Index ntopA = static_cast<Index>(a.cells.size());
  const Index ntopB = static_cast<Index>(b.cells.size());
  out.cells.resize(static_cast<size_t>(ntopA * ntopB));
  for (Index ta = 0; ta < ntopA; ++ta) {
    const TopCellData& ca = a.cells[static_cast<size_t>(ta)];
    for (Index tb = 0; tb < ntopB; ++tb) {
      const TopCellData& cb = b.cells[static_cast<size_t>(tb)];
      TopCellData cell;
      cell.volume = ca.volume * cb.volume;
      cell.local.resize(static_cast<size_t>(out.n) + 1);
      for (int p = 0; p <= out.n; ++p) {
        LocalBlock blk;
        // gather dofs bidegree by bidegree, mass is block diagonal over them
        std::vector<std::pair<Index, Index>> spans;  // (start, size) per (q,r)
        for (int q = std::max(0, p - b.n); q <= std::min(p, a.n); ++q) {
          const int r = p - q;
          const LocalBlock& la = ca.local[static_cast<size_t>(q)];
          const LocalBlock& lb = cb.local[static_cast<size_t>(r)];
          spans.push_back({static_cast<Index>(blk.dofs.size()),
                           static_cast<Index>(la.dofs.size() * lb.dofs.size())});
          for (Index ia : la.dofs)
            for (Index ib : lb.dofs) blk.dofs.push_back(lay.id(p, q, ia, ib));
        }
        blk.mass = MatX::Zero(static_cast<Index>(blk.dofs.size()),
                              static_cast<Index>(blk.dofs.size()));
        Index span_idx = 0;
        for (int q = std::max(0, p - b.n); q <= std::min(p, a.n); ++q) {
          const int r = p - q;
          const MatX& ma = ca.local[static_cast<size_t>(q)].mass;
          const MatX& mb = cb.local[static_cast<size_t>(r)].mass;
          const auto [start, size] = spans[static_cast<size_t>(span_idx++)];
          for (Index i1 = 0; i1 < ma.rows(); ++i1)
            for (Index i2 = 0; i2 < mb.rows(); ++i2)
              for (Index j1 = 0; j1 < ma.cols(); ++j1)
                for (Index j2 = 0; j2 < mb.cols(); ++j2)
                  blk.mass(start + i1 * mb.rows() + i2, start + j1 * mb.cols() + j2) =
                      ma(i1, j1) * mb(i2, j2);
          (void)size;
        }
        cell.local[static_cast<size_t>(p)] = std::move(blk);
      }
      out.cells[static_cast<size_t>(ta * ntopB + tb)] = std::move(cell);
    }
  }

  out.neighbors.resize(static_cast<size_t>(ntopA * ntopB));
  for (Index ta = 0; ta < ntopA; ++ta)
    for (Index tb = 0; tb < ntopB; ++tb) {
      auto& nb = out.neighbors[static_cast<size_t>(ta * ntopB + tb)];
      for (Index na : a.neighbors[static_cast<size_t>(ta)]) nb.push_back(na * ntopB + tb);
      for (Index nbb : b.neighbors[static_cast<size_t>(tb)]) nb.push_back(ta * ntopB + nbb);
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  return out;
}

}  // namespace hodge
