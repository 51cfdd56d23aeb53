#pragma once

#include "hodge/complex_data.hpp"

namespace hodge {

/// Degree-p dofs of a tensor product split into bidegree blocks (q, p-q).
/// Blocks are ordered by ascending q; within a block the id is
/// iA * countB + iB. Product top cells are numbered tA * ntopB + tB.
struct ProductLayout {
  int nA = 0, nB = 0;
  std::vector<Index> countsA, countsB;

  Index block_count(int q, int r) const {
    if (q < 0 || q > nA || r < 0 || r > nB) return 0;
    return countsA[static_cast<size_t>(q)] * countsB[static_cast<size_t>(r)];
  }
  Index block_offset(int p, int q) const {
    Index off = 0;
    for (int qq = 0; qq < q; ++qq) off += block_count(qq, p - qq);
    return off;
  }
  Index degree_count(int p) const {
    Index c = 0;
    for (int q = 0; q <= p; ++q) c += block_count(q, p - q);
    return c;
  }
  Index id(int p, int q, Index ia, Index ib) const {
    return block_offset(p, q) + ia * countsB[static_cast<size_t>(p - q)] + ib;
  }
};

/// Cubical tensor product at the cochain level. Coboundary carries the
/// Koszul sign d(a (x) b) = da (x) b + (-1)^|a| a (x) db; masses are graded
/// tensor products of the factor masses, assembled per product cell so that
/// conformal weights stay per-cell.
CochainComplex tensor_product_complex(const CochainComplex& a, const CochainComplex& b);

ProductLayout product_layout(const CochainComplex& a, const CochainComplex& b);

}  // namespace hodge
