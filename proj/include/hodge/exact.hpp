#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <utility>
#include <vector>

#include "hodge/types.hpp"

namespace hodge::exact {

using Rational = boost::multiprecision::cpp_rational;
using SparseVecQ = std::vector<std::pair<Index, Rational>>;  // sorted by index

/// Sparse Gaussian elimination over an exact scalar (no pivoting by
/// magnitude, no floats). Pivots prefer short rows, sparse columns and
/// unit entries, which keeps entries small on incidence-like matrices.
template <class Scalar>
class SparseGaussian {
public:
  using Entry = std::pair<Index, Scalar>;
  using Row = std::vector<Entry>;

  SparseGaussian(Index rows, Index cols) : cols_(cols), rows_(rows) {}

  void add(Index r, Index c, Scalar v) {
    if (v != Scalar(0)) rows_[static_cast<size_t>(r)].push_back({c, std::move(v)});
  }

  /// Row-echelon elimination; call once. Afterwards rank()/pivots()/kernel.
  void eliminate() {
    normalize_rows();
    std::vector<char> row_active(rows_.size(), 1);
    std::vector<char> col_used(static_cast<size_t>(cols_), 0);
    // column -> candidate rows (lazily maintained)
    std::vector<std::vector<Index>> col_rows(static_cast<size_t>(cols_));
    for (size_t r = 0; r < rows_.size(); ++r)
      for (const auto& e : rows_[r]) col_rows[static_cast<size_t>(e.first)].push_back(static_cast<Index>(r));

    auto live_count = [&](Index c) {
      auto& v = col_rows[static_cast<size_t>(c)];
      v.erase(std::remove_if(v.begin(), v.end(),
                             [&](Index r) {
                               return !row_active[static_cast<size_t>(r)] ||
                                      !row_has(rows_[static_cast<size_t>(r)], c);
                             }),
              v.end());
      return static_cast<Index>(v.size());
    };

    while (true) {
      // pick the shortest active row (deterministic tie-break by index)
      Index best_row = -1;
      size_t best_nnz = 0;
      for (size_t r = 0; r < rows_.size(); ++r) {
        if (!row_active[r] || rows_[r].empty()) continue;
        if (best_row < 0 || rows_[r].size() < best_nnz) {
          best_row = static_cast<Index>(r);
          best_nnz = rows_[r].size();
          if (best_nnz == 1) break;
        }
      }
      if (best_row < 0) break;

      // inside the row, prefer unit entries in sparse columns
      const Row& prow = rows_[static_cast<size_t>(best_row)];
      Index best_col = -1;
      Index best_score = 0;
      bool best_unit = false;
      for (const auto& e : prow) {
        const bool unit = (e.second == Scalar(1) || e.second == Scalar(-1));
        const Index score = live_count(e.first);
        if (best_col < 0 || (unit && !best_unit) ||
            (unit == best_unit && score < best_score)) {
          best_col = e.first;
          best_score = score;
          best_unit = unit;
        }
      }

      // eliminate best_col from every other active row
      const Scalar pivot_val = row_get(prow, best_col);
      for (Index rj : col_rows[static_cast<size_t>(best_col)]) {
        if (rj == best_row || !row_active[static_cast<size_t>(rj)]) continue;
        Row& target = rows_[static_cast<size_t>(rj)];
        const Scalar v = row_get(target, best_col);
        if (v == Scalar(0)) continue;
        Scalar factor = v / pivot_val;
        Row merged;
        merged.reserve(target.size() + prow.size());
        auto it = target.begin();
        auto ip = prow.begin();
        while (it != target.end() || ip != prow.end()) {
          if (ip == prow.end() || (it != target.end() && it->first < ip->first)) {
            merged.push_back(*it++);
          } else if (it == target.end() || ip->first < it->first) {
            Scalar nv = -factor * ip->second;
            if (nv != Scalar(0)) {
              merged.push_back({ip->first, std::move(nv)});
              col_rows[static_cast<size_t>(ip->first)].push_back(rj);
            }
            ++ip;
          } else {
            Scalar nv = it->second - factor * ip->second;
            if (nv != Scalar(0)) merged.push_back({it->first, std::move(nv)});
            ++it;
            ++ip;
          }
        }
        target = std::move(merged);
      }
      row_active[static_cast<size_t>(best_row)] = 0;
      col_used[static_cast<size_t>(best_col)] = 1;
      pivots_.push_back({best_row, best_col});
    }
    (void)col_used;
  }

  Index rank() const { return static_cast<Index>(pivots_.size()); }
  Index cols() const { return cols_; }
  const std::vector<std::pair<Index, Index>>& pivots() const { return pivots_; }

  /// Basis of {x : A x = 0}, one sparse column per free column of A.
  std::vector<SparseVecQ> kernel_basis() const
    requires std::is_same_v<Scalar, Rational>
  {
    std::vector<char> is_pivot_col(static_cast<size_t>(cols_), 0);
    for (const auto& [r, c] : pivots_) is_pivot_col[static_cast<size_t>(c)] = 1;

    std::vector<SparseVecQ> basis;
    std::vector<Rational> x(static_cast<size_t>(cols_), Rational(0));
    for (Index f = 0; f < cols_; ++f) {
      if (is_pivot_col[static_cast<size_t>(f)]) continue;
      std::vector<Index> touched;
      x[static_cast<size_t>(f)] = 1;
      touched.push_back(f);
      // pivot rows in reverse elimination order form a triangular system
      for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        const Row& row = rows_[static_cast<size_t>(it->first)];
        Rational dot(0), pv(0);
        for (const auto& e : row) {
          if (e.first == it->second)
            pv = e.second;
          else if (x[static_cast<size_t>(e.first)] != 0)
            dot += e.second * x[static_cast<size_t>(e.first)];
        }
        if (dot != 0) {
          x[static_cast<size_t>(it->second)] = -dot / pv;
          touched.push_back(it->second);
        }
      }
      SparseVecQ col;
      std::sort(touched.begin(), touched.end());
      for (Index c : touched) {
        if (x[static_cast<size_t>(c)] != 0) col.push_back({c, x[static_cast<size_t>(c)]});
        x[static_cast<size_t>(c)] = 0;
      }
      basis.push_back(std::move(col));
    }
    return basis;
  }

private:
  static bool row_has(const Row& row, Index c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, Index k) { return e.first < k; });
    return it != row.end() && it->first == c;
  }
  static Scalar row_get(const Row& row, Index c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, Index k) { return e.first < k; });
    return (it != row.end() && it->first == c) ? it->second : Scalar(0);
  }
  void normalize_rows() {
    for (auto& row : rows_) {
      std::sort(row.begin(), row.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
      Row out;
      for (auto& e : row) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(std::move(e));
      }
      out.erase(std::remove_if(out.begin(), out.end(),
                               [](const Entry& e) { return e.second == Scalar(0); }),
                out.end());
      row = std::move(out);
    }
  }

  Index cols_;
  std::vector<Row> rows_;
  std::vector<std::pair<Index, Index>> pivots_;
};

/// Rank over the rationals of an integer sparse matrix.
Index rank_q(const SpMatI& a);

/// Rank over the rationals of a set of sparse rational columns (length = rows).
Index rank_q_columns(Index rows, const std::vector<SparseVecQ>& columns);

/// Exact kernel basis {x : a x = 0}; columns over Q.
std::vector<SparseVecQ> kernel_basis_exact(const SpMatI& a);

/// Kernel basis converted to a double sparse matrix (one column per vector).
SpMat kernel_basis(const SpMatI& a);

/// Double conversion of sparse rational columns.
SpMat to_double(Index rows, const std::vector<SparseVecQ>& columns);

}  // namespace hodge::exact
