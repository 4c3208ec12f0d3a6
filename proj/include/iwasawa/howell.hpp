#pragma once

#include <optional>
#include <vector>

#include "iwasawa/modular.hpp"

namespace iwa {

using Row = std::vector<u64>;
using RowMatrix = std::vector<Row>;

/// Howell normal form of a row span over Z/p^n.
///
/// Echelon with pivots p^v, entries above a pivot reduced below p^v, and the
/// annihilator rows p^(n-v)*row folded in so that every subspan with leading
/// zeros is spanned by the rows that have them.
class HowellForm {
 public:
  struct Pivot {
    std::size_t row;
    std::size_t col;
    int val;
  };

  HowellForm(const Modulus& mod, RowMatrix rows, std::size_t cols) : mod_(mod), cols_(cols) {
    for (auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("HowellForm: ragged rows");
      for (auto& x : r) x = mod.reduce_u(x);
    }
    build(std::move(rows));
  }

  const Modulus& modulus() const { return mod_; }
  std::size_t cols() const { return cols_; }
  const RowMatrix& rows() const { return rows_; }
  const std::vector<Pivot>& pivots() const { return pivots_; }

  /// log_p of the number of elements in the span.
  long log_size() const {
    long s = 0;
    for (const auto& pv : pivots_) s += mod_.precision() - pv.val;
    return s;
  }

  /// Remainder of v after reduction by the pivots whose column is < col_limit.
  Row reduce(Row v, std::size_t col_limit = SIZE_MAX) const {
    for (const auto& pv : pivots_) {
      if (pv.col >= col_limit) break;
      u64 x = v[pv.col];
      if (x == 0) continue;
      u64 pk = mod_.p_power(pv.val);
      u64 f = x / pk;
      if (f == 0) continue;
      sub_scaled(v, rows_[pv.row], f);
    }
    return v;
  }

  bool contains(const Row& v) const {
    if (v.size() != cols_) throw std::invalid_argument("HowellForm::contains: wrong length");
    Row w(v);
    for (auto& x : w) x = mod_.reduce_u(x);
    for (const auto& pv : pivots_) {
      // every column before the pivot has been cleared
      for (std::size_t c = 0; c < pv.col; ++c)
        if (w[c] != 0) return false;
      u64 pk = mod_.p_power(pv.val);
      if (w[pv.col] % pk != 0) return false;
      if (w[pv.col]) sub_scaled(w, rows_[pv.row], w[pv.col] / pk);
    }
    for (u64 x : w)
      if (x != 0) return false;
    return true;
  }

 private:
  void sub_scaled(Row& v, const Row& r, u64 f) const {
    for (std::size_t c = 0; c < cols_; ++c)
      if (r[c]) v[c] = mod_.sub(v[c], mod_.mul(f, r[c]));
  }

  void build(RowMatrix a) {
    const int n = mod_.precision();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < cols_ && pr < a.size(); ++col) {
      std::size_t best = SIZE_MAX;
      int best_v = kInfiniteValuation;
      for (std::size_t i = pr; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        int v = mod_.val(a[i][col]);
        if (v < best_v) {
          best_v = v;
          best = i;
          if (v == 0) break;
        }
      }
      if (best == SIZE_MAX) continue;
      std::swap(a[pr], a[best]);
      Row& piv = a[pr];
      u64 pk = mod_.p_power(best_v);
      u64 unit = piv[col] / pk;
      u64 uinv = mod_.inv(unit);
      for (auto& x : piv) x = mod_.mul(x, uinv);
      for (std::size_t i = pr + 1; i < a.size(); ++i) {
        u64 x = a[i][col];
        if (x == 0) continue;
        sub_scaled(a[i], piv, x / pk);
      }
      if (best_v > 0) {
        Row ann(piv);
        u64 s = mod_.p_power(n - best_v);
        bool nz = false;
        for (auto& x : ann) {
          x = mod_.mul(x, s);
          nz |= x != 0;
        }
        if (nz) a.push_back(std::move(ann));
      }
      pivots_.push_back({pr, col, best_v});
      ++pr;
    }
    a.resize(pr);
    rows_ = std::move(a);
    // reduce above each pivot
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const auto& pv = pivots_[k];
      u64 pk = mod_.p_power(pv.val);
      for (std::size_t i = 0; i < pv.row; ++i) {
        u64 x = rows_[i][pv.col];
        if (x >= pk) sub_scaled(rows_[i], rows_[pv.row], x / pk);
      }
    }
  }

  Modulus mod_;
  std::size_t cols_;
  RowMatrix rows_;
  std::vector<Pivot> pivots_;
};

/// The map x -> A x for A given column by column (A has out_dim rows).
///
/// Caches the Howell form of [A^T | I] so that kernel and solve queries
/// share one elimination.
class LinearSystem {
 public:
  LinearSystem(const Modulus& mod, const RowMatrix& columns, std::size_t out_dim)
      : mod_(mod), in_(columns.size()), out_(out_dim), hf_(mod, augmented(mod, columns, out_dim), out_dim + columns.size()),
        image_(mod, image_rows(columns), out_dim) {}

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const HowellForm& image() const { return image_; }

  /// Howell basis of the kernel.
  RowMatrix kernel() const {
    RowMatrix k;
    for (const auto& pv : hf_.pivots())
      if (pv.col >= out_) k.emplace_back(hf_.rows()[pv.row].begin() + out_, hf_.rows()[pv.row].end());
    return k;
  }
  /// log_p |ker|.
  long kernel_log_size() const {
    long s = 0;
    for (const auto& pv : hf_.pivots())
      if (pv.col >= out_) s += mod_.precision() - pv.val;
    return s;
  }
  /// Some x with A x = b, if one exists.
  std::optional<Row> solve(const Row& b) const {
    if (b.size() != out_) throw std::invalid_argument("LinearSystem::solve: wrong length");
    Row v(out_ + in_, 0);
    for (std::size_t i = 0; i < out_; ++i) v[i] = mod_.reduce_u(b[i]);
    v = hf_.reduce(std::move(v), out_);
    for (std::size_t i = 0; i < out_; ++i)
      if (v[i] != 0) return std::nullopt;
    Row x(in_);
    for (std::size_t j = 0; j < in_; ++j) x[j] = mod_.neg(v[out_ + j]);
    return x;
  }
  Row apply(const Row& x, const RowMatrix& columns) const {
    Row y(out_, 0);
    for (std::size_t j = 0; j < in_; ++j) {
      if (x[j] == 0) continue;
      for (std::size_t i = 0; i < out_; ++i) y[i] = mod_.add(y[i], mod_.mul(x[j], columns[j][i]));
    }
    return y;
  }

 private:
  static RowMatrix augmented(const Modulus& mod, const RowMatrix& columns, std::size_t out) {
    RowMatrix a;
    a.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != out) throw std::invalid_argument("LinearSystem: column length mismatch");
      Row r(out + columns.size(), 0);
      std::copy(columns[j].begin(), columns[j].end(), r.begin());
      r[out + j] = mod.reduce_u(1);
      a.push_back(std::move(r));
    }
    return a;
  }
  static RowMatrix image_rows(const RowMatrix& columns) { return columns; }

  Modulus mod_;
  std::size_t in_, out_;
  HowellForm hf_;
  HowellForm image_;
};

}  // namespace iwa
