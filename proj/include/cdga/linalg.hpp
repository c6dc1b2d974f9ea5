#ifndef CDGA_LINALG_HPP
#define CDGA_LINALG_HPP

// Exact sparse linear algebra over a field: incremental column echelon forms that track
// how every reduced vector was combined from the inserted columns.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cdga/rational.hpp"

namespace cdga::linalg {

/// Entries sorted by index, no explicit zeros.
template <class F>
using SparseVec = std::vector<std::pair<std::size_t, F>>;

/// y += a * x
template <class F>
void axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
  if (a == F(0) || x.empty()) return;
  SparseVec<F> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      F v = y[i].second + a * x[j].second;
      if (v != F(0)) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

template <class F>
void scale(SparseVec<F>& v, const F& a) {
  for (auto& [i, x] : v) x *= a;
}

template <class F>
F entry(const SparseVec<F>& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& p, std::size_t k) { return p.first < k; });
  return (it != v.end() && it->first == index) ? it->second : F(0);
}

template <class F>
SparseVec<F> from_map(const std::map<std::size_t, F>& m) {
  SparseVec<F> v;
  for (const auto& [i, x] : m)
    if (x != F(0)) v.emplace_back(i, x);
  return v;
}

/// Column echelon form built one column at a time. Each stored pivot column has a distinct
/// leading (smallest) row index with coefficient one. For every reduction the combination of
/// inserted columns is tracked so solutions and kernel vectors come out directly.
template <class F>
class Echelon {
 public:
  struct Reduction {
    SparseVec<F> residual;  // v - sum_j combo[j] * column_j
    SparseVec<F> combo;     // over inserted-column ids
  };

  /// Inserts a column; returns its id. Columns that reduce to zero become kernel vectors.
  std::size_t add(SparseVec<F> column) {
    std::size_t id = next_id_++;
    Reduction r = reduce(std::move(column));
    // residual = column - sum combo * cols  => record relation with the new column itself.
    SparseVec<F> combo = std::move(r.combo);
    scale(combo, F(-1));
    axpy(combo, F(1), SparseVec<F>{{id, F(1)}});
    if (r.residual.empty()) {
      kernel_.push_back(std::move(combo));
    } else {
      F lead = r.residual.front().second;
      F inv = F(1) / lead;
      scale(r.residual, inv);
      scale(combo, inv);
      std::size_t row = r.residual.front().first;
      pivot_of_row_.emplace(row, pivots_.size());
      pivots_.push_back(Pivot{row, std::move(r.residual), std::move(combo), id});
    }
    return id;
  }

  Reduction reduce(SparseVec<F> v) const {
    Reduction out;
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivot_of_row_.find(v[pos].first);
      if (it == pivot_of_row_.end()) {
        ++pos;
        continue;
      }
      const Pivot& p = pivots_[it->second];
      F c = v[pos].second;
      axpy(v, F(-c), p.column);
      axpy(out.combo, c, p.combo);
    }
    out.residual = std::move(v);
    return out;
  }

  bool in_span(const SparseVec<F>& v) const { return reduce(v).residual.empty(); }

  /// Coefficients x over inserted columns with sum x_j col_j = v, if v is in the span.
  std::optional<SparseVec<F>> solve(const SparseVec<F>& v) const {
    Reduction r = reduce(v);
    if (!r.residual.empty()) return std::nullopt;
    return std::move(r.combo);
  }

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t columns() const noexcept { return next_id_; }
  const std::vector<SparseVec<F>>& kernel() const noexcept { return kernel_; }

  /// Ids of columns that increased the rank when inserted.
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> ids;
    for (const auto& p : pivots_) ids.push_back(p.source_id);
    return ids;
  }

 private:
  struct Pivot {
    std::size_t row;
    SparseVec<F> column;
    SparseVec<F> combo;
    std::size_t source_id;
  };

  std::vector<Pivot> pivots_;
  std::map<std::size_t, std::size_t> pivot_of_row_;
  std::vector<SparseVec<F>> kernel_;
  std::size_t next_id_ = 0;
};

/// Column insertion order: smallest support first, ties by index. Deterministic.
template <class F>
std::vector<std::size_t> support_order(const std::vector<SparseVec<F>>& columns) {
  std::vector<std::size_t> order(columns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return columns[a].size() < columns[b].size(); });
  return order;
}

/// Echelon of a column set inserted in support order; ids in the result refer to original indices.
template <class F>
class ColumnSpace {
 public:
  explicit ColumnSpace(const std::vector<SparseVec<F>>& columns) : n_(columns.size()) {
    auto order = support_order(columns);
    for (std::size_t k : order) {
      std::size_t id = echelon_.add(columns[k]);
      id_to_column_.resize(id + 1);
      id_to_column_[id] = k;
    }
  }

  std::size_t rank() const { return echelon_.rank(); }

  std::optional<std::vector<F>> solve(const SparseVec<F>& v) const {
    auto combo = echelon_.solve(v);
    if (!combo) return std::nullopt;
    std::vector<F> x(n_, F(0));
    for (const auto& [id, c] : *combo) x[id_to_column_[id]] = c;
    return x;
  }

  /// Kernel basis expressed over the original column indices.
  std::vector<std::vector<F>> kernel() const {
    std::vector<std::vector<F>> out;
    for (const auto& k : echelon_.kernel()) {
      std::vector<F> x(n_, F(0));
      for (const auto& [id, c] : k) x[id_to_column_[id]] = c;
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  std::size_t n_;
  Echelon<F> echelon_;
  std::vector<std::size_t> id_to_column_;
};

/// Dense matrix, row-major.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  SparseVec<F> column(std::size_t c) const {
    SparseVec<F> v;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, c) != F(0)) v.emplace_back(r, (*this)(r, c));
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x == F(0); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == F(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
std::size_t rank(const std::vector<SparseVec<F>>& columns) {
  return ColumnSpace<F>(columns).rank();
}

}  // namespace cdga::linalg

#endif  // CDGA_LINALG_HPP
