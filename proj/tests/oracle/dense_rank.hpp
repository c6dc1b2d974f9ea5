#ifndef CDGA_TEST_DENSE_RANK_HPP
#define CDGA_TEST_DENSE_RANK_HPP

// Reference homology: brute-force exponent enumeration and dense fraction-exact Gaussian
// elimination. Shares only the algebra arithmetic with the library, none of its linear algebra.

#include <map>
#include <vector>

#include "cdga/dga.hpp"

namespace oracle {

using cdga::Rational;

inline std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Monomials of the given degree and word length <= cap, by enumerating exponent vectors.
inline std::vector<cdga::Element> monomials(const cdga::Dga& alg, int degree, std::size_t cap) {
  const auto& sig = alg.sig();
  std::vector<cdga::Element> out;
  std::vector<unsigned> exps(sig.size(), 0);
  for (;;) {
    std::size_t len = 0;
    long long deg = 0;
    bool ok = true;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      len += exps[i];
      deg += static_cast<long long>(exps[i]) * sig.degree(i);
      if (sig.odd(i) && exps[i] > 1) ok = false;
    }
    if (ok && len <= cap && sig.grading().reduce(static_cast<int>(deg)) == sig.grading().reduce(degree)) {
      cdga::Element m = alg.one();
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (unsigned k = 0; k < exps[i]; ++k) m = m * alg.gen(i);
      out.push_back(m);
    }
    std::size_t i = 0;
    while (i < exps.size()) {
      if (++exps[i] <= cap) break;
      exps[i] = 0;
      ++i;
    }
    if (i == exps.size()) break;
  }
  return out;
}

/// Rank of the span of the given elements (coefficients over the monomials they use).
inline std::size_t span_rank(const std::vector<cdga::Element>& elems) {
  std::map<cdga::Monomial, std::size_t> index;
  for (const auto& e : elems)
    for (const auto& [m, c] : e.terms()) index.try_emplace(m, index.size());
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : elems) {
    std::vector<Rational> row(index.size(), Rational(0));
    for (const auto& [m, c] : e.terms()) row[index[m]] = c;
    rows.push_back(std::move(row));
  }
  return dense_rank(std::move(rows));
}

inline std::size_t homology_rank(const cdga::Dga& alg, int k, std::size_t cap) {
  auto here = monomials(alg, k, cap);
  auto below = monomials(alg, k - 1, cap);
  std::vector<cdga::Element> d_here;
  std::vector<cdga::Element> d_below;
  for (const auto& m : here) d_here.push_back(cdga::extend_differential(alg, m));
  for (const auto& m : below) d_below.push_back(cdga::extend_differential(alg, m));
  return here.size() - span_rank(d_here) - span_rank(d_below);
}

inline std::map<int, std::size_t> homology(const cdga::Dga& alg, int lo, int hi, std::size_t cap) {
  std::map<int, std::size_t> out;
  for (int k = lo; k <= hi; ++k) out[k] = homology_rank(alg, k, cap);
  return out;
}

}  // namespace oracle

#endif
