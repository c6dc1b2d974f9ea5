#ifndef CDGA_HOMOLOGY_HPP
#define CDGA_HOMOLOGY_HPP

// Homology of dg-algebras under a degree window and a word-length cap, together with the
// exact linear solves (preimages, quasi-isomorphism corrections) used by the homotopy
// constructions.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cdga/dga.hpp"
#include "cdga/linalg.hpp"

namespace cdga {

using QVec = linalg::SparseVec<Rational>;

struct TruncationSpec {
  int deg_min = 0;
  int deg_max = 0;
  std::size_t word_cap = 4;
  std::optional<Rational> action_cap;
  /// TruncationInsufficient / NoSolutionInTruncation are retried with the cap doubled this many times.
  std::size_t max_retries = 4;
  /// Largest basis of a single degree the engine will enumerate.
  std::size_t basis_limit = 200000;

  void validate() const {
    if (word_cap < 1) throw Error(ErrorCode::InvalidInput, "word cap must be at least 1");
    if (deg_min > deg_max) throw Error(ErrorCode::InvalidInput, "degree window is empty");
  }

  TruncationSpec with_cap(std::size_t cap) const {
    TruncationSpec t = *this;
    t.word_cap = cap;
    return t;
  }

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

struct HomologyTable {
  std::map<int, std::size_t> ranks;
  TruncationSpec truncation;
  bool exact = false;

  std::size_t rank(int degree) const {
    auto it = ranks.find(degree);
    return it == ranks.end() ? 0 : it->second;
  }

  std::map<int, std::size_t> nonzero() const {
    std::map<int, std::size_t> out;
    for (const auto& [d, r] : ranks)
      if (r != 0) out.emplace(d, r);
    return out;
  }
};

/// Degrees of the window as grading classes, deduplicated, in window order.
inline std::vector<int> window_degrees(const GradingSpec& grading, int lo, int hi) {
  std::vector<int> out;
  std::set<int> seen;
  for (int d = lo; d <= hi; ++d) {
    int r = grading.reduce(d);
    if (seen.insert(r).second) out.push_back(r);
  }
  return out;
}

/// Upper bound on the word length of any monomial of the given degree, when the degree piece is
/// provably finite (no even generator of degree zero, even degrees all of one sign).
inline std::optional<std::size_t> word_length_bound(const Signature& sig, int degree) {
  std::size_t odd_count = 0;
  long long odd_abs = 0;
  long long min_even = 0;
  int even_sign = 0;
  for (const auto& g : sig.gens()) {
    if (g.odd()) {
      ++odd_count;
      odd_abs += g.degree < 0 ? -g.degree : g.degree;
      continue;
    }
    if (!sig.grading().is_integer() || g.degree == 0) return std::nullopt;
    int s = g.degree > 0 ? 1 : -1;
    if (even_sign != 0 && s != even_sign) return std::nullopt;
    even_sign = s;
    long long a = g.degree < 0 ? -g.degree : g.degree;
    if (min_even == 0 || a < min_even) min_even = a;
  }
  if (even_sign == 0) return odd_count;
  long long absdeg = degree < 0 ? -static_cast<long long>(degree) : degree;
  return odd_count + static_cast<std::size_t>((absdeg + odd_abs) / min_even);
}

/// All monomials of the given degree with word length <= cap, in canonical order.
inline std::vector<Monomial> enumerate_basis(const Signature& sig, int degree, std::size_t cap,
                                             std::size_t limit = 200000) {
  const auto& grading = sig.grading();
  const std::size_t n = sig.size();
  const int target = grading.reduce(degree);
  std::vector<long long> suffix_min(n + 1, 0);
  std::vector<long long> suffix_max(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_min[i] = std::min<long long>(suffix_min[i + 1], sig.degree(i));
    suffix_max[i] = std::max<long long>(suffix_max[i + 1], sig.degree(i));
  }
  std::vector<Monomial> out;
  std::vector<Factor> stack;
  std::function<void(std::size_t, long long, std::size_t)> dfs = [&](std::size_t i, long long deg, std::size_t len) {
    if (grading.is_integer()) {
      long long room = static_cast<long long>(cap - len);
      long long need = target - deg;
      if (need < room * suffix_min[i] || need > room * suffix_max[i]) return;
    }
    if (i == n) {
      if (grading.reduce(static_cast<int>(deg)) == target) {
        out.push_back(Monomial::from_sorted(stack));
        if (out.size() > limit) {
          throw Error(ErrorCode::TruncationInsufficient,
                      "degree " + std::to_string(degree) + " basis exceeds " + std::to_string(limit) + " monomials");
        }
      }
      return;
    }
    dfs(i + 1, deg, len);
    std::size_t max_exp = sig.odd(i) ? 1 : cap - len;
    for (std::size_t e = 1; e <= max_exp && len + e <= cap; ++e) {
      stack.push_back(Factor{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e)});
      dfs(i + 1, deg + static_cast<long long>(e) * sig.degree(i), len + e);
      stack.pop_back();
    }
  };
  dfs(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Monomial> enumerate_basis(const Dga& alg, int degree, const TruncationSpec& trunc) {
  return enumerate_basis(alg.sig(), degree, trunc.word_cap, trunc.basis_limit);
}

/// True when the cap-truncated basis contains every monomial of that degree.
inline bool basis_complete(const Signature& sig, int degree, std::size_t cap, std::size_t limit = 200000) {
  auto bound = word_length_bound(sig, degree);
  if (!bound) return false;
  if (cap >= *bound) return true;
  return enumerate_basis(sig, degree, cap, limit).size() == enumerate_basis(sig, degree, *bound, limit).size();
}

/// Assigns row ids to monomials on first sight.
class MonomialIndex {
 public:
  std::size_t id(const Monomial& m) {
    auto [it, inserted] = ids_.try_emplace(m, ids_.size());
    return it->second;
  }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = ids_.find(m);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const noexcept { return ids_.size(); }

  QVec vector(const Element& e) {
    std::map<std::size_t, Rational> entries;
    for (const auto& [m, c] : e.terms()) entries[id(m)] += c;
    return linalg::from_map(entries);
  }

 private:
  std::map<Monomial, std::size_t> ids_;
};

inline Element combination(const SignaturePtr& sig, const std::vector<Monomial>& basis, const std::vector<Rational>& coeffs) {
  Element out(sig);
  for (std::size_t j = 0; j < basis.size(); ++j) out.add_term(basis[j], coeffs[j]);
  return out;
}

/// Graded pieces and differential matrices of one algebra at a fixed word cap, built lazily.
class TruncatedComplex {
 public:
  struct Piece {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
  };

  struct Differential {
    std::vector<Element> images;  // d of each basis monomial of the source degree
    std::vector<QVec> columns;    // over the basis of the next degree
    bool leak = false;            // some image left the enumerated next-degree basis
    std::size_t rank = 0;
  };

  TruncatedComplex(Dga alg, std::size_t cap, std::size_t limit) : alg_(std::move(alg)), cap_(cap), limit_(limit) {}

  const Dga& algebra() const noexcept { return alg_; }
  std::size_t cap() const noexcept { return cap_; }

  const Piece& piece(int degree) {
    int k = alg_.grading().reduce(degree);
    auto it = pieces_.find(k);
    if (it != pieces_.end()) return it->second;
    Piece p;
    p.basis = enumerate_basis(alg_.sig(), k, cap_, limit_);
    for (std::size_t i = 0; i < p.basis.size(); ++i) p.index.emplace(p.basis[i], i);
    return pieces_.emplace(k, std::move(p)).first->second;
  }

  const Element& d(const Monomial& m) {
    auto it = d_cache_.find(m);
    if (it != d_cache_.end()) return it->second;
    Element e = extend_differential(alg_, Element::term(alg_.signature(), m, Rational(1)));
    return d_cache_.emplace(m, std::move(e)).first->second;
  }

  /// d from `degree` to degree + 1.
  const Differential& differential(int degree) {
    int k = alg_.grading().reduce(degree);
    auto it = diffs_.find(k);
    if (it != diffs_.end()) return it->second;
    Differential out;
    const Piece& src = piece(k);
    const Piece& dst = piece(k + 1);
    for (const auto& m : src.basis) {
      Element image = d(m);
      std::map<std::size_t, Rational> entries;
      for (const auto& [tm, c] : image.terms()) {
        auto pos = dst.index.find(tm);
        if (pos == dst.index.end()) {
          out.leak = true;
          continue;
        }
        entries[pos->second] += c;
      }
      out.columns.push_back(linalg::from_map(entries));
      out.images.push_back(std::move(image));
    }
    out.rank = linalg::rank(out.columns);
    return diffs_.emplace(k, std::move(out)).first->second;
  }

  bool complete(int degree) const { return basis_complete(alg_.sig(), degree, cap_, limit_); }

  /// Kernel of d on the given degree, as elements.
  std::vector<Element> cycles(int degree) {
    const auto& diff = differential(degree);
    const auto& basis = piece(degree).basis;
    // Kernel from full images so leaked terms still count.
    MonomialIndex rows;
    std::vector<QVec> cols;
    for (const auto& im : diff.images) cols.push_back(rows.vector(im));
    linalg::ColumnSpace<Rational> space(cols);
    std::vector<Element> out;
    for (const auto& k : space.kernel()) out.push_back(combination(alg_.signature(), basis, k));
    return out;
  }

 private:
  Dga alg_;
  std::size_t cap_;
  std::size_t limit_;
  std::map<int, Piece> pieces_;
  std::map<int, Differential> diffs_;
  std::map<Monomial, Element> d_cache_;
};

namespace detail {

inline bool window_leaks(TruncatedComplex& tc, const std::vector<int>& degrees) {
  for (int k : degrees) {
    if (tc.differential(k - 1).leak || tc.differential(k).leak) return true;
  }
  return false;
}

inline bool window_exact(TruncatedComplex& tc, const std::vector<int>& degrees) {
  for (int k : degrees)
    if (!tc.complete(k - 1) || !tc.complete(k) || !tc.complete(k + 1)) return false;
  return true;
}

}  // namespace detail

/// Homology ranks rank(ker d) - rank(im d) in each window degree.
inline HomologyTable homology_dims(const Dga& alg, const TruncationSpec& trunc) {
  trunc.validate();
  auto degrees = window_degrees(alg.grading(), trunc.deg_min, trunc.deg_max);
  std::size_t cap = trunc.word_cap;
  for (std::size_t attempt = 0;; ++attempt, cap *= 2) {
    TruncatedComplex tc(alg, cap, trunc.basis_limit);
    bool leak = false;
    try {
      leak = detail::window_leaks(tc, degrees);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationInsufficient) throw;
      throw Error(ErrorCode::TruncationInsufficient, "homology at word cap " + std::to_string(cap) + ": " + e.detail());
    }
    if (leak) {
      if (attempt >= trunc.max_retries) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "differential leaves the word-cap " + std::to_string(cap) + " basis after " +
                        std::to_string(attempt) + " retries");
      }
      continue;
    }
    HomologyTable table;
    table.truncation = trunc.with_cap(cap);
    for (int k : degrees) {
      std::size_t dim = tc.piece(k).basis.size();
      std::size_t out_rank = tc.differential(k).rank;
      std::size_t in_rank = tc.differential(k - 1).rank;
      table.ranks[k] = dim - out_rank - in_rank;
    }
    table.exact = detail::window_exact(tc, degrees);
    return table;
  }
}

/// Some w with dw = target, searched in the truncated basis one degree down.
inline Element solve_preimage(const Dga& alg, const Element& target, std::optional<int> degree_hint,
                              const TruncationSpec& trunc) {
  if (target.signature() != alg.signature()) throw Error(ErrorCode::MixedAlgebras, "target not in this algebra");
  if (target.is_zero()) return alg.zero();
  auto deg = target.degree();
  if (!deg) {
    if (!degree_hint) throw Error(ErrorCode::DegreeViolation, "preimage target is not homogeneous");
    deg = degree_hint;
  }
  std::size_t cap = std::max<std::size_t>(trunc.word_cap, 1);
  for (std::size_t attempt = 0;; ++attempt, cap *= 2) {
    TruncatedComplex tc(alg, cap, trunc.basis_limit);
    std::vector<Monomial> basis;
    try {
      basis = tc.piece(*deg - 1).basis;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationInsufficient) throw;
      break;
    }
    MonomialIndex rows;
    std::vector<QVec> cols;
    for (const auto& m : basis) cols.push_back(rows.vector(tc.d(m)));
    QVec rhs = rows.vector(target);
    linalg::ColumnSpace<Rational> space(cols);
    if (auto x = space.solve(rhs)) {
      Element w = combination(alg.signature(), basis, *x);
      if (!(extend_differential(alg, w) == target)) {
        throw Error(ErrorCode::NoSolutionInTruncation, "internal: preimage failed verification");
      }
      return w;
    }
    if (attempt >= trunc.max_retries) break;
  }
  throw Error(ErrorCode::NoSolutionInTruncation,
              target.to_string() + " has no preimage within word cap " + std::to_string(cap));
}

struct QisoCorrection {
  Element a;  // closed, in the source
  Element b;  // in the target, no constant term
};

/// Closed a and b with f(a) - db = cycle.
inline QisoCorrection solve_qiso_correction(const DgaMap& f, const Element& cycle, const TruncationSpec& trunc) {
  const Dga& A = f.source();
  const Dga& B = f.target();
  if (cycle.signature() != B.signature()) throw Error(ErrorCode::MixedAlgebras, "cycle not in map target");
  if (cycle.is_zero()) return QisoCorrection{A.zero(), B.zero()};
  auto deg = cycle.degree();
  if (!deg) throw Error(ErrorCode::DegreeViolation, "cycle is not homogeneous");
  std::size_t cap = std::max<std::size_t>(trunc.word_cap, 1);
  for (std::size_t attempt = 0;; ++attempt, cap *= 2) {
    TruncatedComplex ta(A, cap, trunc.basis_limit);
    TruncatedComplex tb(B, cap, trunc.basis_limit);
    std::vector<Monomial> a_basis;
    std::vector<Monomial> b_basis;
    try {
      a_basis = ta.piece(*deg).basis;
      for (const auto& m : tb.piece(*deg - 1).basis)
        if (!m.is_unit()) b_basis.push_back(m);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationInsufficient) throw;
      break;
    }
    // Rows: A-side monomials for da = 0, then B-side monomials for f(a) - db = cycle.
    MonomialIndex a_rows;
    MonomialIndex b_rows;
    std::vector<std::pair<QVec, QVec>> parts;
    for (const auto& m : a_basis) {
      Element mono = Element::term(A.signature(), m, Rational(1));
      parts.emplace_back(a_rows.vector(ta.d(m)), b_rows.vector(f.apply(mono)));
    }
    for (const auto& m : b_basis) parts.emplace_back(QVec{}, b_rows.vector(-tb.d(m)));
    QVec rhs_b = b_rows.vector(cycle);
    std::size_t offset = a_rows.size();
    auto join = [&](const QVec& top, const QVec& bottom) {
      QVec v = top;
      for (const auto& [i, c] : bottom) v.emplace_back(offset + i, c);
      return v;
    };
    std::vector<QVec> cols;
    for (const auto& [top, bottom] : parts) cols.push_back(join(top, bottom));
    linalg::ColumnSpace<Rational> space(cols);
    if (auto x = space.solve(join(QVec{}, rhs_b))) {
      std::vector<Rational> xa(x->begin(), x->begin() + static_cast<long>(a_basis.size()));
      std::vector<Rational> xb(x->begin() + static_cast<long>(a_basis.size()), x->end());
      QisoCorrection out{combination(A.signature(), a_basis, xa), combination(B.signature(), b_basis, xb)};
      if (!extend_differential(A, out.a).is_zero() ||
          !(f.apply(out.a) - extend_differential(B, out.b) == cycle)) {
        throw Error(ErrorCode::NoSolutionInTruncation, "internal: correction failed verification");
      }
      return out;
    }
    if (attempt >= trunc.max_retries) break;
  }
  throw Error(ErrorCode::NoSolutionInTruncation,
              "no closed a with f(a) = " + cycle.to_string() + " + db within word cap " + std::to_string(cap));
}

struct QisoCheck {
  bool qiso = false;
  bool exact = false;
  HomologyTable source;
  HomologyTable target;
  std::map<int, std::size_t> induced_rank;
};

/// Brute-force comparison of the truncated homologies and the rank of the induced map.
inline QisoCheck qiso_on_window(const DgaMap& f, const TruncationSpec& trunc) {
  trunc.validate();
  const Dga& A = f.source();
  const Dga& B = f.target();
  if (!(A.grading() == B.grading())) throw Error(ErrorCode::ObjectMismatch, "source and target gradings differ");
  auto degrees = window_degrees(A.grading(), trunc.deg_min, trunc.deg_max);
  std::size_t cap = trunc.word_cap;
  for (std::size_t attempt = 0;; ++attempt, cap *= 2) {
    TruncatedComplex ta(A, cap, trunc.basis_limit);
    TruncatedComplex tb(B, cap, trunc.basis_limit);
    if (detail::window_leaks(ta, degrees) || detail::window_leaks(tb, degrees)) {
      if (attempt >= trunc.max_retries) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "differential leaves the word-cap " + std::to_string(cap) + " basis");
      }
      continue;
    }
    QisoCheck out;
    out.source.truncation = out.target.truncation = trunc.with_cap(cap);
    out.qiso = true;
    for (int k : degrees) {
      std::size_t ha = ta.piece(k).basis.size() - ta.differential(k).rank - ta.differential(k - 1).rank;
      std::size_t hb = tb.piece(k).basis.size() - tb.differential(k).rank - tb.differential(k - 1).rank;
      out.source.ranks[k] = ha;
      out.target.ranks[k] = hb;
      MonomialIndex rows;
      linalg::Echelon<Rational> span;
      for (const auto& im : tb.differential(k - 1).images) span.add(rows.vector(im));
      std::size_t base = span.rank();
      for (const auto& z : ta.cycles(k)) span.add(rows.vector(f.apply(z)));
      std::size_t induced = span.rank() - base;
      out.induced_rank[k] = induced;
      if (ha != hb || induced != ha) out.qiso = false;
    }
    out.exact = detail::window_exact(ta, degrees) && detail::window_exact(tb, degrees);
    out.source.exact = detail::window_exact(ta, degrees);
    out.target.exact = detail::window_exact(tb, degrees);
    return out;
  }
}

inline bool map_is_qiso_on_window(const DgaMap& f, const TruncationSpec& trunc) { return qiso_on_window(f, trunc).qiso; }

}  // namespace cdga

#endif  // CDGA_HOMOLOGY_HPP
