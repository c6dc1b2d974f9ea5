#ifndef CDGA_LINEARIZATION_HPP
#define CDGA_LINEARIZATION_HPP

// Shearing by an augmentation and the linearized complex (indecomposables) of an augmented
// Sullivan algebra, with the induced maps and the linearized weak-equivalence test.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdga/dga.hpp"
#include "cdga/homology.hpp"
#include "cdga/linalg.hpp"

namespace cdga {

using QMatrix = linalg::Matrix<Rational>;

/// Generator images v -> v + sign * eps(v).
inline std::vector<Element> shifted_generators(const Dga& alg, const Augmentation& eps, int sign) {
  std::vector<Element> images;
  images.reserve(alg.size());
  for (std::size_t i = 0; i < alg.size(); ++i) {
    Element e = alg.gen(i);
    if (!eps.value(i).is_zero()) e += alg.scalar(sign > 0 ? eps.value(i) : Rational(-eps.value(i)));
    images.push_back(std::move(e));
  }
  return images;
}

/// Same algebra with the twisted differential d_eps(v) = dv evaluated at v -> v + eps(v).
/// The zero augmentation is an augmentation of the result.
inline Dga sheared_dga(const Dga& alg, const Augmentation& eps) {
  if (eps.owner().signature() != alg.signature()) throw Error(ErrorCode::ObjectMismatch, "augmentation of another algebra");
  if (eps.is_zero()) return alg;
  auto plus = shifted_generators(alg, eps, +1);
  std::vector<Element> diff;
  diff.reserve(alg.size());
  for (const auto& dv : alg.diffs()) diff.push_back(substitute(dv, plus, alg.signature()));
  return Dga(alg.signature(), std::move(diff), alg.presentation());
}

/// The algebra automorphism v -> v - eps(v), as a dg-map from the sheared dga to alg.
inline DgaMap shear(const Dga& alg, const Augmentation& eps) {
  return DgaMap(sheared_dga(alg, eps), alg, shifted_generators(alg, eps, -1));
}

/// Inverse of shear: v -> v + eps(v), from alg to the sheared dga.
inline DgaMap unshear(const Dga& alg, const Augmentation& eps) {
  Dga sheared = sheared_dga(alg, eps);
  return DgaMap(alg, sheared, shifted_generators(sheared, Augmentation(sheared, eps.values()), +1));
}

/// Word-length-one part of an element, as coordinates over the generators.
inline QVec linear_coordinates(const Element& e) {
  std::map<std::size_t, Rational> entries;
  for (const auto& [m, c] : e.terms())
    if (m.length() == 1) entries[m.factors().front().gen] += c;
  return linalg::from_map(entries);
}

struct LinearComplex {
  std::vector<std::string> names;
  std::vector<int> degrees;
  /// Column j holds the linear part of d_eps(v_j) in generator coordinates.
  QMatrix differential;

  std::size_t size() const noexcept { return names.size(); }
};

inline LinearComplex linearized_complex(const Dga& alg, const Augmentation& eps) {
  Dga twisted = sheared_dga(alg, eps);
  LinearComplex lc;
  const std::size_t n = alg.size();
  lc.differential = QMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    lc.names.push_back(alg.sig().gen(j).name);
    lc.degrees.push_back(alg.sig().degree(j));
    for (const auto& [i, c] : linear_coordinates(twisted.diff(j))) lc.differential(i, j) = c;
  }
  if (!(lc.differential * lc.differential).is_zero()) {
    throw Error(ErrorCode::D2Violation, "linearized differential does not square to zero");
  }
  return lc;
}

/// Matrix of the linearized map: column j is the linear part of the sheared image of source generator j.
inline QMatrix linearized_map(const DgaMap& f, const Augmentation& eps, const Augmentation& mu) {
  if (!pointed(f, eps, mu)) throw Error(ErrorCode::NotPointed, "map does not carry the source augmentation to the target one");
  const Dga& B = f.target();
  auto plus_mu = shifted_generators(B, mu, +1);
  QMatrix m(B.size(), f.source().size());
  for (std::size_t j = 0; j < f.source().size(); ++j) {
    // f(v - eps(v)) = f(v) - eps(v); then express in sheared target coordinates.
    Element image = f.image(j) - B.scalar(eps.value(j));
    Element sheared = substitute(image, plus_mu, B.signature());
    for (const auto& [i, c] : linear_coordinates(sheared)) m(i, j) = c;
  }
  return m;
}

namespace detail {

inline std::vector<std::size_t> generators_in_degree(const std::vector<int>& degrees, const GradingSpec& g, int k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] == g.reduce(k)) idx.push_back(i);
  return idx;
}

inline std::vector<QVec> columns_of(const QMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<QVec> out;
  for (std::size_t j : cols) out.push_back(m.column(j));
  return out;
}

/// Cycle basis of the linear complex in degree k, as coordinate vectors.
inline std::vector<QVec> linear_cycles(const LinearComplex& lc, const GradingSpec& g, int k) {
  auto cols = generators_in_degree(lc.degrees, g, k);
  linalg::ColumnSpace<Rational> space(columns_of(lc.differential, cols));
  std::vector<QVec> out;
  for (const auto& kv : space.kernel()) {
    std::map<std::size_t, Rational> entries;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (!kv[t].is_zero()) entries[cols[t]] = kv[t];
    out.push_back(linalg::from_map(entries));
  }
  return out;
}

inline QVec apply(const QMatrix& m, const QVec& x) {
  std::map<std::size_t, Rational> entries;
  for (const auto& [j, c] : x)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) entries[i] += m(i, j) * c;
  return linalg::from_map(entries);
}

inline std::vector<int> default_linear_window(const LinearComplex& lc, const GradingSpec& g) {
  if (!g.is_integer()) {
    std::vector<int> all;
    for (int k = 0; k < *g.modulus(); ++k) all.push_back(k);
    return all;
  }
  if (lc.degrees.empty()) return {};
  int lo = *std::min_element(lc.degrees.begin(), lc.degrees.end());
  int hi = *std::max_element(lc.degrees.begin(), lc.degrees.end());
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

inline std::size_t linear_rank(const LinearComplex& lc, const GradingSpec& g, int k) {
  return linalg::rank(columns_of(lc.differential, generators_in_degree(lc.degrees, g, k)));
}

}  // namespace detail

struct DegreeWindow {
  int lo = 0;
  int hi = 0;
};

inline HomologyTable linear_homology(const LinearComplex& lc, const GradingSpec& grading,
                                     std::optional<DegreeWindow> window = std::nullopt) {
  std::vector<int> degrees = window ? window_degrees(grading, window->lo, window->hi)
                                    : detail::default_linear_window(lc, grading);
  HomologyTable table;
  table.exact = true;
  table.truncation.word_cap = 1;
  if (!degrees.empty()) {
    table.truncation.deg_min = window ? window->lo : degrees.front();
    table.truncation.deg_max = window ? window->hi : degrees.back();
  }
  for (int k : degrees) {
    std::size_t dim = detail::generators_in_degree(lc.degrees, grading, k).size();
    table.ranks[k] = dim - detail::linear_rank(lc, grading, k) - detail::linear_rank(lc, grading, k - 1);
  }
  return table;
}

/// Linearized homology; finite and exact, no word cap involved.
inline HomologyTable linearized_homology(const Dga& alg, const Augmentation& eps,
                                         std::optional<DegreeWindow> window = std::nullopt) {
  return linear_homology(linearized_complex(alg, eps), alg.grading(), window);
}

struct LinearQisoCheck {
  bool qiso = true;
  HomologyTable source;
  HomologyTable target;
  std::map<int, std::size_t> induced_rank;
};

inline LinearQisoCheck linearized_qiso(const DgaMap& f, const Augmentation& eps, const Augmentation& mu,
                                       std::optional<DegreeWindow> window = std::nullopt) {
  QMatrix lf = linearized_map(f, eps, mu);
  const auto& grading = f.source().grading();
  LinearComplex la = linearized_complex(f.source(), eps);
  LinearComplex lb = linearized_complex(f.target(), mu);
  std::vector<int> degrees;
  if (window) {
    degrees = window_degrees(grading, window->lo, window->hi);
  } else {
    std::set<int> all;
    for (int d : detail::default_linear_window(la, grading)) all.insert(d);
    for (int d : detail::default_linear_window(lb, grading)) all.insert(d);
    degrees.assign(all.begin(), all.end());
  }
  LinearQisoCheck out;
  out.source = linear_homology(la, grading, window);
  out.target = linear_homology(lb, grading, window);
  for (int k : degrees) {
    std::size_t ha = out.source.rank(k);
    std::size_t hb = out.target.rank(k);
    if (!window) {
      ha = linear_homology(la, grading, DegreeWindow{k, k}).rank(grading.reduce(k));
      hb = linear_homology(lb, grading, DegreeWindow{k, k}).rank(grading.reduce(k));
    }
    linalg::Echelon<Rational> span;
    for (std::size_t j : detail::generators_in_degree(lb.degrees, grading, k - 1)) span.add(lb.differential.column(j));
    std::size_t base = span.rank();
    for (const auto& z : detail::linear_cycles(la, grading, k)) span.add(detail::apply(lf, z));
    std::size_t induced = span.rank() - base;
    out.induced_rank[k] = induced;
    if (ha != hb || induced != ha) out.qiso = false;
  }
  return out;
}

/// The linearized criterion for weak equivalence of pointed Sullivan algebras.
inline bool weak_equivalence_by_linearization(const DgaMap& f, const Augmentation& eps, const Augmentation& mu,
                                              std::optional<DegreeWindow> window = std::nullopt) {
  return linearized_qiso(f, eps, mu, window).qiso;
}

inline HomologyTable shift_degrees(const HomologyTable& table, int offset) {
  HomologyTable out = table;
  out.ranks.clear();
  for (const auto& [d, r] : table.ranks) out.ranks[d + offset] = r;
  out.truncation.deg_min += offset;
  out.truncation.deg_max += offset;
  return out;
}

}  // namespace cdga

#endif  // CDGA_LINEARIZATION_HPP
