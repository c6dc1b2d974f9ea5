#ifndef CDGA_MODEL_HPP
#define CDGA_MODEL_HPP

// Truncated Sullivan factorization and replacement, certificates for weak equivalence of
// augmentations, and the positivity-based uniqueness helpers.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdga/dga.hpp"
#include "cdga/homology.hpp"
#include "cdga/linearization.hpp"
#include "cdga/path.hpp"

namespace cdga {

struct StageLog {
  std::size_t stage = 0;
  std::size_t added = 0;
  // Stage one only: generators indexed by the window basis of B* (x and y) and by its cycle basis (w).
  std::size_t x_count = 0;
  std::size_t y_count = 0;
  std::size_t w_count = 0;
  std::vector<std::string> notes;
};

struct FactorizationResult {
  Dga intermediate;
  DgaMap inclusion;
  DgaMap projection;
  std::vector<StageLog> stage_log;
  /// Each basis monomial of the target window with the generator mapping onto it.
  std::vector<std::pair<std::string, std::string>> surjectivity;
  QisoCheck final_check;

  std::size_t added_generators() const {
    std::size_t n = 0;
    for (const auto& s : stage_log) n += s.added;
    return n;
  }
};

namespace detail {

/// Rebuilds an element of one signature over a larger one that extends it by appended generators.
inline Element lift(const Element& e, const SignaturePtr& bigger) {
  std::vector<std::optional<std::size_t>> index_map(e.sig().size());
  for (std::size_t i = 0; i < index_map.size(); ++i) index_map[i] = i;
  return transfer(e, bigger, index_map);
}

/// Dga on the old generators plus appended ones; new differentials are given over `old`.
inline Dga extend_dga(const Dga& old, const std::vector<Generator>& extra, const std::vector<Element>& extra_diff) {
  if (extra.empty()) return old;
  std::vector<Generator> gens = old.sig().gens();
  for (const auto& g : extra) gens.push_back(g);
  auto sig = Signature::make_ordered(old.grading(), gens);
  std::vector<Element> diff;
  for (const auto& dv : old.diffs()) diff.push_back(lift(dv, sig));
  for (const auto& dv : extra_diff) diff.push_back(lift(dv, sig));
  return Dga(sig, std::move(diff), old.presentation());
}

inline void check_window(const DgaMap& f, const TruncationSpec& window) {
  if (window.deg_min > window.deg_max) throw Error(ErrorCode::WindowTooSmall, "degree window is empty");
  if (f.target().grading().is_integer() && (window.deg_min > 0 || window.deg_max < 0)) {
    throw Error(ErrorCode::WindowTooSmall, "degree window must contain degree 0");
  }
  const auto& sig = f.target().sig();
  for (int k : window_degrees(sig.grading(), window.deg_min, window.deg_max)) {
    if (!basis_complete(sig, k, window.word_cap, window.basis_limit)) {
      throw Error(ErrorCode::WindowTooSmall, "target is not finite type at word cap " + std::to_string(window.word_cap) +
                                                 " in degree " + std::to_string(k));
    }
  }
}

}  // namespace detail

/// Factors f: A -> B as A -> SV -> B with A -> SV a generator inclusion and SV -> B surjective
/// on the window and a quasi-isomorphism there.
inline FactorizationResult sullivan_factorize(const DgaMap& f, const TruncationSpec& window, std::size_t stages) {
  const Dga& A = f.source();
  const Dga& B = f.target();
  if (auto r = check_dga(A); !r.ok()) throw Error(r.violations.front().code, "source: " + r.violations.front().message);
  if (auto r = chain_map_report(f); !r.ok()) throw Error(ErrorCode::NotChainMap, r.violations.front().message);
  detail::check_window(f, window);
  if (stages == 0) throw Error(ErrorCode::StageBudgetExhausted, "stage budget is zero");

  const auto degrees = window_degrees(B.grading(), window.deg_min, window.deg_max);
  std::vector<StageLog> log;
  std::vector<std::pair<std::string, std::string>> witnesses;

  // Stage one.
  StageLog first;
  first.stage = 1;
  std::vector<Element> extra_images;
  struct Pending {
    Generator gen;
    std::optional<std::size_t> d_of;  // x_b: d = the y_b generator with this position
  };
  std::vector<Pending> pending;
  std::size_t counter = 0;
  for (int k : degrees) {
    for (const auto& m : enumerate_basis(B.sig(), k, window.word_cap, window.basis_limit)) {
      if (m.is_unit()) continue;
      Element b = Element::term(B.signature(), m, Rational(1));
      std::string tag = std::to_string(counter++);
      Generator y{"y1_" + tag, B.grading().reduce(k + 1), 0, std::nullopt, {}};
      Generator x{"x1_" + tag, k, 0, std::nullopt, {}};
      pending.push_back(Pending{y, std::nullopt});
      extra_images.push_back(extend_differential(B, b));
      pending.push_back(Pending{x, pending.size() - 1});
      extra_images.push_back(b);
      witnesses.emplace_back(m.to_string(B.sig()), x.name);
      first.notes.push_back(x.name + " -> " + m.to_string(B.sig()));
      ++first.x_count;
      ++first.y_count;
    }
  }
  {
    TruncatedComplex tb(B, window.word_cap, window.basis_limit);
    std::size_t wc = 0;
    for (int k : degrees) {
      for (const auto& z : tb.cycles(k)) {
        if (z.max_length() == 0) continue;
        const Element& cyc = z;
        Generator w{"w1_" + std::to_string(wc++), k, 0, std::nullopt, {}};
        pending.push_back(Pending{w, std::nullopt});
        extra_images.push_back(cyc);
        first.notes.push_back(w.name + " -> " + cyc.to_string());
        ++first.w_count;
      }
    }
  }
  std::vector<Generator> all = A.sig().gens();
  for (const auto& p : pending) all.push_back(p.gen);
  auto sig1 = pending.empty() ? A.signature() : Signature::make_ordered(A.grading(), all);
  std::vector<Element> diff1;
  for (const auto& dv : A.diffs()) diff1.push_back(detail::lift(dv, sig1));
  for (const auto& p : pending) {
    if (p.d_of) {
      diff1.push_back(Element::generator(sig1, A.size() + *p.d_of));
    } else {
      diff1.push_back(Element(sig1));
    }
  }
  Dga sv(sig1, std::move(diff1), A.presentation());
  std::vector<Element> proj_images = f.images();
  for (const auto& im : extra_images) proj_images.push_back(im);
  first.added = pending.size();
  log.push_back(first);

  auto make_projection = [&](const Dga& alg) { return DgaMap(alg, B, proj_images); };

  for (std::size_t stage = 1;; ++stage) {
    DgaMap projection = make_projection(sv);
    if (auto r = chain_map_report(projection); !r.ok()) {
      throw Error(ErrorCode::NotChainMap, "internal: projection is not a chain map: " + r.violations.front().message);
    }
    QisoCheck check = qiso_on_window(projection, window);
    if (check.qiso) {
      std::vector<Element> inc;
      for (std::size_t i = 0; i < A.size(); ++i) inc.push_back(sv.gen(i));
      DgaMap inclusion_map(A, sv, std::move(inc));
      if (!(compose(projection, inclusion_map) == f)) {
        throw Error(ErrorCode::NotChainMap, "internal: projection after inclusion differs from the input map");
      }
      inclusion_map.mark_chain_map(true);
      projection.mark_chain_map(true);
      return FactorizationResult{sv, std::move(inclusion_map), std::move(projection), std::move(log),
                                 std::move(witnesses), std::move(check)};
    }
    if (stage >= stages) {
      throw Error(ErrorCode::StageBudgetExhausted,
                  "projection is not a quasi-isomorphism on the window after " + std::to_string(stages) + " stages");
    }
    // Kill ker(H(SV) -> H(B)) degree by degree.
    StageLog entry;
    entry.stage = stage + 1;
    std::vector<Generator> new_gens;
    std::vector<Element> new_diff;
    std::size_t cap = check.source.truncation.word_cap;
    TruncatedComplex ts(sv, cap, window.basis_limit);
    TruncatedComplex tb(B, cap, window.basis_limit);
    for (int k : degrees) {
      auto cycles = ts.cycles(k);
      if (cycles.empty()) continue;
      MonomialIndex rows;
      std::vector<QVec> cols;
      for (const auto& z : cycles) cols.push_back(rows.vector(projection.apply(z)));
      const auto& bbasis = tb.piece(k - 1).basis;
      for (const auto& m : bbasis) cols.push_back(rows.vector(tb.d(m)));
      linalg::ColumnSpace<Rational> space(cols);
      MonomialIndex sv_rows;
      linalg::Echelon<Rational> sv_boundaries;
      for (const auto& im : ts.differential(k - 1).images) sv_boundaries.add(sv_rows.vector(im));
      for (const auto& kv : space.kernel()) {
        Element cand(sv.signature());
        for (std::size_t j = 0; j < cycles.size(); ++j)
          if (!kv[j].is_zero()) cand += kv[j] * cycles[j];
        if (cand.is_zero()) continue;
        QVec cv = sv_rows.vector(cand);
        if (sv_boundaries.in_span(cv)) continue;
        sv_boundaries.add(cv);
        Element b(B.signature());
        for (std::size_t l = 0; l < bbasis.size(); ++l) {
          const Rational& c = kv[cycles.size() + l];
          if (!c.is_zero()) b -= Element::term(B.signature(), bbasis[l], c);
        }
        Generator g{"x" + std::to_string(stage + 1) + "_" + std::to_string(new_gens.size()), B.grading().reduce(k - 1), 0,
                    std::nullopt, {}};
        entry.notes.push_back(g.name + ": d = " + cand.to_string() + ", image " + b.to_string());
        new_gens.push_back(g);
        new_diff.push_back(cand);
        proj_images.push_back(b);
      }
    }
    entry.added = new_gens.size();
    log.push_back(entry);
    if (new_gens.empty()) {
      throw Error(ErrorCode::StageBudgetExhausted,
                  "projection is not a quasi-isomorphism on the window and no kernel class was found to kill");
    }
    sv = detail::extend_dga(sv, new_gens, new_diff);
  }
}

/// Sullivan replacement: factorization of the unit map of b.
inline FactorizationResult cofibrant_replace(const Dga& b, const TruncationSpec& window, std::size_t stages) {
  return sullivan_factorize(DgaMap::unit(b), window, stages);
}

struct Certificate {
  DgaMap map;
  Augmentation from;
  Augmentation to;
  LinearQisoCheck check;
};

/// Verifies candidate: (alg, eps) -> (alg, mu) is a pointed chain map and a weak equivalence.
inline Certificate certify_aug_equivalence(const Dga& alg, const Augmentation& eps, const Augmentation& mu,
                                           const DgaMap& candidate, std::optional<DegreeWindow> window = std::nullopt) {
  if (!(candidate.source() == alg) || !(candidate.target() == alg)) {
    throw Error(ErrorCode::ObjectMismatch, "candidate is not a self-map of the algebra");
  }
  if (auto r = check_dga(alg); !r.ok()) throw Error(r.violations.front().code, r.violations.front().message);
  if (!check_augmentation(eps) || !check_augmentation(mu)) {
    throw Error(ErrorCode::NotAnAugmentation, "augmentations must kill every boundary and vanish off degree 0");
  }
  if (auto r = chain_map_report(candidate); !r.ok()) throw Error(ErrorCode::NotChainMap, r.violations.front().message);
  if (!pointed(candidate, eps, mu)) throw Error(ErrorCode::NotPointed, "candidate does not carry eps to mu");
  LinearQisoCheck check = linearized_qiso(candidate, eps, mu, window);
  if (!check.qiso) throw Error(ErrorCode::NotWeakEquivalence, "linearized map is not a quasi-isomorphism");
  DgaMap map = candidate;
  map.mark_chain_map(true);
  map.mark_pointed(true);
  return Certificate{std::move(map), eps, mu, std::move(check)};
}

/// eps o f on the source of f.
inline Augmentation transport_aug(const DgaMap& f, const Augmentation& aug_on_target) {
  return pullback(aug_on_target, f);
}

struct AugClassTable {
  std::vector<Augmentation> representatives;
  /// certificates[i][j]: a verified equivalence from representative i to j, if one was found.
  std::vector<std::vector<std::optional<Certificate>>> certificates;

  bool known_equivalent(std::size_t i, std::size_t j) const { return i == j || certificates[i][j].has_value(); }
};

/// Tries every candidate self-map on every ordered pair of representatives.
inline AugClassTable aug_class_table(const Dga& alg, std::vector<Augmentation> reps, const std::vector<DgaMap>& candidates) {
  AugClassTable table;
  table.representatives = std::move(reps);
  const auto n = table.representatives.size();
  table.certificates.assign(n, std::vector<std::optional<Certificate>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        table.certificates[i][j] = certify_aug_equivalence(alg, table.representatives[i], table.representatives[i],
                                                           DgaMap::identity(alg));
        continue;
      }
      for (const auto& c : candidates) {
        try {
          table.certificates[i][j] = certify_aug_equivalence(alg, table.representatives[i], table.representatives[j], c);
          break;
        } catch (const Error&) {
        }
      }
    }
  return table;
}

/// From a certificate (A, eps) -> (A, mu), a certificate (A, mu) -> (A, eps) via the homotopy inverse.
inline Certificate invert_certificate(const Certificate& cert, const TruncationSpec& trunc) {
  HomotopyInverse inv = homotopy_inverse(cert.map, cert.from, cert.to, trunc);
  return certify_aug_equivalence(cert.map.source(), cert.to, cert.from, inv.psi);
}

/// Every generator has presented degree > k.
inline bool is_k_positively_generated(const Dga& alg, int k) {
  if (!alg.grading().is_integer()) throw Error(ErrorCode::RequiresIntegerGrading, "positivity needs an integer grading");
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (alg.presented_degree(i) <= k) return false;
  return true;
}

/// With no degree-zero generator the zero augmentation is the only one; otherwise nullopt.
inline std::optional<Augmentation> unique_augmentation_if_positive(const Dga& alg) {
  if (!alg.grading().is_integer()) throw Error(ErrorCode::RequiresIntegerGrading, "uniqueness needs an integer grading");
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (alg.sig().degree(i) == 0) return std::nullopt;
  return Augmentation::zero(alg);
}

/// All augmentations with degree-zero values drawn from the grid. Enumeration is lexicographic
/// over degree-zero generators in order, grid values in the order given.
inline std::vector<Augmentation> enumerate_augmentations(const Dga& alg, const std::vector<Rational>& grid,
                                                         std::size_t max_points = 1000000) {
  std::vector<std::size_t> zero_gens;
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (alg.sig().degree(i) == 0) zero_gens.push_back(i);
  std::vector<Rational> values;
  for (const auto& v : grid)
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  std::size_t points = 1;
  for (std::size_t t = 0; t < zero_gens.size(); ++t) {
    if (values.empty()) {
      points = 0;
      break;
    }
    if (points > max_points / values.size()) {
      throw Error(ErrorCode::GridTooLarge, "grid of " + std::to_string(values.size()) + "^" +
                                               std::to_string(zero_gens.size()) + " points exceeds " +
                                               std::to_string(max_points));
    }
    points *= values.size();
  }
  std::vector<Augmentation> out;
  if (points == 0) return out;
  std::vector<std::size_t> digits(zero_gens.size(), 0);
  for (std::size_t p = 0; p < points; ++p) {
    std::vector<Rational> vals(alg.size());
    for (std::size_t t = 0; t < zero_gens.size(); ++t) vals[zero_gens[t]] = values[digits[t]];
    Augmentation eps(alg, std::move(vals));
    if (check_augmentation(eps)) out.push_back(std::move(eps));
    for (std::size_t t = zero_gens.size(); t-- > 0;) {
      if (++digits[t] < values.size()) break;
      digits[t] = 0;
    }
  }
  return out;
}

}  // namespace cdga

#endif  // CDGA_MODEL_HPP
