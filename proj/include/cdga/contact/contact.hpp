#ifndef CDGA_CONTACT_CONTACT_HPP
#define CDGA_CONTACT_CONTACT_HPP

// Contact dg-algebras from orbit data: action-sorted generators, label coherence, the
// degree-zero first-homology part, positivity checks, linearized contact homology and the
// comparison of CH(U) with the symmetric algebra on shifted LCH of the dividing set.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdga/contact/document.hpp"
#include "cdga/dga.hpp"
#include "cdga/homology.hpp"
#include "cdga/linearization.hpp"
#include "cdga/model.hpp"

namespace cdga::contact {

inline H1Label monomial_label(const Signature& sig, const Monomial& m) {
  H1Label out;
  for (const auto& f : m.factors()) out = add_labels(out, sig.gen(f.gen).h1, f.exp);
  return out;
}

/// Generators sorted by action (ties by declaration), bad orbits dropped, SFT degrees negated.
inline Dga build_contact_dga(const AlgebraSpec& spec, const GradingSpec& grading) {
  const auto& dsig = *spec.sig;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < spec.gens.size(); ++i)
    if (!spec.gens[i].bad) order.push_back(i);
  for (std::size_t i : order) {
    if (!spec.gens[i].orbit || !spec.gens[i].action) {
      throw Error(ErrorCode::InvalidInput, "contact algebra '" + spec.name + "' mixes plain generators with orbits",
                  spec.gens[i].pos);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *spec.gens[a].action < *spec.gens[b].action; });
  std::vector<std::optional<std::size_t>> index_map(spec.gens.size());
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < order.size(); ++k) {
    index_map[order[k]] = k;
    Generator g = dsig.gen(order[k]);
    g.order_index = k;
    gens.push_back(std::move(g));
  }
  auto sig = Signature::make(grading, std::move(gens));

  std::vector<Element> diff(order.size(), Element(sig));
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t i = order[k];
    const Element& dv = spec.diff[i];
    const SourcePos pos = spec.diff_pos[i];
    const GenSpec& g = spec.gens[i];
    for (const auto& [m, c] : dv.terms()) {
      for (const auto& f : m.factors()) {
        const GenSpec& h = spec.gens[f.gen];
        if (*h.action >= *g.action) {
          throw Error(ErrorCode::ActionIncreaseViolation,
                      "d" + g.name + " contains " + h.name + " of action " + h.action->str() + ", not below " +
                          g.action->str(),
                      pos);
        }
      }
      if (monomial_label(dsig, m) != g.h1) {
        throw Error(ErrorCode::LabelLeak,
                    "d" + g.name + " term " + m.to_string(dsig) + " has first-homology class " +
                        label_to_string(monomial_label(dsig, m)) + ", generator has " + label_to_string(g.h1),
                    pos);
      }
    }
    diff[k] = transfer(dv, sig, index_map);
  }
  Dga alg(sig, std::move(diff), DegreeConvention::Sft);
  auto report = check_dga(alg);
  for (const auto& v : report.violations) {
    auto idx = spec.find(v.generator);
    SourcePos pos = idx ? spec.diff_pos[*idx] : SourcePos{};
    throw Error(v.code, v.message, pos);
  }
  return alg;
}

/// Builds the algebras, augmentations and maps of a document once, so that identities of
/// signatures are shared between everything that refers to the same algebra.
class Workspace {
 public:
  explicit Workspace(Document doc) : doc_(std::move(doc)) {}

  static Workspace from_text(std::string_view text) { return Workspace(parse_document(text)); }

  const Document& document() const noexcept { return doc_; }

  const Dga& algebra(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return *it->second;
    const AlgebraSpec& spec = doc_.algebra(name);
    std::unique_ptr<Dga> built;
    if (spec.contact()) {
      built = std::make_unique<Dga>(build_contact_dga(spec, doc_.grading));
    } else {
      for (const auto& g : spec.gens)
        if (g.bad) throw Error(ErrorCode::InvalidInput, "only orbits can be marked bad", g.pos);
      built = std::make_unique<Dga>(spec.sig, spec.diff);
    }
    return *cache_.emplace(name, std::move(built)).first->second;
  }

  /// Name of the algebra an augmentation lives on ("trivial" lives on any algebra: pass it).
  std::string augmentation_algebra(const std::string& aug, const std::string& fallback = "main") const {
    if (aug == "trivial") return fallback;
    const AugSpec* a = doc_.find_aug(aug);
    if (!a) throw Error(ErrorCode::UnknownName, "no augmentation named '" + aug + "'");
    return a->algebra;
  }

  /// The named augmentation; "trivial" is the zero augmentation of the given algebra.
  Augmentation augmentation(const std::string& aug, const std::string& alg_name = "main") {
    if (aug == "trivial") return Augmentation::zero(algebra(alg_name));
    const AugSpec* a = doc_.find_aug(aug);
    if (!a) throw Error(ErrorCode::UnknownName, "no augmentation named '" + aug + "'");
    const Dga& alg = algebra(a->algebra);
    std::vector<Rational> values(alg.size());
    for (std::size_t i = 0; i < a->values.size(); ++i) {
      auto idx = alg.sig().find(a->values[i].first);
      if (!idx) {
        throw Error(ErrorCode::UndeclaredGenerator, "'" + a->values[i].first + "' is not a generator of the built algebra",
                    a->value_pos[i]);
      }
      values[*idx] = a->values[i].second;
    }
    return Augmentation(alg, std::move(values));
  }

  DgaMap map(const std::string& name) {
    const MapSpec* m = doc_.find_map(name);
    if (!m) throw Error(ErrorCode::UnknownName, "no map named '" + name + "'");
    const Dga& src = algebra(m->source);
    const Dga& tgt = algebra(m->target);
    const AlgebraSpec& tspec = doc_.algebra(m->target);
    std::vector<std::optional<std::size_t>> index_map(tspec.gens.size());
    for (std::size_t i = 0; i < tspec.gens.size(); ++i) index_map[i] = tgt.sig().find(tspec.gens[i].name);
    std::vector<Element> images(src.size(), tgt.zero());
    for (const auto& im : m->images) {
      auto idx = src.sig().find(im.gen);
      if (!idx) throw Error(ErrorCode::UndeclaredGenerator, "'" + im.gen + "' is not a generator of the source", im.pos);
      try {
        images[*idx] = transfer(im.value, tgt.signature(), index_map);
      } catch (const Error& e) {
        throw Error(ErrorCode::UndeclaredGenerator, e.detail(), im.pos);
      }
    }
    return DgaMap(src, tgt, std::move(images));
  }

 private:
  Document doc_;
  std::map<std::string, std::unique_ptr<Dga>> cache_;
};

/// Graded dimensions of the chain groups, split by first-homology class. Degrees as presented.
inline std::map<std::string, std::map<int, std::size_t>> h1_decompose(const Dga& alg, const TruncationSpec& window) {
  std::map<std::string, std::map<int, std::size_t>> out;
  for (int k = window.deg_min; k <= window.deg_max; ++k) {
    int internal = alg.presentation() == DegreeConvention::Sft ? -k : k;
    for (const auto& m : enumerate_basis(alg.sig(), internal, window.word_cap, window.basis_limit))
      ++out[label_to_string(monomial_label(alg.sig(), m))][k];
  }
  return out;
}

namespace detail {

/// Is there a product of nonzero-label generators of word length <= cap with total label zero?
inline std::optional<std::string> zero_label_product(const Signature& sig, std::size_t cap) {
  std::vector<std::size_t> labelled;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (!sig.gen(i).h1.empty()) labelled.push_back(i);
  std::vector<std::pair<std::size_t, std::uint32_t>> stack;
  std::optional<std::string> found;
  auto dfs = [&](auto&& self, std::size_t pos, std::size_t len, const H1Label& label) -> void {
    if (found) return;
    if (len > 0 && label.empty()) {
      std::string text;
      for (const auto& [g, e] : stack) {
        if (!text.empty()) text += "*";
        text += sig.gen(g).name;
        if (e > 1) text += "^" + std::to_string(e);
      }
      found = text;
      return;
    }
    if (pos == labelled.size() || len == cap) return;
    self(self, pos + 1, len, label);
    std::size_t g = labelled[pos];
    std::size_t max_exp = sig.odd(g) ? 1 : cap - len;
    for (std::size_t e = 1; e <= max_exp; ++e) {
      stack.emplace_back(g, static_cast<std::uint32_t>(e));
      self(self, pos + 1, len + e, add_labels(label, sig.gen(g).h1, static_cast<long long>(e)));
      stack.pop_back();
    }
  };
  dfs(dfs, 0, 0, H1Label{});
  return found;
}

}  // namespace detail

/// Sub-dga of class-zero monomials; requires it to be generated by the class-zero generators
/// (checked up to word length `cap`).
inline Dga extract_A0(const Dga& alg, std::size_t cap = 4) {
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (const auto& [m, c] : alg.diff(i).terms())
      if (monomial_label(alg.sig(), m) != alg.sig().gen(i).h1) {
        throw Error(ErrorCode::LabelLeak, "d" + alg.sig().gen(i).name + " term " + m.to_string(alg.sig()) +
                                              " changes the first-homology class");
      }
  if (auto w = detail::zero_label_product(alg.sig(), cap)) {
    throw Error(ErrorCode::NotFreelyGenerated, "class-zero part contains " + *w + ", a product of nonzero classes");
  }
  std::vector<bool> keep(alg.size());
  for (std::size_t i = 0; i < alg.size(); ++i) keep[i] = alg.sig().gen(i).h1.empty();
  try {
    return restrict_to(alg, keep);
  } catch (const Error& e) {
    throw Error(ErrorCode::LabelLeak, e.detail());
  }
}

struct SadcReport {
  bool pass = true;
  bool adnh = true;
  int k = 0;
  std::vector<std::string> witnesses;
};

/// Every orbit (below the action bound, if any) has SFT degree > k and class zero.
inline SadcReport sadc_check(const Dga& alg, int k, std::optional<Rational> action_cap = std::nullopt) {
  if (!alg.grading().is_integer()) throw Error(ErrorCode::RequiresIntegerGrading, "degree bounds need an integer grading");
  SadcReport r;
  r.k = k;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const auto& g = alg.sig().gen(i);
    if (action_cap && g.action && *g.action > *action_cap) continue;
    int deg = alg.presented_degree(i);
    if (deg <= k) {
      r.pass = false;
      r.witnesses.push_back(g.name + " has degree " + std::to_string(deg) + " <= " + std::to_string(k));
    }
    if (!g.h1.empty()) {
      r.pass = false;
      r.adnh = false;
      r.witnesses.push_back(g.name + " has first-homology class " + label_to_string(g.h1));
    }
  }
  return r;
}

/// Table in presented degrees from one in internal degrees.
inline HomologyTable presented_table(const HomologyTable& table, const Dga& alg) {
  if (alg.presentation() != DegreeConvention::Sft) return table;
  HomologyTable out = table;
  out.ranks.clear();
  for (const auto& [d, r] : table.ranks) out.ranks[alg.grading().reduce(-d)] = r;
  out.truncation.deg_min = -table.truncation.deg_max;
  out.truncation.deg_max = -table.truncation.deg_min;
  return out;
}

inline DegreeWindow internal_window(const Dga& alg, DegreeWindow presented) {
  if (alg.presentation() != DegreeConvention::Sft) return presented;
  return DegreeWindow{-presented.hi, -presented.lo};
}

/// Linearized contact homology at an augmentation, in SFT degrees.
inline HomologyTable lch(const Dga& alg, const Augmentation& eps, std::optional<DegreeWindow> window = std::nullopt) {
  if (!check_augmentation(eps)) throw Error(ErrorCode::NotAnAugmentation, "augmentation does not kill every boundary");
  std::optional<DegreeWindow> w;
  if (window) w = internal_window(alg, *window);
  return presented_table(linearized_homology(alg, eps, w), alg);
}

/// Homology of the full algebra on a window given in presented degrees.
inline HomologyTable presented_homology(const Dga& alg, TruncationSpec trunc) {
  if (alg.presentation() == DegreeConvention::Sft) {
    int lo = trunc.deg_min;
    trunc.deg_min = -trunc.deg_max;
    trunc.deg_max = -lo;
  }
  return presented_table(homology_dims(alg, trunc), alg);
}

/// Graded dimensions of the free graded-commutative algebra on a positively graded space, up to cap.
inline HomologyTable sym_dims(const HomologyTable& table, int cap) {
  std::vector<Integer> series(static_cast<std::size_t>(std::max(cap, 0)) + 1, Integer(0));
  series[0] = 1;
  for (const auto& [d, m] : table.ranks) {
    if (m == 0) continue;
    if (d <= 0) throw Error(ErrorCode::NonPositiveDegree, "class in degree " + std::to_string(d) + " is not positive");
    for (std::size_t copy = 0; copy < m; ++copy) {
      if (d % 2 != 0) {
        for (int t = cap; t >= d; --t) series[t] += series[t - d];
      } else {
        for (int t = d; t <= cap; ++t) series[t] += series[t - d];
      }
    }
  }
  HomologyTable out;
  out.exact = true;
  out.truncation.deg_min = 0;
  out.truncation.deg_max = cap;
  for (int t = 0; t <= cap; ++t)
    if (series[t] != 0) out.ranks[t] = series[t].convert_to<std::size_t>();
  return out;
}

struct AvdekReport {
  HomologyTable lch_hat;
  HomologyTable predicted;
  HomologyTable observed;
  std::vector<int> mismatched_degrees;
  bool match = true;
  enum class CertificateStatus { NotRequested, Verified, Missing, Rejected } certificate = CertificateStatus::NotRequested;
  std::string certificate_message;
};

inline std::string to_string(AvdekReport::CertificateStatus s) {
  switch (s) {
    case AvdekReport::CertificateStatus::NotRequested: return "not requested";
    case AvdekReport::CertificateStatus::Verified: return "verified";
    case AvdekReport::CertificateStatus::Missing: return "missing";
    case AvdekReport::CertificateStatus::Rejected: return "rejected";
  }
  return "";
}

/// Compares homology of U on [0, cap] with S(LCH(Gamma, eps_plus) shifted by +1).
/// With eps_minus given, a candidate equivalence eps_plus ~ eps_minus is certified as well.
inline AvdekReport avdek_compare(const Dga& gamma, const Augmentation& eps_plus, const std::optional<Augmentation>& eps_minus,
                                 const std::optional<DgaMap>& equivalence, const Dga& u, const TruncationSpec& window) {
  AvdekReport r;
  int cap = window.deg_max;
  r.lch_hat = shift_degrees(lch(gamma, eps_plus), +1);
  r.predicted = sym_dims(r.lch_hat, cap);
  TruncationSpec t = window;
  t.deg_min = 0;
  r.observed = presented_homology(u, t);
  for (int k = 0; k <= cap; ++k) {
    if (r.predicted.rank(k) != r.observed.rank(k)) {
      r.match = false;
      r.mismatched_degrees.push_back(k);
    }
  }
  if (eps_minus) {
    if (!equivalence) {
      r.certificate = AvdekReport::CertificateStatus::Missing;
    } else {
      try {
        certify_aug_equivalence(gamma, eps_plus, *eps_minus, *equivalence);
        r.certificate = AvdekReport::CertificateStatus::Verified;
      } catch (const Error& e) {
        r.certificate = AvdekReport::CertificateStatus::Rejected;
        r.certificate_message = e.what();
      }
    }
    if (r.certificate != AvdekReport::CertificateStatus::Verified && !r.observed.nonzero().empty()) {
      r.certificate_message += std::string(r.certificate_message.empty() ? "" : "; ") +
                               "certificate missing; inequivalent augmentations predict vanishing homology";
    }
  }
  return r;
}

}  // namespace cdga::contact

#endif  // CDGA_CONTACT_CONTACT_HPP
