#ifndef CDGA_DGA_HPP
#define CDGA_DGA_HPP

// Differential graded algebras on free graded-commutative algebras, their maps and
// augmentations, plus the structural checks (degree, triangularity, d^2, chain-map law).

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cdga/graded.hpp"

namespace cdga {

/// How degrees were presented by the user. Internally every degree is cohomological
/// (d raises degree by one); Sft-presented algebras store negated SFT degrees.
enum class DegreeConvention { Cohomological, Sft };

class Dga {
 public:
  Dga(SignaturePtr sig, std::vector<Element> diff, DegreeConvention presentation = DegreeConvention::Cohomological)
      : sig_(std::move(sig)), diff_(std::move(diff)), presentation_(presentation) {
    if (diff_.size() != sig_->size()) {
      throw Error(ErrorCode::InvalidInput, "differential must be given on every generator");
    }
    for (const auto& d : diff_)
      if (d.signature() != sig_) throw Error(ErrorCode::MixedAlgebras, "differential lies in a different algebra");
  }

  /// Algebra with zero differential.
  explicit Dga(SignaturePtr sig, DegreeConvention presentation = DegreeConvention::Cohomological)
      : Dga(sig, std::vector<Element>(sig->size(), Element(sig)), presentation) {}

  /// The ground field as a dga: no generators.
  static Dga ground(GradingSpec grading = GradingSpec::integer()) {
    static std::mutex mutex;
    static std::map<int, SignaturePtr> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& sig = cache[grading.modulus().value_or(0)];
    if (!sig) sig = Signature::make(grading, {});
    return Dga(sig);
  }

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Signature& sig() const noexcept { return *sig_; }
  const GradingSpec& grading() const noexcept { return sig_->grading(); }
  std::size_t size() const noexcept { return sig_->size(); }
  const Element& diff(std::size_t i) const { return diff_.at(i); }
  const std::vector<Element>& diffs() const noexcept { return diff_; }
  DegreeConvention presentation() const noexcept { return presentation_; }

  Element gen(std::size_t i) const { return Element::generator(sig_, i); }
  Element gen(std::string_view name) const { return Element::generator(sig_, name); }
  Element one() const { return Element::constant(sig_, Rational(1)); }
  Element zero() const { return Element(sig_); }
  Element scalar(const Rational& q) const { return Element::constant(sig_, q); }

  /// Degree as the user wrote it.
  int presented_degree(std::size_t i) const {
    int d = sig_->degree(i);
    return presentation_ == DegreeConvention::Sft ? -d : d;
  }

  friend bool operator==(const Dga& a, const Dga& b) { return a.sig_ == b.sig_ && a.diff_ == b.diff_; }

 private:
  SignaturePtr sig_;
  std::vector<Element> diff_;
  DegreeConvention presentation_;
};

/// Graded Leibniz extension of the differential: d(uv) = du v + (-1)^|u| u dv.
inline Element extend_differential(const Dga& alg, const Element& elem) {
  if (elem.signature() != alg.signature()) throw Error(ErrorCode::MixedAlgebras, "element not in this algebra");
  const auto& sig = alg.signature();
  Element out(sig);
  for (const auto& [m, c] : elem.terms()) {
    const auto& fs = m.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Element& dv = alg.diff(fs[i].gen);
      if (dv.is_zero()) continue;
      Element prefix = Element::term(sig, Monomial::from_sorted({fs.begin(), fs.begin() + static_cast<long>(i)}), Rational(1));
      Element suffix = Element::term(sig, Monomial::from_sorted({fs.begin() + static_cast<long>(i) + 1, fs.end()}), Rational(1));
      Element local = dv;
      if (fs[i].exp > 1) {
        local = Element::term(sig, Monomial::single(fs[i].gen, fs[i].exp - 1), Rational(fs[i].exp)) * dv;
      }
      bool prefix_odd = prefix.terms().begin()->first.odd(*sig);
      Element piece = prefix * local * suffix;
      out += prefix_odd ? Rational(-c) * piece : c * piece;
    }
  }
  return out;
}

struct Violation {
  ErrorCode code;
  std::string generator;
  std::string message;
};

struct ValidityReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(ErrorCode code, std::string generator, std::string message) {
    violations.push_back(Violation{code, std::move(generator), std::move(message)});
  }
  bool has(ErrorCode code) const {
    for (const auto& v : violations)
      if (v.code == code) return true;
    return false;
  }
};

/// Per generator: |dv| = |v| + 1, dv uses only earlier generators, d(dv) = 0.
inline ValidityReport check_dga(const Dga& alg) {
  ValidityReport report;
  const auto& sig = alg.sig();
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const auto& name = sig.gen(i).name;
    const Element& dv = alg.diff(i);
    if (dv.is_zero()) continue;
    int expected = sig.grading().reduce(sig.degree(i) + 1);
    auto deg = dv.degree();
    if (!deg || *deg != expected) {
      report.add(ErrorCode::DegreeViolation, name,
                 "d" + name + " = " + dv.to_string() + " is not homogeneous of degree " + std::to_string(expected));
    }
    for (const auto& [m, c] : dv.terms()) {
      if (!m.uses_only_below(i)) {
        report.add(ErrorCode::TriangularityViolation, name,
                   "d" + name + " uses " + m.to_string(sig) + ", which is not built from earlier generators");
        break;
      }
    }
    Element dd = extend_differential(alg, dv);
    if (!dd.is_zero()) {
      report.add(ErrorCode::D2Violation, name, "d(d" + name + ") = " + dd.to_string() + " is nonzero");
    }
  }
  return report;
}

/// Unital algebra map given by generator images; applied through substitution.
class DgaMap {
 public:
  DgaMap(Dga source, Dga target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.size()) {
      throw Error(ErrorCode::MissingImage, "map must assign an image to every source generator");
    }
    for (const auto& im : images_)
      if (im.signature() != target_.signature()) throw Error(ErrorCode::MixedAlgebras, "image lies outside the target");
  }

  static DgaMap identity(const Dga& alg) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < alg.size(); ++i) images.push_back(alg.gen(i));
    return DgaMap(alg, alg, std::move(images));
  }

  /// The unit map from the ground field.
  static DgaMap unit(const Dga& target) { return DgaMap(Dga::ground(target.grading()), target, {}); }

  const Dga& source() const noexcept { return source_; }
  const Dga& target() const noexcept { return target_; }
  const std::vector<Element>& images() const noexcept { return images_; }
  const Element& image(std::size_t i) const { return images_.at(i); }

  Element apply(const Element& elem) const {
    if (elem.signature() != source_.signature()) throw Error(ErrorCode::MixedAlgebras, "element not in map source");
    return substitute(elem, images_, target_.signature());
  }

  bool verified_chain_map() const noexcept { return verified_chain_map_; }
  bool verified_pointed() const noexcept { return verified_pointed_; }
  void mark_chain_map(bool v) noexcept { verified_chain_map_ = v; }
  void mark_pointed(bool v) noexcept { verified_pointed_ = v; }

  friend bool operator==(const DgaMap& a, const DgaMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  Dga source_;
  Dga target_;
  std::vector<Element> images_;
  bool verified_chain_map_ = false;
  bool verified_pointed_ = false;
};

/// Chain-map law on generators (sufficient by multiplicativity) plus degree preservation.
inline ValidityReport chain_map_report(const DgaMap& f) {
  ValidityReport report;
  const auto& src = f.source();
  const auto& tgt = f.target();
  if (!(src.grading() == tgt.grading())) {
    report.add(ErrorCode::ObjectMismatch, "", "source and target gradings differ");
    return report;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto& name = src.sig().gen(i).name;
    const Element& im = f.image(i);
    if (!im.is_zero()) {
      auto deg = im.degree();
      if (!deg || *deg != src.sig().degree(i)) {
        report.add(ErrorCode::DegreeViolation, name,
                   "image " + im.to_string() + " is not of degree " + std::to_string(src.sig().degree(i)));
      }
    }
    Element lhs = f.apply(src.diff(i));
    Element rhs = extend_differential(tgt, im);
    if (!(lhs == rhs)) {
      report.add(ErrorCode::NotChainMap, name,
                 "f(d" + name + ") = " + lhs.to_string() + " but d f(" + name + ") = " + rhs.to_string());
    }
  }
  return report;
}

inline ValidityReport check_chain_map(DgaMap& f) {
  auto report = chain_map_report(f);
  f.mark_chain_map(report.ok());
  return report;
}

/// Rational-valued algebra map; nonzero only on degree-zero generators.
class Augmentation {
 public:
  Augmentation(Dga owner, std::vector<Rational> values) : owner_(std::move(owner)), values_(std::move(values)) {
    if (values_.size() != owner_.size()) {
      throw Error(ErrorCode::MissingImage, "augmentation must assign a value to every generator");
    }
  }

  static Augmentation zero(const Dga& owner) { return Augmentation(owner, std::vector<Rational>(owner.size())); }

  const Dga& owner() const noexcept { return owner_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& value(std::size_t i) const { return values_.at(i); }

  bool is_zero() const {
    for (const auto& v : values_)
      if (!v.is_zero()) return false;
    return true;
  }

  Rational operator()(const Element& elem) const {
    if (elem.signature() != owner_.signature()) throw Error(ErrorCode::MixedAlgebras, "element not in augmented algebra");
    return evaluate_scalar(elem, values_);
  }

  friend bool operator==(const Augmentation& a, const Augmentation& b) {
    return a.owner_.signature() == b.owner_.signature() && a.values_ == b.values_;
  }

 private:
  Dga owner_;
  std::vector<Rational> values_;
};

/// Vanishes off degree zero and kills every dv.
inline bool check_augmentation(const Augmentation& eps) {
  const auto& alg = eps.owner();
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (!eps.value(i).is_zero() && alg.sig().degree(i) != 0) return false;
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (!eps(alg.diff(i)).is_zero()) return false;
  return true;
}

/// mu(f(v)) = eps(v) on every source generator.
inline bool pointed(const DgaMap& f, const Augmentation& eps, const Augmentation& mu) {
  if (eps.owner().signature() != f.source().signature() || mu.owner().signature() != f.target().signature()) {
    throw Error(ErrorCode::ObjectMismatch, "augmentations do not live on the map's source and target");
  }
  for (std::size_t i = 0; i < f.source().size(); ++i)
    if (mu(f.image(i)) != eps.value(i)) return false;
  return true;
}

inline bool check_pointed(DgaMap& f, const Augmentation& eps, const Augmentation& mu) {
  bool ok = pointed(f, eps, mu);
  f.mark_pointed(ok);
  return ok;
}

struct PrefixCutoff {
  std::size_t count;
};
struct ActionCutoff {
  Rational bound;
};
using Cutoff = std::variant<PrefixCutoff, ActionCutoff>;

/// Sub-dga on a subset of generators given by keep[i]. Fails if a retained dv leaks out.
inline Dga restrict_to(const Dga& alg, const std::vector<bool>& keep) {
  const auto& sig = alg.sig();
  std::vector<Generator> gens;
  std::vector<std::optional<std::size_t>> index_map(alg.size());
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (!keep[i]) continue;
    index_map[i] = gens.size();
    gens.push_back(sig.gen(i));
  }
  auto sub = Signature::make(sig.grading(), std::move(gens));
  std::vector<Element> diff;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (!keep[i]) continue;
    try {
      diff.push_back(transfer(alg.diff(i), sub, index_map));
    } catch (const Error& e) {
      throw Error(ErrorCode::NotASubcomplex, "d" + sig.gen(i).name + " leaves the retained generators: " + e.detail());
    }
  }
  return Dga(sub, std::move(diff), alg.presentation());
}

inline Dga restrict(const Dga& alg, const Cutoff& cutoff) {
  std::vector<bool> keep(alg.size(), false);
  if (const auto* p = std::get_if<PrefixCutoff>(&cutoff)) {
    for (std::size_t i = 0; i < alg.size() && i < p->count; ++i) keep[i] = true;
  } else {
    const auto& bound = std::get<ActionCutoff>(cutoff).bound;
    for (std::size_t i = 0; i < alg.size(); ++i) {
      const auto& action = alg.sig().gen(i).action;
      if (!action) {
        throw Error(ErrorCode::InvalidInput, "generator '" + alg.sig().gen(i).name + "' carries no action");
      }
      keep[i] = *action <= bound;
    }
  }
  return restrict_to(alg, keep);
}

/// Inclusion of a sub-dga (generators matched by name).
inline DgaMap inclusion(const Dga& sub, const Dga& alg) {
  std::vector<Element> images;
  for (const auto& g : sub.sig().gens()) images.push_back(alg.gen(g.name));
  return DgaMap(sub, alg, std::move(images));
}

/// g after f.
inline DgaMap compose(const DgaMap& g, const DgaMap& f) {
  if (!(f.target() == g.source())) throw Error(ErrorCode::ObjectMismatch, "target of f is not the source of g");
  std::vector<Element> images;
  images.reserve(f.images().size());
  for (const auto& im : f.images()) images.push_back(g.apply(im));
  return DgaMap(f.source(), g.target(), std::move(images));
}

/// eps pulled back along f (values eps(f(v))).
inline Augmentation pullback(const Augmentation& eps, const DgaMap& f) {
  if (eps.owner().signature() != f.target().signature()) {
    throw Error(ErrorCode::ObjectMismatch, "augmentation does not live on the map target");
  }
  std::vector<Rational> values;
  for (const auto& im : f.images()) values.push_back(eps(im));
  return Augmentation(f.source(), std::move(values));
}

}  // namespace cdga

#endif  // CDGA_DGA_HPP
