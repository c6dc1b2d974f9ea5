#ifndef CDGA_GRADED_HPP
#define CDGA_GRADED_HPP

// Free graded-commutative algebras over the rationals: gradings, generators,
// Koszul-signed monomials and sparse elements.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdga/error.hpp"
#include "cdga/rational.hpp"

namespace cdga {

/// Grading group: the integers, or Z/2m for m >= 1.
class GradingSpec {
 public:
  GradingSpec() = default;

  static GradingSpec integer() { return GradingSpec{}; }

  static GradingSpec cyclic(int modulus) {
    if (modulus < 2 || modulus % 2 != 0) {
      throw Error(ErrorCode::InvalidGrading,
                  "cyclic grading modulus must be even and at least 2, got " + std::to_string(modulus));
    }
    GradingSpec g;
    g.modulus_ = modulus;
    return g;
  }

  bool is_integer() const noexcept { return !modulus_.has_value(); }
  std::optional<int> modulus() const noexcept { return modulus_; }

  int reduce(int degree) const noexcept {
    if (!modulus_) return degree;
    int r = degree % *modulus_;
    return r < 0 ? r + *modulus_ : r;
  }

  static bool odd(int degree) noexcept { return (degree % 2 + 2) % 2 == 1; }

  std::string to_string() const {
    return modulus_ ? "Z/" + std::to_string(*modulus_) : std::string("Z");
  }

  friend bool operator==(const GradingSpec&, const GradingSpec&) = default;

 private:
  std::optional<int> modulus_;
};

/// Word in the free abelian group on named first-homology classes. Zero entries are never stored.
using H1Label = std::map<std::string, long long>;

inline H1Label add_labels(const H1Label& a, const H1Label& b, long long times = 1) {
  H1Label out = a;
  for (const auto& [name, k] : b) {
    auto& slot = out[name];
    slot += times * k;
    if (slot == 0) out.erase(name);
  }
  return out;
}

inline std::string label_to_string(const H1Label& label) {
  if (label.empty()) return "0";
  std::string out;
  for (const auto& [name, k] : label) {
    if (!out.empty() && k > 0) out += "+";
    if (k == -1) out += "-";
    else if (k != 1) out += std::to_string(k) + "*";
    out += name;
  }
  return out;
}

struct Generator {
  std::string name;
  int degree = 0;
  std::size_t order_index = 0;
  std::optional<Rational> action;
  H1Label h1;

  bool odd() const noexcept { return GradingSpec::odd(degree); }
};

/// The underlying graded algebra SV: a grading group and generators sorted by order index.
/// Elements refer to generators by their position in this list.
class Signature {
 public:
  static std::shared_ptr<const Signature> make(GradingSpec grading, std::vector<Generator> gens) {
    auto sig = std::shared_ptr<Signature>(new Signature());
    sig->grading_ = grading;
    std::stable_sort(gens.begin(), gens.end(),
                     [](const Generator& a, const Generator& b) { return a.order_index < b.order_index; });
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i > 0 && gens[i].order_index == gens[i - 1].order_index) {
        throw Error(ErrorCode::DuplicateName,
                    "order index " + std::to_string(gens[i].order_index) + " used twice");
      }
      gens[i].degree = grading.reduce(gens[i].degree);
      if (!sig->by_name_.emplace(gens[i].name, i).second) {
        throw Error(ErrorCode::DuplicateName, "generator '" + gens[i].name + "' declared twice");
      }
    }
    sig->gens_ = std::move(gens);
    return sig;
  }

  /// Generators listed in Sullivan order; order indices are assigned by position.
  static std::shared_ptr<const Signature> make_ordered(GradingSpec grading, std::vector<Generator> gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i].order_index = i;
    return make(grading, std::move(gens));
  }

  const GradingSpec& grading() const noexcept { return grading_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<Generator>& gens() const noexcept { return gens_; }
  const Generator& gen(std::size_t i) const { return gens_.at(i); }
  int degree(std::size_t i) const { return gens_[i].degree; }
  bool odd(std::size_t i) const { return gens_[i].odd(); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
    return *i;
  }

 private:
  Signature() = default;

  GradingSpec grading_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

struct Factor {
  std::uint32_t gen = 0;
  std::uint32_t exp = 0;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Sorted product of generator powers. Odd generators have exponent one.
class Monomial {
 public:
  Monomial() = default;

  /// Caller guarantees factors sorted by generator, exponents >= 1.
  static Monomial from_sorted(std::vector<Factor> factors) {
    Monomial m;
    m.factors_ = std::move(factors);
    for (const auto& f : m.factors_) m.length_ += f.exp;
    return m;
  }

  static Monomial single(std::size_t gen, std::uint32_t exp = 1) {
    return from_sorted({Factor{static_cast<std::uint32_t>(gen), exp}});
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_unit() const noexcept { return factors_.empty(); }
  std::size_t length() const noexcept { return length_; }

  /// Unreduced sum of degrees.
  long long raw_degree(const Signature& sig) const {
    long long d = 0;
    for (const auto& f : factors_) d += static_cast<long long>(sig.degree(f.gen)) * f.exp;
    return d;
  }

  int degree(const Signature& sig) const {
    return sig.grading().reduce(static_cast<int>(raw_degree(sig)));
  }

  bool odd(const Signature& sig) const {
    bool parity = false;
    for (const auto& f : factors_)
      if (sig.odd(f.gen) && (f.exp % 2 == 1)) parity = !parity;
    return parity;
  }

  std::uint32_t exponent_of(std::size_t gen) const {
    for (const auto& f : factors_)
      if (f.gen == gen) return f.exp;
    return 0;
  }

  bool uses_only_below(std::size_t gen_bound) const {
    return std::all_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.gen < gen_bound; });
  }

  /// Shorter words first, then lexicographic on factors.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.factors_ <=> b.factors_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string to_string(const Signature& sig) const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : factors_) {
      if (!out.empty()) out += "*";
      out += sig.gen(f.gen).name;
      if (f.exp != 1) out += "^" + std::to_string(f.exp);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
  std::size_t length_ = 0;
};

struct SignedMonomial {
  Monomial monomial;
  int sign = 1;
};

/// Koszul normal form of an unordered product of generator powers. Returns nullopt when the
/// product vanishes (an odd generator occurring twice).
inline std::optional<SignedMonomial> normalize_monomial(const Signature& sig,
                                                        std::span<const std::pair<std::size_t, std::uint32_t>> factors) {
  std::vector<std::size_t> odd_sequence;
  std::map<std::size_t, std::uint32_t> exps;
  for (const auto& [gen, exp] : factors) {
    if (gen >= sig.size()) {
      throw Error(ErrorCode::UnknownGenerator, "generator index " + std::to_string(gen) + " out of range");
    }
    if (exp == 0) continue;
    if (sig.odd(gen)) {
      if (exp > 1) return std::nullopt;
      odd_sequence.push_back(gen);
    }
    exps[gen] += exp;
  }
  for (const auto& [gen, exp] : exps)
    if (sig.odd(gen) && exp > 1) return std::nullopt;
  // Sorting the odd factors: each inversion is one odd transposition.
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < odd_sequence.size(); ++i)
    for (std::size_t j = i + 1; j < odd_sequence.size(); ++j)
      if (odd_sequence[i] > odd_sequence[j]) ++inversions;
  std::vector<Factor> sorted;
  sorted.reserve(exps.size());
  for (const auto& [gen, exp] : exps) sorted.push_back(Factor{static_cast<std::uint32_t>(gen), exp});
  return SignedMonomial{Monomial::from_sorted(std::move(sorted)), inversions % 2 == 0 ? 1 : -1};
}

/// Normal form of a product given by generator names.
inline std::optional<SignedMonomial> normalize_monomial(const Signature& sig,
                                                        std::span<const std::pair<std::string, std::uint32_t>> factors) {
  std::vector<std::pair<std::size_t, std::uint32_t>> indexed;
  indexed.reserve(factors.size());
  for (const auto& [name, exp] : factors) indexed.emplace_back(sig.index_of(name), exp);
  return normalize_monomial(sig, std::span<const std::pair<std::size_t, std::uint32_t>>(indexed));
}

/// Product of two normal-form monomials, with the Koszul sign of moving b's odd factors past a's.
inline std::optional<SignedMonomial> multiply_monomials(const Signature& sig, const Monomial& a, const Monomial& b) {
  if (a.is_unit()) return SignedMonomial{b, 1};
  if (b.is_unit()) return SignedMonomial{a, 1};
  std::vector<Factor> out;
  out.reserve(a.factors().size() + b.factors().size());
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t odd_in_a_remaining = 0;
  for (const auto& f : fa)
    if (sig.odd(f.gen)) ++odd_in_a_remaining;
  std::size_t crossings = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].gen < fb[j].gen)) {
      if (sig.odd(fa[i].gen)) --odd_in_a_remaining;
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].gen < fa[i].gen) {
      if (sig.odd(fb[j].gen)) crossings += odd_in_a_remaining;
      out.push_back(fb[j++]);
    } else {
      if (sig.odd(fa[i].gen)) return std::nullopt;
      out.push_back(Factor{fa[i].gen, fa[i].exp + fb[j].exp});
      ++i;
      ++j;
    }
  }
  return SignedMonomial{Monomial::from_sorted(std::move(out)), crossings % 2 == 0 ? 1 : -1};
}

/// Sparse rational linear combination of monomials in a fixed signature.
class Element {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Element(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Element constant(SignaturePtr sig, const Rational& value) {
    Element e(std::move(sig));
    e.add_term(Monomial{}, value);
    return e;
  }

  static Element generator(SignaturePtr sig, std::size_t index) {
    if (index >= sig->size()) {
      throw Error(ErrorCode::UnknownGenerator, "generator index " + std::to_string(index) + " out of range");
    }
    Element e(std::move(sig));
    e.add_term(Monomial::single(index), Rational(1));
    return e;
  }

  static Element generator(SignaturePtr sig, std::string_view name) {
    auto index = sig->index_of(name);
    return generator(std::move(sig), index);
  }

  static Element term(SignaturePtr sig, const Monomial& m, const Rational& coefficient) {
    Element e(std::move(sig));
    e.add_term(m, coefficient);
    return e;
  }

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Signature& sig() const noexcept { return *sig_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Monomial{}); }

  void add_term(const Monomial& m, const Rational& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Degree of a nonzero homogeneous element; nullopt for zero or mixed degrees.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int md = m.degree(*sig_);
      if (d && *d != md) return std::nullopt;
      d = md;
    }
    return d;
  }

  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  std::size_t max_length() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.length());
    return n;
  }

  Element word_length_part(std::size_t length) const {
    Element out(sig_);
    for (const auto& [m, c] : terms_)
      if (m.length() == length) out.terms_.emplace(m, c);
    return out;
  }

  /// Splits by parity of monomial degree.
  Element parity_part(bool odd) const {
    Element out(sig_);
    for (const auto& [m, c] : terms_)
      if (m.odd(*sig_) == odd) out.terms_.emplace(m, c);
    return out;
  }

  Element& operator+=(const Element& rhs) {
    check_same(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }

  Element& operator-=(const Element& rhs) {
    check_same(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
  }

  Element& operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }

  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    Element out(a.sig_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto prod = multiply_monomials(*a.sig_, ma, mb);
        if (!prod) continue;
        Rational c = ca * cb;
        if (prod->sign < 0) c = -c;
        out.add_term(prod->monomial, c);
      }
    }
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  /// Canonical text form, e.g. "1 - b + 3/2*b^2". Parsing it back reproduces the element.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_unit()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += m.to_string(*sig_);
      }
    }
    return out;
  }

 private:
  void check_same(const Element& other) const {
    if (sig_ != other.sig_) throw Error(ErrorCode::MixedAlgebras, "elements belong to different algebras");
  }

  SignaturePtr sig_;
  TermMap terms_;
};

inline Element mul(const Element& lhs, const Element& rhs) { return lhs * rhs; }

/// Values a multiplicative substitution can land in: elements, path elements, scalars.
template <class T>
concept AlgebraValue = requires(T a, T b, Rational q) {
  { a + b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { q * a } -> std::convertible_to<T>;
};

/// Extends generator images multiplicatively and linearly. `unit` is the unit of the target.
template <AlgebraValue T>
T evaluate(const Element& elem, std::span<const std::optional<T>> images, const T& unit) {
  T result = Rational(0) * unit;
  std::map<std::pair<std::uint32_t, std::uint32_t>, T> powers;
  auto power = [&](std::uint32_t gen, std::uint32_t exp) -> const T& {
    auto key = std::make_pair(gen, exp);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    if (gen >= images.size() || !images[gen]) {
      throw Error(ErrorCode::MissingImage, "no image for generator '" + elem.sig().gen(gen).name + "'");
    }
    T value = *images[gen];
    for (std::uint32_t k = 1; k < exp; ++k) value = value * *images[gen];
    return powers.emplace(key, std::move(value)).first->second;
  };
  for (const auto& [m, c] : elem.terms()) {
    T value = unit;
    for (const auto& f : m.factors()) value = value * power(f.gen, f.exp);
    result = result + c * value;
  }
  return result;
}

template <AlgebraValue T>
T evaluate(const Element& elem, const std::vector<T>& images, const T& unit) {
  std::vector<std::optional<T>> wrapped(images.begin(), images.end());
  return evaluate<T>(elem, std::span<const std::optional<T>>(wrapped), unit);
}

/// Unique algebra map extension of generator images into `target`.
inline Element substitute(const Element& elem, std::span<const std::optional<Element>> images,
                          const SignaturePtr& target) {
  return evaluate<Element>(elem, images, Element::constant(target, Rational(1)));
}

inline Element substitute(const Element& elem, const std::vector<Element>& images, const SignaturePtr& target) {
  std::vector<std::optional<Element>> wrapped(images.begin(), images.end());
  return substitute(elem, std::span<const std::optional<Element>>(wrapped), target);
}

/// Scalar evaluation (for augmentations): generator values in the rationals.
inline Rational evaluate_scalar(const Element& elem, std::span<const Rational> values) {
  Rational total(0);
  for (const auto& [m, c] : elem.terms()) {
    Rational v = c;
    for (const auto& f : m.factors()) {
      if (f.gen >= values.size()) {
        throw Error(ErrorCode::MissingImage, "no value for generator '" + elem.sig().gen(f.gen).name + "'");
      }
      for (std::uint32_t k = 0; k < f.exp; ++k) v *= values[f.gen];
      if (v.is_zero()) break;
    }
    total += v;
  }
  return total;
}

/// Re-expresses an element in a signature with a renamed/reindexed generator set.
inline Element transfer(const Element& elem, const SignaturePtr& target, std::span<const std::optional<std::size_t>> index_map) {
  Element out(target);
  for (const auto& [m, c] : elem.terms()) {
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;
    for (const auto& f : m.factors()) {
      if (f.gen >= index_map.size() || !index_map[f.gen]) {
        throw Error(ErrorCode::NotASubcomplex,
                    "generator '" + elem.sig().gen(f.gen).name + "' has no counterpart in the target algebra");
      }
      factors.emplace_back(*index_map[f.gen], f.exp);
    }
    auto nm = normalize_monomial(*target, std::span<const std::pair<std::size_t, std::uint32_t>>(factors));
    if (!nm) continue;
    out.add_term(nm->monomial, nm->sign > 0 ? c : Rational(-c));
  }
  return out;
}

}  // namespace cdga

#endif  // CDGA_GRADED_HPP
