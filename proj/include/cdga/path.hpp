#ifndef CDGA_PATH_HPP
#define CDGA_PATH_HPP

// The path algebra PA = Q + (A_* (x) Q[s, ds]), its endpoint evaluations, cdga-homotopies,
// and the inductive construction of a homotopy right inverse of a weak equivalence into a
// Sullivan algebra.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cdga/dga.hpp"
#include "cdga/homology.hpp"
#include "cdga/linearization.hpp"

namespace cdga {

/// r + sum_m x_m (x) s^m + sum_n y_n (x) s^n ds. Coefficients are elements of the
/// augmentation ideal; membership is checked by check_homotopy, not enforced here.
class PathElement {
 public:
  explicit PathElement(SignaturePtr sig) : sig_(std::move(sig)) {}

  static PathElement constant(SignaturePtr sig, const Rational& r) {
    PathElement p(std::move(sig));
    p.constant_ = r;
    return p;
  }

  /// x (x) s^power, or x (x) s^power ds when with_ds.
  static PathElement tensor(const Element& x, unsigned power, bool with_ds = false) {
    PathElement p(x.signature());
    p.add(with_ds ? p.dpoly_ : p.poly_, power, x);
    return p;
  }

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Rational& constant_part() const noexcept { return constant_; }
  const std::map<unsigned, Element>& poly() const noexcept { return poly_; }
  const std::map<unsigned, Element>& dpoly() const noexcept { return dpoly_; }

  Element poly_coefficient(unsigned m) const {
    auto it = poly_.find(m);
    return it == poly_.end() ? Element(sig_) : it->second;
  }
  Element dpoly_coefficient(unsigned n) const {
    auto it = dpoly_.find(n);
    return it == dpoly_.end() ? Element(sig_) : it->second;
  }

  bool is_zero() const { return constant_.is_zero() && poly_.empty() && dpoly_.empty(); }

  void add_poly(unsigned m, const Element& x) { add(poly_, m, x); }
  void add_dpoly(unsigned n, const Element& y) { add(dpoly_, n, y); }

  PathElement& operator+=(const PathElement& q) {
    check_same(q);
    constant_ += q.constant_;
    for (const auto& [m, x] : q.poly_) add(poly_, m, x);
    for (const auto& [n, y] : q.dpoly_) add(dpoly_, n, y);
    return *this;
  }

  PathElement& operator*=(const Rational& c) {
    if (c.is_zero()) {
      *this = PathElement(sig_);
      return *this;
    }
    constant_ *= c;
    for (auto& [m, x] : poly_) x *= c;
    for (auto& [n, y] : dpoly_) y *= c;
    return *this;
  }

  friend PathElement operator+(PathElement a, const PathElement& b) { return a += b; }
  friend PathElement operator-(PathElement a, const PathElement& b) { return a += Rational(-1) * b; }
  friend PathElement operator*(const Rational& c, PathElement a) { return a *= c; }

  /// Graded-commutative product; ds is odd and moves past odd coefficients with a sign.
  friend PathElement operator*(const PathElement& p, const PathElement& q) {
    p.check_same(q);
    PathElement out(p.sig_);
    out.constant_ = p.constant_ * q.constant_;
    if (!p.constant_.is_zero()) {
      for (const auto& [m, x] : q.poly_) out.add(out.poly_, m, p.constant_ * x);
      for (const auto& [n, y] : q.dpoly_) out.add(out.dpoly_, n, p.constant_ * y);
    }
    if (!q.constant_.is_zero()) {
      for (const auto& [m, x] : p.poly_) out.add(out.poly_, m, q.constant_ * x);
      for (const auto& [n, y] : p.dpoly_) out.add(out.dpoly_, n, q.constant_ * y);
    }
    for (const auto& [m, x] : p.poly_) {
      for (const auto& [m2, x2] : q.poly_) out.add(out.poly_, m + m2, x * x2);
      for (const auto& [n2, y2] : q.dpoly_) out.add(out.dpoly_, m + n2, x * y2);
    }
    for (const auto& [n, y] : p.dpoly_) {
      for (const auto& [m2, x2] : q.poly_) {
        Element even = x2.parity_part(false);
        Element odd = x2.parity_part(true);
        out.add(out.dpoly_, n + m2, y * even - y * odd);
      }
    }
    return out;
  }

  friend bool operator==(const PathElement& a, const PathElement& b) {
    return a.sig_ == b.sig_ && a.constant_ == b.constant_ && a.poly_ == b.poly_ && a.dpoly_ == b.dpoly_;
  }

  std::string to_string() const {
    std::string out;
    auto append = [&](const std::string& piece) {
      if (!out.empty()) out += " + ";
      out += piece;
    };
    if (!constant_.is_zero()) append(constant_.str());
    auto s_power = [](unsigned m) {
      if (m == 0) return std::string();
      return m == 1 ? std::string("*s") : "*s^" + std::to_string(m);
    };
    for (const auto& [m, x] : poly_) append("[" + x.to_string() + "]" + s_power(m));
    for (const auto& [n, y] : dpoly_) append("[" + y.to_string() + "]" + s_power(n) + "*ds");
    return out.empty() ? "0" : out;
  }

 private:
  void add(std::map<unsigned, Element>& slot, unsigned k, const Element& x) {
    if (x.signature() != sig_) throw Error(ErrorCode::MixedAlgebras, "path coefficient from another algebra");
    if (x.is_zero()) return;
    auto [it, inserted] = slot.try_emplace(k, x);
    if (!inserted) {
      it->second += x;
      if (it->second.is_zero()) slot.erase(it);
    }
  }

  void check_same(const PathElement& q) const {
    if (sig_ != q.sig_) throw Error(ErrorCode::MixedAlgebras, "path elements over different algebras");
  }

  SignaturePtr sig_;
  Rational constant_{0};
  std::map<unsigned, Element> poly_;
  std::map<unsigned, Element> dpoly_;
};

inline PathElement path_mul(const PathElement& p, const PathElement& q) { return p * q; }

/// d(x (x) s^m) = dx (x) s^m + (-1)^|x| m x (x) s^(m-1) ds;  d(y (x) s^n ds) = dy (x) s^n ds.
inline PathElement path_d(const Dga& alg, const PathElement& p) {
  if (p.signature() != alg.signature()) throw Error(ErrorCode::MixedAlgebras, "path element over another algebra");
  PathElement out(alg.signature());
  for (const auto& [m, x] : p.poly()) {
    out.add_poly(m, extend_differential(alg, x));
    if (m > 0) {
      Element signed_x = x.parity_part(false) - x.parity_part(true);
      out.add_dpoly(m - 1, Rational(m) * signed_x);
    }
  }
  for (const auto& [n, y] : p.dpoly()) out.add_dpoly(n, extend_differential(alg, y));
  return out;
}

/// Pi_0: s = 0, ds = 0 (the s^0 coefficient survives). Pi_1: s = 1, ds = 0.
inline Element eval_endpoint(const PathElement& p, int endpoint) {
  Element out = Element::constant(p.signature(), p.constant_part());
  if (endpoint == 0) {
    out += p.poly_coefficient(0);
  } else {
    for (const auto& [m, x] : p.poly()) out += x;
  }
  return out;
}

/// dy_{k-1} = -(-1)^{|x_k|} k x_k for every k >= 1, the relation forced by closedness.
inline bool closedness_relation_check(const Dga& alg, const PathElement& p) {
  unsigned top = 0;
  for (const auto& [m, x] : p.poly()) top = std::max(top, m);
  for (const auto& [n, y] : p.dpoly()) top = std::max(top, n + 1);
  for (unsigned k = 1; k <= top; ++k) {
    Element x = p.poly_coefficient(k);
    Element lhs = extend_differential(alg, p.dpoly_coefficient(k - 1));
    Element rhs = Rational(-static_cast<long>(k)) * (x.parity_part(false) - x.parity_part(true));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// H: A -> PB with Pi_0 H = start and Pi_1 H = end.
struct Homotopy {
  DgaMap start;
  DgaMap end;
  Augmentation target_aug;
  std::vector<PathElement> images;

  const Dga& source() const noexcept { return start.source(); }
  const Dga& target() const noexcept { return start.target(); }

  PathElement apply(const Element& elem) const {
    return evaluate<PathElement>(elem, images, PathElement::constant(target().signature(), Rational(1)));
  }
};

inline ValidityReport check_homotopy(const Homotopy& h) {
  ValidityReport report;
  const Dga& A = h.source();
  const Dga& B = h.target();
  if (!(h.end.source() == A) || !(h.end.target() == B) || h.target_aug.owner().signature() != B.signature()) {
    report.add(ErrorCode::ObjectMismatch, "", "endpoint maps or augmentation do not match the homotopy");
    return report;
  }
  if (h.images.size() != A.size()) {
    report.add(ErrorCode::MissingImage, "", "homotopy must assign a path element to every generator");
    return report;
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    const auto& name = A.sig().gen(i).name;
    const PathElement& p = h.images[i];
    if (p.signature() != B.signature()) {
      report.add(ErrorCode::MixedAlgebras, name, "path element over the wrong algebra");
      continue;
    }
    for (const auto& [m, x] : p.poly())
      if (!h.target_aug(x).is_zero())
        report.add(ErrorCode::HomotopyInvalid, name, "coefficient of s^" + std::to_string(m) + " is not augmentation-null");
    for (const auto& [n, y] : p.dpoly())
      if (!h.target_aug(y).is_zero())
        report.add(ErrorCode::HomotopyInvalid, name,
                   "coefficient of s^" + std::to_string(n) + " ds is not augmentation-null");
    PathElement lhs = h.apply(A.diff(i));
    PathElement rhs = path_d(B, p);
    if (!(lhs == rhs)) {
      report.add(ErrorCode::NotChainMap, name, "H(d" + name + ") = " + lhs.to_string() + " but dH(" + name + ") = " + rhs.to_string());
    }
    Element e0 = eval_endpoint(p, 0);
    Element e1 = eval_endpoint(p, 1);
    if (!(e0 == h.start.image(i))) {
      report.add(ErrorCode::EndpointViolation, name,
                 "Pi_0 H(" + name + ") = " + e0.to_string() + ", expected " + h.start.image(i).to_string());
    }
    if (!(e1 == h.end.image(i))) {
      report.add(ErrorCode::EndpointViolation, name,
                 "Pi_1 H(" + name + ") = " + e1.to_string() + ", expected " + h.end.image(i).to_string());
    }
  }
  return report;
}

/// Constant homotopy of f (pointed (A, eps) -> (B, mu)): H(v) = mu(f v) + (f v - mu(f v)) (x) 1.
inline Homotopy constant_homotopy(const DgaMap& f, const Augmentation& mu) {
  std::vector<PathElement> images;
  for (const auto& im : f.images()) {
    Rational r = mu(im);
    PathElement p = PathElement::constant(f.target().signature(), r);
    p.add_poly(0, im - f.target().scalar(r));
    images.push_back(std::move(p));
  }
  return Homotopy{f, f, mu, std::move(images)};
}

/// Is Lf = Lg on linearized homology, given a verified homotopy H: f ~ g?
inline bool homotopic_maps_equal_on_LH(const DgaMap& f, const DgaMap& g, const Homotopy* h, const Augmentation& eps,
                                       const Augmentation& mu) {
  if (h == nullptr) throw Error(ErrorCode::HomotopyInvalid, "no homotopy supplied");
  if (!(h->start == f) || !(h->end == g)) throw Error(ErrorCode::HomotopyInvalid, "homotopy endpoints are not f and g");
  if (!check_homotopy(*h).ok()) throw Error(ErrorCode::HomotopyInvalid, "homotopy fails verification");
  QMatrix lf = linearized_map(f, eps, mu);
  QMatrix lg = linearized_map(g, eps, mu);
  // Path-object route: L(Pi_i) applied to the linearization of H gives Lf and Lg at chain level.
  const Dga& B = f.target();
  auto plus_mu = shifted_generators(B, mu, +1);
  for (int endpoint = 0; endpoint <= 1; ++endpoint) {
    const QMatrix& expected = endpoint == 0 ? lf : lg;
    for (std::size_t j = 0; j < f.source().size(); ++j) {
      PathElement hv = h->apply(f.source().gen(j) - f.source().scalar(eps.value(j)));
      Element value = substitute(eval_endpoint(hv, endpoint), plus_mu, B.signature());
      QVec col = linear_coordinates(value);
      if (col != expected.column(j)) return false;
    }
  }
  LinearComplex la = linearized_complex(f.source(), eps);
  LinearComplex lb = linearized_complex(B, mu);
  QMatrix diff = lf - lg;
  const auto& grading = B.grading();
  std::set<int> degrees(la.degrees.begin(), la.degrees.end());
  for (int k : degrees) {
    linalg::Echelon<Rational> boundaries;
    for (std::size_t j : detail::generators_in_degree(lb.degrees, grading, k - 1)) boundaries.add(lb.differential.column(j));
    for (const auto& z : detail::linear_cycles(la, grading, k))
      if (!boundaries.in_span(detail::apply(diff, z))) return false;
  }
  return true;
}

struct HomotopyInverse {
  DgaMap psi;  // (B, mu) -> (A, eps)
  Homotopy h;  // Id_B ~ f o psi
  /// How many generators the closed-form primitive Z handled without the linear fallback.
  std::size_t closed_form_hits = 0;
};

namespace detail {

/// Solves path_d(Z) = target for Z = v (x) 1 + sum_{k>=1} c_k (x) s^k, c_k augmentation-null.
inline std::optional<PathElement> solve_path_primitive(const Dga& B, const Element& v, const PathElement& target,
                                                       const TruncationSpec& trunc) {
  int deg = *v.degree();
  unsigned top = 1;
  for (const auto& [m, x] : target.poly()) top = std::max(top, m + 1);
  for (const auto& [n, y] : target.dpoly()) top = std::max(top, n + 1);
  std::vector<Monomial> basis;
  for (const auto& m : enumerate_basis(B.sig(), deg, trunc.word_cap, trunc.basis_limit))
    if (!m.is_unit()) basis.push_back(m);
  std::map<std::tuple<bool, unsigned, Monomial>, std::size_t> rows;
  auto vec = [&](const PathElement& p) {
    std::map<std::size_t, Rational> entries;
    auto put = [&](bool ds, unsigned k, const Element& x) {
      for (const auto& [m, c] : x.terms()) {
        auto key = std::make_tuple(ds, k, m);
        auto [it, inserted] = rows.try_emplace(key, rows.size());
        entries[it->second] += c;
      }
    };
    for (const auto& [k, x] : p.poly()) put(false, k, x);
    for (const auto& [k, y] : p.dpoly()) put(true, k, y);
    return linalg::from_map(entries);
  };
  std::vector<std::pair<unsigned, Monomial>> unknowns;
  std::vector<QVec> cols;
  for (unsigned k = 1; k <= top; ++k)
    for (const auto& m : basis) {
      unknowns.emplace_back(k, m);
      cols.push_back(vec(path_d(B, PathElement::tensor(Element::term(B.signature(), m, Rational(1)), k))));
    }
  PathElement base = PathElement::tensor(v, 0);
  QVec rhs = vec(target - path_d(B, base));
  linalg::ColumnSpace<Rational> space(cols);
  auto x = space.solve(rhs);
  if (!x) return std::nullopt;
  PathElement z = base;
  for (std::size_t t = 0; t < unknowns.size(); ++t)
    if (!(*x)[t].is_zero())
      z.add_poly(unknowns[t].first, Element::term(B.signature(), unknowns[t].second, (*x)[t]));
  return z;
}

/// Applies an algebra map coefficientwise: P(iota): PB' -> PB.
inline PathElement map_path(const DgaMap& iota, const PathElement& p) {
  PathElement out = PathElement::constant(iota.target().signature(), p.constant_part());
  for (const auto& [m, x] : p.poly()) out.add_poly(m, iota.apply(x));
  for (const auto& [n, y] : p.dpoly()) out.add_dpoly(n, iota.apply(y));
  return out;
}

}  // namespace detail

/// Builds psi: (B, mu) -> (A, eps) and H: Id_B ~ f o psi, one generator of B at a time in
/// Sullivan order. Output is verified before it is returned.
inline HomotopyInverse homotopy_inverse(const DgaMap& f, const Augmentation& eps, const Augmentation& mu,
                                        const TruncationSpec& trunc) {
  const Dga& A = f.source();
  const Dga& B = f.target();
  if (auto r = check_dga(B); !r.ok()) {
    throw Error(r.violations.front().code, "target is not a valid Sullivan algebra: " + r.violations.front().message);
  }
  if (auto r = chain_map_report(f); !r.ok()) throw Error(ErrorCode::NotChainMap, r.violations.front().message);
  if (!check_augmentation(eps) || !check_augmentation(mu)) {
    throw Error(ErrorCode::NotAnAugmentation, "supplied augmentations do not vanish on boundaries");
  }
  if (!pointed(f, eps, mu)) throw Error(ErrorCode::NotPointed, "map is not pointed");
  for (const auto& g : B.sig().gens()) {
    for (int k : {g.degree, g.degree - 1}) {
      try {
        (void)enumerate_basis(A.sig(), k, trunc.word_cap, trunc.basis_limit);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TruncationInsufficient) throw;
        throw Error(ErrorCode::SourceNotFiniteType, "source basis in degree " + std::to_string(k) + " is too large");
      }
    }
  }

  // Shear both sides so every generator lies in the augmentation kernel: f' = iota^{-1} f j.
  DgaMap iota = shear(B, mu);
  DgaMap iota_inv = unshear(B, mu);
  DgaMap j = shear(A, eps);
  const Dga& Bs = iota.source();
  const Dga& As = j.source();
  DgaMap fs = compose(compose(iota_inv, f), j);
  const auto& bsig = Bs.signature();

  std::vector<std::optional<PathElement>> h_images(Bs.size());
  std::vector<std::optional<Element>> psi_images(Bs.size());
  const PathElement path_unit = PathElement::constant(bsig, Rational(1));
  std::size_t hits = 0;

  for (std::size_t i = 0; i < Bs.size(); ++i) {
    Element v = Bs.gen(i);
    const Element& dv = Bs.diff(i);
    // (1) H(dv) from earlier generators.
    PathElement h_dv = evaluate<PathElement>(dv, std::span<const std::optional<PathElement>>(h_images), path_unit);
    // (2) primitive Z = v + sum_k (-1)^|v| / k * y_{k-1} (x) s^k; fall back to solving.
    PathElement z_path = PathElement::tensor(v, 0);
    int sign = Bs.sig().odd(i) ? -1 : 1;
    for (const auto& [n, y] : h_dv.dpoly()) z_path.add_poly(n + 1, Rational(sign, static_cast<long>(n + 1)) * y);
    if (path_d(Bs, z_path) == h_dv) {
      ++hits;
    } else {
      auto solved = detail::solve_path_primitive(Bs, v, h_dv, trunc);
      if (!solved) {
        throw Error(ErrorCode::NoSolutionInTruncation, "no primitive of H(d" + Bs.sig().gen(i).name + ") in the path algebra");
      }
      z_path = *solved;
    }
    Element z = eval_endpoint(z_path, 1);
    // (3) dw = psi(dv).
    Element psi_dv = substitute(dv, std::span<const std::optional<Element>>(psi_images), As.signature());
    Element w = solve_preimage(As, psi_dv, Bs.sig().degree(i) + 1, trunc);
    // (4) f'(c) = z - f'(w) + db with c closed.
    Element residual = z - fs.apply(w);
    QisoCorrection corr = solve_qiso_correction(fs, residual, trunc);
    // (5)
    psi_images[i] = corr.a + w;
    h_images[i] = z_path + path_d(Bs, PathElement::tensor(corr.b, 1));
  }

  std::vector<Element> psi_sheared;
  std::vector<PathElement> h_sheared;
  for (std::size_t i = 0; i < Bs.size(); ++i) {
    psi_sheared.push_back(*psi_images[i]);
    h_sheared.push_back(*h_images[i]);
  }
  DgaMap psi_s(Bs, As, psi_sheared);
  DgaMap psi = compose(j, compose(psi_s, iota_inv));
  std::vector<PathElement> h_final;
  for (std::size_t i = 0; i < B.size(); ++i) {
    PathElement sheared_value = evaluate<PathElement>(iota_inv.image(i), h_sheared, path_unit);
    h_final.push_back(detail::map_path(iota, sheared_value));
  }
  Homotopy h{DgaMap::identity(B), compose(f, psi), mu, std::move(h_final)};

  if (auto r = chain_map_report(psi); !r.ok()) {
    throw Error(ErrorCode::HomotopyInvalid, "internal: psi is not a chain map: " + r.violations.front().message);
  }
  if (!pointed(psi, mu, eps)) throw Error(ErrorCode::HomotopyInvalid, "internal: psi is not pointed");
  if (auto r = check_homotopy(h); !r.ok()) {
    throw Error(ErrorCode::HomotopyInvalid, "internal: homotopy fails verification: " + r.violations.front().message);
  }
  psi.mark_chain_map(true);
  psi.mark_pointed(true);
  return HomotopyInverse{std::move(psi), std::move(h), hits};
}

}  // namespace cdga

#endif  // CDGA_PATH_HPP
