#ifndef CDGA_TEST_FIXTURES_HPP
#define CDGA_TEST_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "cdga/cdga.hpp"

namespace fixtures {

using namespace cdga;

inline SignaturePtr make_sig(std::vector<std::pair<std::string, int>> gens, GradingSpec g = GradingSpec::integer()) {
  std::vector<Generator> out;
  for (auto& [name, deg] : gens) out.push_back(Generator{name, deg, 0, std::nullopt, {}});
  return Signature::make_ordered(g, std::move(out));
}

// S(x,y), |x|=3, |y|=2, dx=0, dy=x.
inline Dga acyc() {
  auto s = make_sig({{"x", 3}, {"y", 2}});
  return Dga(s, {Element(s), Element::generator(s, "x")});
}

// S(e,f), |e|=2, |f|=3, de=0, df=e^2.
inline Dga sph2() {
  auto s = make_sig({{"e", 2}, {"f", 3}});
  Element e = Element::generator(s, "e");
  return Dga(s, {Element(s), e * e});
}

// S(u), |u|=3, du=0.
inline Dga odd() { return Dga(make_sig({{"u", 3}})); }

// S(b,a), |b|=0, |a|=-1, db=0, da=b^2-b.
inline Dga chek() {
  auto s = make_sig({{"b", 0}, {"a", -1}});
  Element b = Element::generator(s, "b");
  return Dga(s, {Element(s), b * b - b});
}

inline Augmentation chek_eps(const Dga& c, int value) {
  return Augmentation(c, {Rational(value), Rational(0)});
}

// b -> 1 - b, a -> a, carrying eps0 to eps1.
inline DgaMap chek_involution(const Dga& c) {
  return DgaMap(c, c, {c.one() - c.gen("b"), c.gen("a")});
}

inline DgaMap odd_double(const Dga& o) { return DgaMap(o, o, {Rational(2) * o.gen("u")}); }

inline TruncationSpec window(int lo, int hi, std::size_t cap = 4) {
  TruncationSpec t;
  t.deg_min = lo;
  t.deg_max = hi;
  t.word_cap = cap;
  return t;
}

}  // namespace fixtures

#endif
