#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using namespace cdga;
using fixtures::make_sig;

TEST_CASE("fixtures are valid Sullivan algebras") {
  for (const auto& alg : {fixtures::acyc(), fixtures::sph2(), fixtures::odd(), fixtures::chek()}) {
    CHECK(check_dga(alg).ok());
  }
}

TEST_CASE("Leibniz extension") {
  auto s = fixtures::sph2();
  Element e = s.gen("e");
  Element f = s.gen("f");
  CHECK(extend_differential(s, e * f) == e * e * e);
  CHECK(extend_differential(s, f * e) == e * e * e);
  auto c = fixtures::chek();
  Element b = c.gen("b");
  Element a = c.gen("a");
  CHECK(extend_differential(c, a * b) == (b * b - b) * b);
}

TEST_CASE("structural violations are reported") {
  auto s = make_sig({{"x", 2}, {"y", 3}});
  Element x = Element::generator(s, "x");
  Element y = Element::generator(s, "y");
  {
    Dga bad(s, {y, Element(s)});
    auto r = check_dga(bad);
    CHECK(r.has(ErrorCode::TriangularityViolation));
  }
  {
    Dga bad(s, {Element(s), x});
    CHECK(check_dga(bad).has(ErrorCode::DegreeViolation));
  }
  auto t = make_sig({{"x", 1}, {"y", 1}, {"z", 1}});
  Element tx = Element::generator(t, "x");
  Element ty = Element::generator(t, "y");
  Dga nonzero_square(t, {Element(t), Element(t), tx * ty});
  CHECK(check_dga(nonzero_square).ok());
  auto w = make_sig({{"x", 1}, {"y", 2}, {"z", 2}});
  Element wy = Element::generator(w, "y");
  Element wx = Element::generator(w, "x");
  Dga d2(w, {Element(w), Element(w), wx * wy});
  CHECK(check_dga(d2).ok());
  Dga d2bad(w, {Element(w), Element(w), wy * wy});
  CHECK(check_dga(d2bad).has(ErrorCode::DegreeViolation));
  auto v = make_sig({{"a", 2}, {"b", 3}, {"c", 4}});
  Element va = Element::generator(v, "a");
  Element vb = Element::generator(v, "b");
  Dga d2fail(v, {Element(v), va * va, vb * va});
  CHECK(check_dga(d2fail).has(ErrorCode::D2Violation));
}

TEST_CASE("chain maps and pointedness") {
  auto c = fixtures::chek();
  DgaMap inv = fixtures::chek_involution(c);
  CHECK(check_chain_map(inv).ok());
  CHECK(inv.verified_chain_map());
  auto e0 = fixtures::chek_eps(c, 0);
  auto e1 = fixtures::chek_eps(c, 1);
  CHECK(check_augmentation(e0));
  CHECK(check_augmentation(e1));
  CHECK_FALSE(check_augmentation(fixtures::chek_eps(c, 2)));
  CHECK(pointed(inv, e0, e1));
  CHECK_FALSE(pointed(DgaMap::identity(c), e0, e1));
  DgaMap bad(c, c, {c.gen("b"), c.zero()});
  auto r = chain_map_report(bad);
  CHECK(r.has(ErrorCode::NotChainMap));
}

TEST_CASE("composition and pullback") {
  auto c = fixtures::chek();
  DgaMap inv = fixtures::chek_involution(c);
  CHECK(compose(inv, inv) == DgaMap::identity(c));
  auto e1 = fixtures::chek_eps(c, 1);
  CHECK(pullback(e1, inv) == fixtures::chek_eps(c, 0));
  CHECK_THROWS_AS(compose(inv, DgaMap::identity(fixtures::odd())), Error);
}

TEST_CASE("restriction to prefixes and action bounds") {
  auto s = fixtures::sph2();
  Dga first = restrict(s, PrefixCutoff{1});
  CHECK(first.size() == 1);
  CHECK(check_dga(first).ok());
  auto t = make_sig({{"x", 3}, {"y", 2}});
  Dga acyc(t, {Element(t), Element::generator(t, "x")});
  std::vector<bool> keep{false, true};
  try {
    (void)restrict_to(acyc, keep);
    FAIL("expected NotASubcomplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubcomplex);
  }
  CHECK_THROWS_AS(restrict(acyc, ActionCutoff{Rational(1)}), Error);
}

TEST_CASE("inclusion of a sub-dga") {
  auto s = fixtures::sph2();
  Dga first = restrict(s, PrefixCutoff{1});
  DgaMap inc = inclusion(first, s);
  CHECK(check_chain_map(inc).ok());
}
