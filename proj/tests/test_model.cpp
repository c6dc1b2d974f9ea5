#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using namespace cdga;
using fixtures::window;

TEST_CASE("factorization of the unit of the two-sphere fixture") {
  auto s = fixtures::sph2();
  FactorizationResult r = sullivan_factorize(DgaMap::unit(s), window(0, 4, 2), 5);
  REQUIRE(!r.stage_log.empty());
  CHECK(r.stage_log[0].added == 8);
  CHECK(r.stage_log[0].x_count == 3);
  CHECK(r.stage_log[0].y_count == 3);
  CHECK(r.stage_log[0].w_count == 2);
  CHECK(r.final_check.qiso);
  CHECK(r.final_check.target.nonzero() == std::map<int, std::size_t>{{0, 1}, {2, 1}});
  CHECK(check_dga(r.intermediate).ok());
  CHECK(check_chain_map(r.projection).ok());
  CHECK(r.surjectivity.size() == 3);
  for (const auto& [mono, gen] : r.surjectivity) {
    CHECK(r.projection.image(*r.intermediate.sig().find(gen)).to_string() == mono);
  }
}

TEST_CASE("factorization of an identity adds nothing") {
  Dga q = Dga::ground();
  FactorizationResult r = sullivan_factorize(DgaMap::identity(q), window(0, 2), 3);
  CHECK(r.added_generators() == 0);
  CHECK(r.projection == DgaMap::identity(q));
}

TEST_CASE("factorization window checks") {
  auto s = fixtures::sph2();
  try {
    (void)cofibrant_replace(s, window(2, 4), 3);
    FAIL("expected WindowTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooSmall);
  }
  try {
    (void)cofibrant_replace(s, window(0, 4, 2), 1);
    FAIL("expected StageBudgetExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StageBudgetExhausted);
  }
}

TEST_CASE("cofibrant replacement is compatible with the input map") {
  auto o = fixtures::odd();
  FactorizationResult r = cofibrant_replace(o, window(0, 6), 4);
  CHECK(compose(r.projection, r.inclusion) == DgaMap::unit(o));
  CHECK(r.final_check.qiso);
}

TEST_CASE("augmentation certificates") {
  auto c = fixtures::chek();
  auto e0 = fixtures::chek_eps(c, 0);
  auto e1 = fixtures::chek_eps(c, 1);
  Certificate cert = certify_aug_equivalence(c, e0, e1, fixtures::chek_involution(c));
  CHECK(cert.check.qiso);
  CHECK_NOTHROW(certify_aug_equivalence(c, e0, e0, DgaMap::identity(c)));
  try {
    (void)certify_aug_equivalence(c, e0, e1, DgaMap::identity(c));
    FAIL("expected NotPointed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPointed);
  }
  try {
    (void)certify_aug_equivalence(c, e0, e1, DgaMap(c, c, {c.one() - c.gen("b"), c.zero()}));
    FAIL("expected NotChainMap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotChainMap);
  }
  auto o = fixtures::odd();
  try {
    (void)certify_aug_equivalence(o, Augmentation::zero(o), Augmentation::zero(o), DgaMap(o, o, {o.zero()}));
    FAIL("expected NotWeakEquivalence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotWeakEquivalence);
  }
  Certificate back = invert_certificate(cert, window(-2, 0));
  CHECK(back.from == e1);
  CHECK(back.to == e0);
}

TEST_CASE("augmentation class table") {
  auto c = fixtures::chek();
  AugClassTable t = aug_class_table(c, {fixtures::chek_eps(c, 0), fixtures::chek_eps(c, 1)}, {fixtures::chek_involution(c)});
  CHECK(t.known_equivalent(0, 1));
  CHECK(t.known_equivalent(1, 0));
}

TEST_CASE("transport of augmentations") {
  auto c = fixtures::chek();
  auto e1 = fixtures::chek_eps(c, 1);
  CHECK(transport_aug(DgaMap::identity(c), e1) == e1);
  CHECK(transport_aug(fixtures::chek_involution(c), e1) == fixtures::chek_eps(c, 0));
  auto a = fixtures::acyc();
  CHECK(transport_aug(DgaMap::unit(a), Augmentation::zero(a)).values().empty());
}

TEST_CASE("transport coherence through a homotopy inverse") {
  auto c = fixtures::chek();
  auto e0 = fixtures::chek_eps(c, 0);
  auto e1 = fixtures::chek_eps(c, 1);
  DgaMap f = DgaMap::identity(c);
  DgaMap g = fixtures::chek_involution(c);
  // eps o f = e1 and eps o g = e0 for eps = e1; f' o g then carries e0 to e1.
  HomotopyInverse fin = homotopy_inverse(f, transport_aug(f, e1), e1, window(-2, 0));
  Certificate cert = certify_aug_equivalence(c, transport_aug(g, e1), transport_aug(f, e1), compose(fin.psi, g));
  CHECK(cert.check.qiso);
}

TEST_CASE("positivity") {
  CHECK_FALSE(is_k_positively_generated(fixtures::chek(), 0));
  CHECK(is_k_positively_generated(fixtures::sph2(), 1));
  CHECK(is_k_positively_generated(Dga::ground(), 100));
  CHECK(unique_augmentation_if_positive(fixtures::sph2())->is_zero());
  CHECK(unique_augmentation_if_positive(fixtures::odd())->is_zero());
  CHECK_FALSE(unique_augmentation_if_positive(fixtures::chek()).has_value());
  auto cyc = Dga(fixtures::make_sig({{"u", 1}}, GradingSpec::cyclic(2)));
  CHECK_THROWS_AS(is_k_positively_generated(cyc, 0), Error);
}

TEST_CASE("augmentation enumeration") {
  auto c = fixtures::chek();
  auto augs = enumerate_augmentations(c, {Rational(0), Rational(1), Rational(2)});
  REQUIRE(augs.size() == 2);
  CHECK(augs[0] == fixtures::chek_eps(c, 0));
  CHECK(augs[1] == fixtures::chek_eps(c, 1));
  CHECK(enumerate_augmentations(c, {Rational(2)}).empty());
  auto s = fixtures::sph2();
  auto trivial = enumerate_augmentations(s, {Rational(3)});
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].is_zero());
  try {
    (void)enumerate_augmentations(c, {Rational(0), Rational(1)}, 1);
    FAIL("expected GridTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooLarge);
  }
}
