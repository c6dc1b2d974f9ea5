#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using namespace cdga;

TEST_CASE("shear by an augmentation") {
  auto c = fixtures::chek();
  auto e1 = fixtures::chek_eps(c, 1);
  DgaMap sh = shear(c, e1);
  CHECK(sh.image(0) == c.gen("b") - c.one());
  CHECK(sh.image(1) == c.gen("a"));
  CHECK(check_chain_map(sh).ok());
  DgaMap un = unshear(c, e1);
  CHECK(check_chain_map(un).ok());
  CHECK(compose(sh, un) == DgaMap::identity(c));
  CHECK(pullback(e1, sh).is_zero());
  CHECK(shear(c, fixtures::chek_eps(c, 0)).images() == DgaMap::identity(c).images());
}

TEST_CASE("linearized complexes of fixtures") {
  auto c = fixtures::chek();
  LinearComplex l0 = linearized_complex(c, fixtures::chek_eps(c, 0));
  CHECK(l0.differential(0, 1) == -1);
  CHECK(l0.differential(1, 1) == 0);
  LinearComplex l1 = linearized_complex(c, fixtures::chek_eps(c, 1));
  CHECK(l1.differential(0, 1) == 1);
  auto s = fixtures::sph2();
  LinearComplex ls = linearized_complex(s, Augmentation::zero(s));
  CHECK(ls.differential.is_zero());
}

TEST_CASE("linearized maps") {
  auto c = fixtures::chek();
  QMatrix m = linearized_map(fixtures::chek_involution(c), fixtures::chek_eps(c, 0), fixtures::chek_eps(c, 1));
  CHECK(m(0, 0) == -1);
  CHECK(m(1, 1) == 1);
  CHECK(m(0, 1) == 0);
  CHECK(m(1, 0) == 0);
  CHECK(linearized_map(DgaMap::identity(c), fixtures::chek_eps(c, 0), fixtures::chek_eps(c, 0)) == QMatrix::identity(2));
  auto a = fixtures::acyc();
  CHECK(linearized_map(DgaMap::unit(a), Augmentation::zero(Dga::ground()), Augmentation::zero(a)).cols() == 0);
  try {
    (void)linearized_map(DgaMap::identity(c), fixtures::chek_eps(c, 0), fixtures::chek_eps(c, 1));
    FAIL("expected NotPointed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPointed);
  }
}

TEST_CASE("linearized homology") {
  auto c = fixtures::chek();
  CHECK(linearized_homology(c, fixtures::chek_eps(c, 0)).nonzero().empty());
  CHECK(linearized_homology(c, fixtures::chek_eps(c, 1)).nonzero().empty());
  auto a = fixtures::acyc();
  CHECK(linearized_homology(a, Augmentation::zero(a)).nonzero().empty());
  auto o = fixtures::odd();
  CHECK(linearized_homology(o, Augmentation::zero(o)).nonzero() == std::map<int, std::size_t>{{3, 1}});
  CHECK(linearized_homology(o, Augmentation::zero(o)).exact);
}

TEST_CASE("weak equivalence by linearization") {
  auto c = fixtures::chek();
  CHECK(weak_equivalence_by_linearization(fixtures::chek_involution(c), fixtures::chek_eps(c, 0), fixtures::chek_eps(c, 1)));
  auto a = fixtures::acyc();
  CHECK(weak_equivalence_by_linearization(DgaMap::unit(a), Augmentation::zero(Dga::ground()), Augmentation::zero(a)));
  auto o = fixtures::odd();
  CHECK_FALSE(weak_equivalence_by_linearization(DgaMap(o, o, {o.zero()}), Augmentation::zero(o), Augmentation::zero(o)));
}

TEST_CASE("shear conjugation") {
  auto c = fixtures::chek();
  auto e1 = fixtures::chek_eps(c, 1);
  Dga sheared = sheared_dga(c, e1);
  LinearComplex direct = linearized_complex(c, e1);
  LinearComplex via = linearized_complex(sheared, Augmentation::zero(sheared));
  CHECK(direct.differential == via.differential);
}

TEST_CASE("functoriality of linearization") {
  auto c = fixtures::chek();
  auto e0 = fixtures::chek_eps(c, 0);
  auto e1 = fixtures::chek_eps(c, 1);
  DgaMap inv = fixtures::chek_involution(c);
  QMatrix lf = linearized_map(inv, e0, e1);
  QMatrix lg = linearized_map(inv, e1, e0);
  CHECK(linearized_map(compose(inv, inv), e0, e0) == lg * lf);
}

TEST_CASE("degree shifts") {
  HomologyTable t;
  t.ranks = {{3, 1}};
  CHECK(shift_degrees(t, 1).ranks == std::map<int, std::size_t>{{4, 1}});
  CHECK(shift_degrees(t, 0).ranks == t.ranks);
  t.ranks = {{0, 1}, {2, 1}};
  CHECK(shift_degrees(t, -1).ranks == std::map<int, std::size_t>{{-1, 1}, {1, 1}});
}
