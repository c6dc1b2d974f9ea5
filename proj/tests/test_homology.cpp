#include <catch_amalgamated.hpp>

#include "oracle/dense_rank.hpp"
#include "support/fixtures.hpp"

using namespace cdga;
using fixtures::window;

namespace {

std::map<int, std::size_t> ranks(const HomologyTable& t) { return t.ranks; }

}  // namespace

TEST_CASE("sparse echelon solves and finds kernels") {
  using linalg::SparseVec;
  std::vector<SparseVec<Rational>> cols{{{0, Rational(1)}, {1, Rational(1)}}, {{1, Rational(2)}}, {{0, Rational(2)}, {1, Rational(4)}}};
  linalg::ColumnSpace<Rational> space(cols);
  CHECK(space.rank() == 2);
  auto x = space.solve({{0, Rational(1)}});
  REQUIRE(x);
  CHECK((*x)[0] * 1 + (*x)[2] * 2 == 1);
  CHECK(space.kernel().size() == 1);
  CHECK_FALSE(space.solve({{2, Rational(1)}}));
}

TEST_CASE("homology of fixtures matches the dense oracle") {
  struct Case {
    Dga alg;
    std::map<int, std::size_t> nonzero;
  };
  std::vector<Case> cases{{fixtures::acyc(), {{0, 1}}}, {fixtures::sph2(), {{0, 1}, {2, 1}}}, {fixtures::odd(), {{0, 1}, {3, 1}}}};
  for (const auto& c : cases) {
    HomologyTable t = homology_dims(c.alg, window(0, 6));
    CHECK(t.nonzero() == c.nonzero);
    CHECK(ranks(t) == oracle::homology(c.alg, 0, 6, t.truncation.word_cap));
    CHECK(t.exact);
  }
}

TEST_CASE("basis enumeration agrees with brute force") {
  auto s = fixtures::sph2();
  for (int k = -2; k <= 12; ++k) {
    CHECK(enumerate_basis(s.sig(), k, 5).size() == oracle::monomials(s, k, 5).size());
  }
  auto c = fixtures::chek();
  for (int k = -3; k <= 1; ++k) CHECK(enumerate_basis(c.sig(), k, 4).size() == oracle::monomials(c, k, 4).size());
}

TEST_CASE("infinite-type pieces are never reported exact") {
  auto c = fixtures::chek();
  CHECK_FALSE(word_length_bound(c.sig(), 0).has_value());
  try {
    auto t = homology_dims(c, window(-1, 0));
    CHECK_FALSE(t.exact);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationInsufficient);
  }
}

TEST_CASE("leaks trigger retries with a larger cap") {
  auto s = fixtures::sph2();
  // d(e f) = e^3 leaves the cap-2 basis in degree 6; the engine must widen the cap.
  HomologyTable t = homology_dims(s, window(4, 6, 2));
  CHECK(t.truncation.word_cap > 2);
  CHECK(ranks(t) == oracle::homology(s, 4, 6, t.truncation.word_cap));
}

TEST_CASE("retry budget exhaustion raises TruncationInsufficient") {
  auto s = fixtures::sph2();
  TruncationSpec t = window(2, 3, 1);
  t.max_retries = 0;
  try {
    (void)homology_dims(s, t);
    FAIL("expected TruncationInsufficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationInsufficient);
  }
}

TEST_CASE("preimages") {
  auto s = fixtures::sph2();
  Element e = s.gen("e");
  Element w = solve_preimage(s, e * e, std::nullopt, window(0, 6));
  CHECK(extend_differential(s, w) == e * e);
  try {
    (void)solve_preimage(s, e, std::nullopt, window(0, 6));
    FAIL("expected NoSolutionInTruncation");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NoSolutionInTruncation);
  }
}

TEST_CASE("quasi-isomorphism corrections") {
  auto o = fixtures::odd();
  DgaMap dbl = fixtures::odd_double(o);
  QisoCorrection c = solve_qiso_correction(dbl, o.gen("u"), window(0, 6));
  CHECK(c.a == Rational(1, 2) * o.gen("u"));
  CHECK(c.b.is_zero());
}

TEST_CASE("window quasi-isomorphism checks") {
  auto a = fixtures::acyc();
  CHECK(map_is_qiso_on_window(DgaMap::unit(a), window(0, 6)));
  auto o = fixtures::odd();
  CHECK(map_is_qiso_on_window(fixtures::odd_double(o), window(0, 6)));
  CHECK_FALSE(map_is_qiso_on_window(DgaMap(o, o, {o.zero()}), window(0, 6)));
  auto s = fixtures::sph2();
  CHECK_FALSE(map_is_qiso_on_window(DgaMap::unit(s), window(0, 6)));
}

TEST_CASE("cyclic gradings") {
  auto s = fixtures::make_sig({{"u", 1}}, GradingSpec::cyclic(2));
  Dga d(s);
  HomologyTable t = homology_dims(d, window(0, 1));
  CHECK(t.rank(0) == 1);
  CHECK(t.rank(1) == 1);
  CHECK(t.exact);
}
