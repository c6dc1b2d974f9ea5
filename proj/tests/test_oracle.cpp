#include <catch_amalgamated.hpp>

#include "oracle/dense_rank.hpp"
#include "support/fixtures.hpp"

using cdga::Rational;

TEST_CASE("dense rank of small matrices") {
  CHECK(oracle::dense_rank({}) == 0);
  CHECK(oracle::dense_rank({{Rational(0), Rational(0)}}) == 0);
  CHECK(oracle::dense_rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
  CHECK(oracle::dense_rank({{Rational(1), Rational(2)}, {Rational(3), Rational(4)}}) == 2);
  CHECK(oracle::dense_rank({{Rational(1, 3), Rational(0), Rational(1)},
                            {Rational(0), Rational(1), Rational(1)},
                            {Rational(1, 3), Rational(1), Rational(2)}}) == 2);
}

TEST_CASE("monomial enumeration by exponent vectors") {
  auto s = fixtures::sph2();
  CHECK(oracle::monomials(s, 4, 4).size() == 1);  // e^2
  CHECK(oracle::monomials(s, 5, 4).size() == 1);  // e f
  CHECK(oracle::monomials(s, 6, 4).size() == 1);  // e^3 (f^2 = 0)
  CHECK(oracle::monomials(s, 0, 4).size() == 1);
  CHECK(oracle::monomials(fixtures::odd(), 6, 4).empty());
}

TEST_CASE("oracle homology of the canonical fixtures") {
  using M = std::map<int, std::size_t>;
  CHECK(oracle::homology(fixtures::acyc(), 0, 6, 4) == M{{0, 1}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}});
  CHECK(oracle::homology(fixtures::sph2(), 0, 6, 4) == M{{0, 1}, {1, 0}, {2, 1}, {3, 0}, {4, 0}, {5, 0}, {6, 0}});
  CHECK(oracle::homology(fixtures::odd(), 0, 6, 4) == M{{0, 1}, {1, 0}, {2, 0}, {3, 1}, {4, 0}, {5, 0}, {6, 0}});
}
