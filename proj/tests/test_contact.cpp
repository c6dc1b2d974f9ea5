#include <catch_amalgamated.hpp>

#include <functional>

#include "support/files.hpp"
#include "support/fixtures.hpp"

using namespace cdga;
using namespace cdga::contact;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("parsing a plain algebra") {
  Workspace ws = Workspace::from_text(files::fixture("sph2.cdga"));
  const Dga& s = ws.algebra("main");
  CHECK(s.size() == 2);
  CHECK(check_dga(s).ok());
  CHECK(s.diff(1) == s.gen("e") * s.gen("e"));
  CHECK(homology_dims(s, fixtures::window(0, 6)).nonzero() == std::map<int, std::size_t>{{0, 1}, {2, 1}});
}

TEST_CASE("orbit degrees from Conley-Zehnder indices") {
  Workspace ws = Workspace::from_text(files::fixture("orbit_cz.cdga"));
  const Dga& a = ws.algebra("main");
  REQUIRE(a.size() == 1);
  CHECK(a.presented_degree(0) == 2);
  CHECK(a.sig().degree(0) == -2);
  CHECK(sft_degree_from_cz(3, 3) == 2);
}

TEST_CASE("expression signs follow the written factor order") {
  Document d = parse_document("gen u 1\ngen v 1\ngen w 3\ndiff w = v*u\n");
  const auto& alg = d.algebra("main");
  Element u = Element::generator(alg.sig, "u");
  Element v = Element::generator(alg.sig, "v");
  CHECK(alg.diff[2] == -(u * v));
  Document p = parse_document("gen x 2\ngen y 5\ndiff y = (x + 1/2)^2 - x^2 - x - 1/4\n");
  CHECK(p.algebra("main").diff[1].is_zero());
}

TEST_CASE("parse errors carry positions") {
  try {
    (void)parse_document("gen x 2\ndiff x = h\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeclaredGenerator);
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
  }
  CHECK(code_of([] { (void)parse_document("gen x\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { (void)parse_document("gen x 1\ngen x 2\n"); }) == ErrorCode::DuplicateName);
  CHECK(code_of([] { (void)parse_document("frobnicate\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { (void)parse_document("grading Z/3\n"); }) == ErrorCode::InvalidGrading);
  CHECK(code_of([] { (void)parse_document("orbit g cz 2 action 1\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { (void)parse_document("aug e other\n"); }) == ErrorCode::UnknownName);
  CHECK(code_of([] { (void)parse_document("gen x 1 action 1/0\n"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("contact algebras are sorted by action") {
  Document d = parse_document("dim 3\norbit a2 deg 2 action 2\norbit a1 deg 1 action 1\ndiff a2 = a1\n");
  Dga alg = build_contact_dga(d.algebra("main"), d.grading);
  CHECK(alg.sig().gen(0).name == "a1");
  CHECK(alg.presentation() == DegreeConvention::Sft);
  CHECK(check_dga(alg).ok());
  Document bad = parse_document("dim 3\norbit a1 deg 1 action 1\norbit a2 deg 2 action 2\ndiff a1 = a2\n");
  CHECK(code_of([&] { (void)build_contact_dga(bad.algebra("main"), bad.grading); }) == ErrorCode::ActionIncreaseViolation);
}

TEST_CASE("FIX-CHEK shaped orbit data") {
  Workspace ws = Workspace::from_text(files::fixture("chek_contact.cdga"));
  const Dga& alg = ws.algebra("main");
  CHECK(check_dga(alg).ok());
  auto e0 = ws.augmentation("e0");
  auto e1 = ws.augmentation("e1");
  CHECK(lch(alg, e0).nonzero().empty());
  CHECK(lch(alg, e1).nonzero().empty());
  CHECK(certify_aug_equivalence(alg, e0, e1, ws.map("inv")).check.qiso);
  CHECK(code_of([&] { (void)ws.augmentation("nope"); }) == ErrorCode::UnknownName);
}

TEST_CASE("lch of a single closed orbit") {
  Workspace ws = Workspace::from_text("dim 5\norbit g deg 3 action 1\ndiff g = 0\n");
  const Dga& alg = ws.algebra("main");
  CHECK(lch(alg, ws.augmentation("trivial")).nonzero() == std::map<int, std::size_t>{{3, 1}});
}

TEST_CASE("first-homology decomposition") {
  Workspace ws = Workspace::from_text(files::fixture("h1_labels.cdga"));
  const Dga& alg = ws.algebra("main");
  CHECK(alg.size() == 3);  // the bad orbit is dropped
  auto parts = h1_decompose(alg, fixtures::window(0, 6));
  CHECK(parts["0"][2] == 1);
  CHECK(parts["0"][4] == 1);
  CHECK(parts["c"][3] == 1);
  CHECK(parts["2*c"][4] == 1);
  Dga a0 = extract_A0(alg);
  CHECK(a0.size() == 1);
  CHECK(a0.sig().gen(0).name == "p");

  Workspace all_zero = Workspace::from_text(files::fixture("sph2.cdga"));
  CHECK(extract_A0(all_zero.algebra("main")).size() == 2);
  Workspace one = Workspace::from_text("dim 3\nh1 c\norbit g deg 2 action 1 h1 c\n");
  CHECK(extract_A0(one.algebra("main")).size() == 0);
  Workspace inverse = Workspace::from_text("dim 3\nh1 c\norbit g deg 2 action 1 h1 c\norbit k deg 2 action 2 h1 -c\n");
  CHECK(code_of([&] { (void)extract_A0(inverse.algebra("main")); }) == ErrorCode::NotFreelyGenerated);
  Workspace leak = Workspace::from_text(files::fixture("errors/label_leak.cdga"));
  CHECK(code_of([&] { (void)leak.algebra("main"); }) == ErrorCode::LabelLeak);
}

TEST_CASE("SADC checks") {
  Workspace ws = Workspace::from_text(files::fixture("sadc_positive.cdga"));
  const Dga& alg = ws.algebra("main");
  SadcReport r = sadc_check(alg, 1);
  CHECK(r.pass);
  CHECK(r.adnh);
  CHECK(is_k_positively_generated(alg, 1));
  Workspace zero = Workspace::from_text("dim 3\norbit z deg 0 action 1\n");
  SadcReport f = sadc_check(zero.algebra("main"), 0);
  CHECK_FALSE(f.pass);
  CHECK(f.witnesses.size() == 1);
  Workspace lab = Workspace::from_text(files::fixture("h1_labels.cdga"));
  CHECK_FALSE(sadc_check(lab.algebra("main"), 1).adnh);
}

TEST_CASE("symmetric algebra dimensions") {
  HomologyTable t;
  t.ranks = {{2, 1}};
  CHECK(sym_dims(t, 6).ranks == std::map<int, std::size_t>{{0, 1}, {2, 1}, {4, 1}, {6, 1}});
  t.ranks = {{1, 1}};
  CHECK(sym_dims(t, 3).ranks == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  CHECK(sym_dims(HomologyTable{}, 5).ranks == std::map<int, std::size_t>{{0, 1}});
  t.ranks = {{0, 1}};
  CHECK(code_of([&] { (void)sym_dims(t, 3); }) == ErrorCode::NonPositiveDegree);
}

TEST_CASE("Avdek comparison") {
  Workspace g = Workspace::from_text(files::fixture("avdek_gamma.cdga"));
  Workspace u = Workspace::from_text(files::fixture("avdek_u.cdga"));
  const Dga& ga = g.algebra("main");
  AvdekReport r = avdek_compare(ga, g.augmentation("trivial"), std::nullopt, std::nullopt, u.algebra("main"),
                                fixtures::window(0, 6));
  CHECK(r.lch_hat.nonzero() == std::map<int, std::size_t>{{2, 1}});
  CHECK(r.predicted.ranks == std::map<int, std::size_t>{{0, 1}, {2, 1}, {4, 1}, {6, 1}});
  CHECK(r.match);
  CHECK(parse_document(files::fixture("empty.cdga")).algebras.empty());
  Dga ground = Dga::ground();
  AvdekReport empty = avdek_compare(ground, Augmentation::zero(ground), std::nullopt, std::nullopt, ground,
                                    fixtures::window(0, 4));
  CHECK(empty.match);
  AvdekReport missing = avdek_compare(ga, g.augmentation("trivial"), g.augmentation("trivial"), std::nullopt,
                                      u.algebra("main"), fixtures::window(0, 4));
  CHECK(missing.certificate == AvdekReport::CertificateStatus::Missing);
  CHECK_FALSE(missing.certificate_message.empty());
}

TEST_CASE("maps between algebras of one document") {
  Workspace ws = Workspace::from_text(files::fixture("two_algebras.cdga"));
  DgaMap m = ws.map("m");
  CHECK(m.source().size() == 2);
  CHECK(check_chain_map(m).ok());
  CHECK(ws.document().grading == GradingSpec::cyclic(4));
  Workspace odd = Workspace::from_text(files::fixture("odd.cdga"));
  CHECK(odd.map("double").image(0) == Rational(2) * odd.algebra("main").gen("u"));
  CHECK(odd.map("zero").image(0).is_zero());
}

TEST_CASE("canonical emission round-trips the fixture corpus") {
  for (const auto& p : files::listing(files::fixture_dir())) {
    INFO(p.string());
    std::string once = emit(parse_document(files::read(p)));
    std::string twice = emit(parse_document(once));
    CHECK(once == twice);
  }
}

TEST_CASE("error corpus reports codes and lines") {
  for (const auto& p : files::listing(std::filesystem::path(files::fixture_dir()) / "errors")) {
    INFO(p.string());
    std::string text = files::read(p);
    auto expect = files::expectation(text);
    REQUIRE(expect);
    try {
      Workspace ws = Workspace::from_text(text);
      for (const auto& a : ws.document().algebras) (void)ws.algebra(a.name);
      FAIL("no error raised");
    } catch (const Error& e) {
      CHECK(std::string(error_code_name(e.code())) == expect->code);
      CHECK(e.line() == expect->line);
    }
  }
}

TEST_CASE("action restrictions stabilize") {
  Workspace ws = Workspace::from_text(files::fixture("chek_contact.cdga"));
  const Dga& alg = ws.algebra("main");
  std::map<int, std::size_t> last;
  for (int bound = 1; bound <= 4; ++bound) {
    Dga sub = restrict(alg, ActionCutoff{Rational(bound)});
    CHECK(check_dga(sub).ok());
    auto t = linearized_homology(sub, Augmentation::zero(sub));
    if (bound >= 2) {
      if (bound > 2) CHECK(t.ranks == last);
      last = t.ranks;
    }
  }
}
