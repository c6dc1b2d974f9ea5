#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cdga/cdga.hpp"

using json = nlohmann::json;
using namespace cdga;

namespace {

struct Options {
  std::string format = "text";
  std::string file;
  std::string file2;
  std::string algebra;
  int deg_min = 0;
  int deg_max = 6;
  std::size_t word_cap = 4;
  std::string action_cap;
  std::string aug = "trivial";
  std::string map;
  std::size_t stages = 4;
  std::string from;
  std::string to;
  std::string via;
  std::string source_aug = "trivial";
  std::string target_aug = "trivial";
  std::string aug_minus;
  int k = 1;
};

struct Report {
  std::string command;
  std::string digest;
  json truncation = json::object();
  json tables = json::array();
  json certificates = json::array();
  std::string status = "ok";
  json error;
  int exit_code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::optional<Rational> action_cap(const Options& o) {
  if (o.action_cap.empty()) return std::nullopt;
  Rational q;
  if (!parse_rational(o.action_cap, q)) throw Error(ErrorCode::InvalidInput, "bad action cap '" + o.action_cap + "'");
  return q;
}

TruncationSpec window(const Options& o) {
  TruncationSpec t;
  t.deg_min = o.deg_min;
  t.deg_max = o.deg_max;
  t.word_cap = o.word_cap;
  t.action_cap = action_cap(o);
  t.validate();
  return t;
}

json truncation_json(const TruncationSpec& t) {
  return json{{"deg_min", t.deg_min},
              {"deg_max", t.deg_max},
              {"word_cap", t.word_cap},
              {"action_cap", t.action_cap ? json(to_string(*t.action_cap)) : json(nullptr)}};
}

json table_json(const std::map<int, std::size_t>& ranks) {
  json out = json::array();
  for (const auto& [d, r] : ranks) out.push_back(json{{"degree", d}, {"rank", r}});
  return out;
}

json elements_json(const Dga& source, const std::vector<Element>& images) {
  json out = json::object();
  for (std::size_t i = 0; i < source.size(); ++i) out[source.sig().gen(i).name] = images[i].to_string();
  return out;
}

std::string default_algebra(const contact::Document& doc, const std::string& requested) {
  if (!requested.empty()) return requested;
  if (doc.find_algebra("main") || doc.algebras.empty()) return "main";
  return doc.algebras.front().name;
}

/// The augmentation restricted to a sub-dga, matching generators by name.
Augmentation restrict_aug(const Augmentation& eps, const Dga& sub) {
  std::vector<Rational> values(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) values[i] = eps.value(eps.owner().sig().index_of(sub.sig().gen(i).name));
  return Augmentation(sub, std::move(values));
}

Dga maybe_restrict(const Dga& alg, const std::optional<Rational>& cap) {
  if (!cap) return alg;
  return restrict(alg, ActionCutoff{*cap});
}

void run_check(const Options& o, contact::Workspace& ws, Report& r) {
  bool valid = true;
  for (const auto& spec : ws.document().algebras) {
    const Dga& alg = ws.algebra(spec.name);
    auto rep = check_dga(alg);
    json v = json::array();
    for (const auto& x : rep.violations)
      v.push_back(json{{"code", std::string(error_code_name(x.code))}, {"generator", x.generator}, {"message", x.message}});
    valid = valid && rep.ok();
    r.certificates.push_back(json{{"kind", "algebra"}, {"name", spec.name}, {"generators", alg.size()}, {"valid", rep.ok()}, {"violations", v}});
  }
  for (const auto& a : ws.document().augs) {
    bool ok = check_augmentation(ws.augmentation(a.name));
    valid = valid && ok;
    r.certificates.push_back(json{{"kind", "augmentation"}, {"name", a.name}, {"valid", ok}});
  }
  for (const auto& m : ws.document().maps) {
    DgaMap f = ws.map(m.name);
    auto rep = chain_map_report(f);
    valid = valid && rep.ok();
    json v = json::array();
    for (const auto& x : rep.violations) v.push_back(json{{"code", std::string(error_code_name(x.code))}, {"message", x.message}});
    r.certificates.push_back(json{{"kind", "map"}, {"name", m.name}, {"valid", rep.ok()}, {"violations", v}});
  }
  (void)o;
  if (!valid) {
    r.status = "invalid";
    r.exit_code = 1;
  } else {
    r.status = "valid";
  }
}

void run_homology(const Options& o, contact::Workspace& ws, Report& r) {
  TruncationSpec t = window(o);
  Dga alg = maybe_restrict(ws.algebra(default_algebra(ws.document(), o.algebra)), t.action_cap);
  HomologyTable table = contact::presented_homology(alg, t);
  TruncationSpec used = t;
  used.word_cap = table.truncation.word_cap;
  r.truncation = truncation_json(used);
  r.tables = table_json(table.ranks);
  if (!table.exact) {
    r.status = "truncation-insufficient";
    r.exit_code = 2;
  }
}

void run_linhomology(const Options& o, contact::Workspace& ws, Report& r) {
  std::string name = ws.augmentation_algebra(o.aug, default_algebra(ws.document(), o.algebra));
  const Dga& alg = ws.algebra(name);
  HomologyTable table = contact::lch(alg, ws.augmentation(o.aug, name));
  r.truncation = truncation_json(table.truncation);
  r.tables = table_json(table.ranks);
}

void run_invert(const Options& o, contact::Workspace& ws, Report& r) {
  if (o.map.empty()) throw Error(ErrorCode::InvalidInput, "--map is required");
  TruncationSpec t = window(o);
  r.truncation = truncation_json(t);
  DgaMap f = ws.map(o.map);
  const contact::MapSpec* spec = ws.document().find_map(o.map);
  Augmentation eps = ws.augmentation(o.source_aug, spec->source);
  Augmentation mu = ws.augmentation(o.target_aug, spec->target);
  HomotopyInverse inv = homotopy_inverse(f, eps, mu, t);
  json h = json::object();
  for (std::size_t i = 0; i < f.target().size(); ++i) h[f.target().sig().gen(i).name] = inv.h.images[i].to_string();
  r.certificates.push_back(json{{"kind", "homotopy-inverse"},
                                {"map", o.map},
                                {"psi", elements_json(f.target(), inv.psi.images())},
                                {"homotopy", h},
                                {"closed_form_hits", inv.closed_form_hits},
                                {"verified", true}});
  r.status = "verified";
}

void run_factorize(const Options& o, contact::Workspace& ws, Report& r) {
  TruncationSpec t = window(o);
  r.truncation = truncation_json(t);
  FactorizationResult res = o.map.empty() ? cofibrant_replace(ws.algebra(default_algebra(ws.document(), o.algebra)), t, o.stages)
                                          : sullivan_factorize(ws.map(o.map), t, o.stages);
  json stages = json::array();
  for (const auto& s : res.stage_log) {
    stages.push_back(json{{"stage", s.stage}, {"added", s.added}, {"x", s.x_count}, {"y", s.y_count}, {"w", s.w_count}, {"notes", s.notes}});
  }
  json gens = json::array();
  const Dga& sv = res.intermediate;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    gens.push_back(json{{"name", sv.sig().gen(i).name},
                        {"degree", sv.sig().degree(i)},
                        {"d", sv.diff(i).to_string()},
                        {"image", res.projection.image(i).to_string()}});
  }
  r.tables = table_json(res.final_check.source.ranks);
  r.certificates.push_back(json{{"kind", "factorization"},
                                {"stages", stages},
                                {"generators", gens},
                                {"added", res.added_generators()},
                                {"qiso", res.final_check.qiso},
                                {"exact", res.final_check.exact}});
  r.status = res.final_check.qiso ? "verified" : "unverified";
  if (!res.final_check.qiso) r.exit_code = 1;
}

void run_augcheck(const Options& o, contact::Workspace& ws, Report& r) {
  if (o.from.empty() || o.to.empty() || o.via.empty()) throw Error(ErrorCode::InvalidInput, "--from, --to and --via are required");
  std::string name = ws.augmentation_algebra(o.from, default_algebra(ws.document(), o.algebra));
  const Dga& alg = ws.algebra(name);
  Augmentation eps = ws.augmentation(o.from, name);
  Augmentation mu = ws.augmentation(o.to, name);
  DgaMap f = ws.map(o.via);
  json cert{{"kind", "augmentation-equivalence"}, {"from", o.from}, {"to", o.to}, {"via", o.via}};
  try {
    Certificate c = certify_aug_equivalence(alg, eps, mu, f);
    r.tables = table_json(c.check.source.ranks);
    cert["verified"] = true;
    r.status = "verified";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TruncationInsufficient) throw;
    cert["verified"] = false;
    cert["code"] = std::string(error_code_name(e.code()));
    cert["message"] = e.detail();
    r.status = "rejected";
    r.exit_code = 1;
  }
  r.certificates.push_back(cert);
}

void run_contact_lch(const Options& o, contact::Workspace& ws, Report& r) {
  auto cap = action_cap(o);
  std::string name = ws.augmentation_algebra(o.aug, default_algebra(ws.document(), o.algebra));
  const Dga& full = ws.algebra(name);
  Dga alg = maybe_restrict(full, cap);
  Augmentation eps = restrict_aug(ws.augmentation(o.aug, name), alg);
  HomologyTable table = contact::lch(alg, eps);
  TruncationSpec t = table.truncation;
  t.action_cap = cap;
  r.truncation = truncation_json(t);
  r.tables = table_json(table.ranks);
}

void run_contact_sadc(const Options& o, contact::Workspace& ws, Report& r) {
  auto cap = action_cap(o);
  const Dga& alg = ws.algebra(default_algebra(ws.document(), o.algebra));
  contact::SadcReport rep = contact::sadc_check(alg, o.k, cap);
  TruncationSpec t;
  t.action_cap = cap;
  r.truncation = truncation_json(t);
  r.certificates.push_back(json{{"kind", "sadc"}, {"k", rep.k}, {"pass", rep.pass}, {"adnh", rep.adnh}, {"witnesses", rep.witnesses}});
  r.status = rep.pass ? "passed" : "failed";
  if (!rep.pass) r.exit_code = 1;
}

void run_contact_avdek(const Options& o, contact::Workspace& gamma_ws, contact::Workspace& u_ws, Report& r) {
  TruncationSpec t = window(o);
  std::string gname = gamma_ws.augmentation_algebra(o.aug, default_algebra(gamma_ws.document(), o.algebra));
  Dga gamma = maybe_restrict(gamma_ws.algebra(gname), t.action_cap);
  Dga u = maybe_restrict(u_ws.algebra(default_algebra(u_ws.document(), "")), t.action_cap);
  Augmentation plus = restrict_aug(gamma_ws.augmentation(o.aug, gname), gamma);
  std::optional<Augmentation> minus;
  if (!o.aug_minus.empty()) minus = restrict_aug(gamma_ws.augmentation(o.aug_minus, gname), gamma);
  std::optional<DgaMap> via;
  if (!o.via.empty()) {
    if (t.action_cap) throw Error(ErrorCode::InvalidInput, "--via cannot be combined with --action-cap");
    via = gamma_ws.map(o.via);
  }
  contact::AvdekReport rep = contact::avdek_compare(gamma, plus, minus, via, u, t);
  TruncationSpec used = t;
  used.deg_min = 0;
  used.word_cap = rep.observed.truncation.word_cap;
  r.truncation = truncation_json(used);
  r.tables = table_json(rep.observed.ranks);
  r.certificates.push_back(json{{"kind", "avdek"},
                                {"lch_hat", table_json(rep.lch_hat.ranks)},
                                {"predicted", table_json(rep.predicted.ranks)},
                                {"observed", table_json(rep.observed.ranks)},
                                {"mismatched_degrees", rep.mismatched_degrees},
                                {"match", rep.match},
                                {"certificate", contact::to_string(rep.certificate)},
                                {"message", rep.certificate_message}});
  r.status = rep.match ? "match" : "mismatch";
  if (!rep.match || rep.certificate == contact::AvdekReport::CertificateStatus::Rejected) r.exit_code = 1;
  if (!rep.observed.exact) {
    r.status = "truncation-insufficient";
    r.exit_code = 2;
  }
}

void print(const Options& o, const Report& r) {
  json j{{"command", r.command},
         {"input_digest", r.digest},
         {"truncation", r.truncation},
         {"tables", r.tables},
         {"certificates", r.certificates},
         {"status", r.status}};
  if (!r.error.is_null()) j["error"] = r.error;
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << r.command << ": " << r.status << "\n";
  if (!r.digest.empty()) std::cout << "input sha256 " << r.digest << "\n";
  if (!r.error.is_null()) {
    if (r.error.contains("line")) std::cout << o.file << ":" << r.error["line"] << ":" << r.error["column"] << ": ";
    std::cout << "error[" << r.error["code"].get<std::string>() << "] " << r.error["message"].get<std::string>() << "\n";
  }
  if (!r.truncation.empty()) {
    std::cout << "window [" << r.truncation["deg_min"] << ", " << r.truncation["deg_max"] << "], word cap "
              << r.truncation["word_cap"];
    if (!r.truncation["action_cap"].is_null()) std::cout << ", action cap " << r.truncation["action_cap"].get<std::string>();
    std::cout << "\n";
  }
  for (const auto& row : r.tables) std::cout << "  H" << row["degree"] << " = " << row["rank"] << "\n";
  for (const auto& c : r.certificates) std::cout << c.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with pointed Sullivan algebras and contact orbit data"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto window_options = [&](CLI::App* sub) {
    sub->add_option("--deg-min", o.deg_min, "Lowest degree of the window");
    sub->add_option("--deg-max", o.deg_max, "Highest degree of the window");
    sub->add_option("--word-cap", o.word_cap, "Initial word-length cap")->check(CLI::PositiveNumber);
  };
  auto common = [&](CLI::App* sub, bool two_files = false) {
    sub->fallthrough();
    sub->add_option("FILE", o.file, "Input file")->required();
    if (two_files) sub->add_option("FILE2", o.file2, "Second input file")->required();
    sub->add_option("--algebra", o.algebra, "Algebra name");
  };

  auto* check = app.add_subcommand("check", "Validate every algebra, augmentation and map");
  common(check);
  auto* homology = app.add_subcommand("homology", "Truncated homology on a degree window");
  common(homology);
  window_options(homology);
  homology->add_option("--action-cap", o.action_cap, "Keep generators with action at most L");
  auto* lin = app.add_subcommand("linhomology", "Linearized homology at an augmentation");
  common(lin);
  lin->add_option("--aug", o.aug, "Augmentation name");
  auto* invert = app.add_subcommand("invert", "Homotopy inverse of a quasi-isomorphism");
  common(invert);
  window_options(invert);
  invert->add_option("--map", o.map, "Map name")->required();
  invert->add_option("--source-aug", o.source_aug, "Augmentation of the source");
  invert->add_option("--target-aug", o.target_aug, "Augmentation of the target");
  auto* factorize = app.add_subcommand("factorize", "Truncated Sullivan factorization");
  common(factorize);
  window_options(factorize);
  factorize->add_option("--stages", o.stages, "Stage budget");
  factorize->add_option("--map", o.map, "Factor this map instead of the unit");
  auto* augcheck = app.add_subcommand("augcheck", "Certify an equivalence of augmentations");
  common(augcheck);
  augcheck->add_option("--from", o.from, "Source augmentation")->required();
  augcheck->add_option("--to", o.to, "Target augmentation")->required();
  augcheck->add_option("--via", o.via, "Candidate self-map")->required();

  auto* contact_cmd = app.add_subcommand("contact", "Contact front end");
  contact_cmd->fallthrough();
  contact_cmd->require_subcommand(1);
  auto* clch = contact_cmd->add_subcommand("lch", "Linearized contact homology");
  common(clch);
  clch->add_option("--aug", o.aug, "Augmentation name");
  clch->add_option("--action-cap", o.action_cap, "Keep orbits with action at most L");
  auto* csadc = contact_cmd->add_subcommand("sadc", "Positivity and class-zero checks");
  common(csadc);
  csadc->add_option("--k", o.k, "Degree bound");
  csadc->add_option("--action-cap", o.action_cap, "Ignore orbits with action above L");
  auto* cavdek = contact_cmd->add_subcommand("avdek", "Compare homology of U with the symmetric algebra on LCH");
  common(cavdek, true);
  window_options(cavdek);
  cavdek->add_option("--aug", o.aug, "Augmentation of the first file");
  cavdek->add_option("--aug-minus", o.aug_minus, "Second augmentation of the first file");
  cavdek->add_option("--via", o.via, "Candidate equivalence of the two augmentations");
  cavdek->add_option("--action-cap", o.action_cap, "Keep orbits with action at most L");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Report r;
  try {
    std::string text = read_file(o.file);
    std::string text2 = o.file2.empty() ? std::string() : read_file(o.file2);
    r.digest = sha256(text + text2);
    contact::Workspace ws = contact::Workspace::from_text(text);
    if (*check) {
      r.command = "check";
      run_check(o, ws, r);
    } else if (*homology) {
      r.command = "homology";
      run_homology(o, ws, r);
    } else if (*lin) {
      r.command = "linhomology";
      run_linhomology(o, ws, r);
    } else if (*invert) {
      r.command = "invert";
      run_invert(o, ws, r);
    } else if (*factorize) {
      r.command = "factorize";
      run_factorize(o, ws, r);
    } else if (*augcheck) {
      r.command = "augcheck";
      run_augcheck(o, ws, r);
    } else if (*clch) {
      r.command = "contact lch";
      run_contact_lch(o, ws, r);
    } else if (*csadc) {
      r.command = "contact sadc";
      run_contact_sadc(o, ws, r);
    } else {
      r.command = "contact avdek";
      contact::Workspace u = contact::Workspace::from_text(text2);
      run_contact_avdek(o, ws, u, r);
    }
  } catch (const Error& e) {
    bool truncation = e.code() == ErrorCode::TruncationInsufficient || e.code() == ErrorCode::StageBudgetExhausted;
    r.status = truncation ? "truncation-insufficient" : "error";
    r.exit_code = truncation ? 2 : 1;
    r.error = json{{"code", std::string(error_code_name(e.code()))}, {"message", e.detail()}};
    if (e.line() != 0) {
      r.error["line"] = e.line();
      r.error["column"] = e.column();
    }
  }
  if (r.command.empty()) {
    for (auto* sub : {check, homology, lin, invert, factorize, augcheck})
      if (*sub) r.command = sub->get_name();
    if (*clch) r.command = "contact lch";
    if (*csadc) r.command = "contact sadc";
    if (*cavdek) r.command = "contact avdek";
  }
  print(o, r);
  return r.exit_code;
}
