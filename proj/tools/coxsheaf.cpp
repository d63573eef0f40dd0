// coxsheaf: KL basis, Braden-MacPherson sheaves and the acceptance suite
// from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "coxsheaf/acceptance.hpp"
#include "coxsheaf/bmsheaf.hpp"
#include "coxsheaf/error.hpp"
#include "coxsheaf/io.hpp"
#include "coxsheaf/presets.hpp"

using namespace coxsheaf;
using coxeter::CoxeterSystem;
using coxeter::Element;

namespace {

constexpr int kOk = 0, kFailed = 1, kBadInput = 2;

struct Options {
  std::string preset;
  std::string cartan;
  std::string x;
  std::optional<int> max_length;
  std::optional<int> cap;
  std::string json, csv, dot;
  bool strict = false;
  bool oracle = false;
  std::string suite = "default";
  bool bar_fault = false;
  std::string result_file;
};

void add_system_options(CLI::App* cmd, Options& o) {
  auto* p = cmd->add_option("--preset", o.preset, "A1 A2 A3 B2 G2 U2 U3");
  cmd->add_option("--cartan", o.cartan, "JSON file {rank, coxeter, cartan?, labels?}")->excludes(p);
  cmd->add_option("--x", o.x, "word in 1-based generators, e.g. 121 or 2,10,3")->required();
  cmd->add_option("--max-length", o.max_length, "length bound (required for U2, U3)");
}

CoxeterSystem load_system(const Options& o) {
  if (!o.cartan.empty()) return load_system_json(o.cartan);
  if (o.preset.empty()) throw InputError("one of --preset or --cartan is required");
  return make_preset(o.preset).system;
}

Element load_element(const CoxeterSystem& W, const Options& o) {
  if (!o.preset.empty() && preset_is_infinite(o.preset) && !o.max_length)
    throw InputError("preset " + o.preset + " needs --max-length");
  const Element x = W.normal_form(W.parse_word(o.x));
  if (o.max_length && x.length() > *o.max_length)
    throw InputError("x has length " + std::to_string(x.length()) + " > --max-length " +
                     std::to_string(*o.max_length));
  return x;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("cannot write " + path);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string degrees(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + std::to_string(d[i]);
  return s.empty() ? "-" : s;
}

// ------------------------------------------------------------------ kl

int cmd_kl(const Options& o) {
  const auto W = load_system(o);
  const Element x = load_element(W, o);
  hecke::HeckeAlgebra H(W);
  const auto& c = H.kl_basis(x);
  std::cout << std::left << std::setw(14) << "y" << std::setw(4) << "l" << std::setw(24) << "h_{y,x}" << "P_{y,x}\n";
  std::ostringstream csv;
  csv << "x,y,h,P\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& y : W.bruhat_interval(x)) {
    const auto h = c.coeff(y);
    const auto p = H.kl_polynomial(y, x);
    std::cout << std::setw(14) << io::word_string(W, y) << std::setw(4) << y.length() << std::setw(24) << h.str()
              << p.str("q") << '\n';
    csv << io::word_string(W, x) << ',' << io::word_string(W, y) << ",\"" << h.str() << "\",\"" << p.str("q")
        << "\"\n";
    rows.push_back({{"y", io::word_string(W, y)}, {"h", io::laurent_to_json(h)}, {"P", io::laurent_to_json(p)}});
  }
  int status = kOk;
  nlohmann::json doc = {{"system", system_to_json(W)}, {"x", io::word_string(W, x)}, {"kl", io::hecke_to_json(W, c)},
                        {"rows", rows}};
  if (o.oracle) {
    const bool agree = H.kl_oracle(x) == c;
    std::cout << "oracle: " << (agree ? "agrees" : "DISAGREES") << '\n';
    doc["oracle_match"] = agree;
    if (!agree) status = kFailed;
  }
  if (!o.json.empty()) write_file(o.json, doc.dump(2) + "\n");
  if (!o.csv.empty()) write_file(o.csv, csv.str());
  return status;
}

// ------------------------------------------------------------------ bm

int cmd_bm(const Options& o) {
  const auto W = load_system(o);
  const Element x = load_element(W, o);
  auto graph = std::make_shared<const momentgraph::MomentGraph>(momentgraph::build_graph(W, x));
  const auto bm = bmsheaf::bm_construct(graph, bmsheaf::BMOptions{o.cap});
  hecke::HeckeAlgebra H(W);
  io::BMResult r{&bm, bmsheaf::character(bm), H.kl_basis(x), false, nlohmann::json::object()};
  r.match = r.character == r.kl;

  std::cout << "x = " << io::word_string(W, x) << ", " << graph->size() << " vertices, " << graph->edges().size()
            << " edges\n";
  std::cout << std::left << std::setw(14) << "y" << std::setw(4) << "l" << std::setw(18) << "stalk" << std::setw(18)
            << "costalk" << "f_{y,x}\n";
  for (int v : graph->processing_order())
    std::cout << std::setw(14) << graph->name(v) << std::setw(4) << graph->vertex(v).length << std::setw(18)
              << degrees(bm.sheaf.stalk_degrees(v)) << std::setw(18) << degrees(bm.costalks[v])
              << r.character.coeff(graph->vertex(v).rep).str() << '\n';
  std::cout << "character: " << hecke::format(W, r.character) << '\n';

  bool checks_ok = true;
  auto record = [&](const std::string& name, const bmsheaf::CheckResult& c) {
    r.checks[name] = c.ok;
    checks_ok = checks_ok && c.ok;
    for (const auto& f : c.failures) std::cout << "  " << name << ": " << f << '\n';
  };
  bmsheaf::CheckResult dual;
  if (!H.is_self_dual(r.character)) dual.fail("character is not self-dual");
  record("self_dual", dual);
  record("positive_degrees", bmsheaf::check_positive_degrees(bm));
  bmsheaf::CheckResult supported;
  for (int v = 0; v < graph->size(); ++v) supported.merge(bmsheaf::check_supported_sections(bm, v));
  record("supported_sections", supported);
  record("sections", bmsheaf::check_sections(bm));
  bmsheaf::CheckResult theta, additivity, summands;
  for (int s = 0; s < W.rank(); ++s) {
    if (bmsheaf::theta_character(bm, s) != H.mult(r.character, H.kl_basis(W.generator(s))))
      theta.fail("translation character differs for s = " + std::to_string(s + 1));
    additivity.merge(bmsheaf::check_interval_additivity(bm, s));
    summands.merge(bmsheaf::check_no_upper_summand(bm, s));
  }
  record("translation", theta);
  record("interval_additivity", additivity);
  record("no_upper_summand", summands);

  std::cout << "checks: " << (checks_ok ? "all passed" : "FAILED") << '\n';
  std::cout << "match: " << (r.match ? "true" : "false") << '\n';
  if (!o.json.empty()) write_file(o.json, io::result_to_json(r).dump(2) + "\n");
  if (!o.csv.empty()) write_file(o.csv, io::result_to_csv(r));
  if (!o.dot.empty()) write_file(o.dot, momentgraph::to_dot(*graph));
  return o.strict && !(r.match && checks_ok) ? kFailed : kOk;
}

// ------------------------------------------------------------------ graph

int cmd_graph(const Options& o) {
  const auto W = load_system(o);
  const Element x = load_element(W, o);
  const auto g = momentgraph::build_graph(W, x);
  const auto dot = momentgraph::to_dot(g);
  if (o.dot.empty()) std::cout << dot;
  else write_file(o.dot, dot);
  std::cerr << g.size() << " vertices, " << g.edges().size() << " edges\n";
  return kOk;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Options& o) {
  if (o.suite != "default" && o.suite != "extended") throw InputError("--suite must be default or extended");
  hecke::set_bar_fault(o.bar_fault);
  const auto suite = o.suite == "extended" ? acceptance::Suite::Extended : acceptance::Suite::Default;
  bool ok = true;
  for (const auto& r : acceptance::run(suite, &std::cout)) ok = ok && r.ok;
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  return ok ? kOk : kFailed;
}

int cmd_recheck(const Options& o) {
  const auto rc = io::recheck(read_json(o.result_file));
  std::cout << "stored verdict: " << (rc.stored_match ? "match" : "mismatch") << '\n'
            << "recomputed verdict: " << (rc.recomputed_match ? "match" : "mismatch") << '\n'
            << "stored KL basis: " << (rc.stored_kl_agrees ? "agrees" : "differs") << '\n';
  return rc.stored_match == rc.recomputed_match && rc.stored_kl_agrees ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braden-MacPherson sheaves and Kazhdan-Lusztig polynomials"};
  app.require_subcommand(1);
  Options o;

  auto* kl = app.add_subcommand("kl", "table of h_{y,x} and P_{y,x}");
  add_system_options(kl, o);
  kl->add_option("--json", o.json);
  kl->add_option("--csv", o.csv);
  kl->add_flag("--oracle", o.oracle, "cross-check against the bar-involution oracle");

  auto* bm = app.add_subcommand("bm", "construct B(x) and compare its character with C'_x");
  add_system_options(bm, o);
  bm->add_option("--cap", o.cap, "fixed degree cap at every vertex");
  bm->add_option("--json", o.json);
  bm->add_option("--csv", o.csv);
  bm->add_option("--dot", o.dot);
  bm->add_flag("--strict", o.strict, "exit 1 on a mismatch or failed check");

  auto* graph = app.add_subcommand("graph", "DOT rendering of the moment graph of [e, x]");
  add_system_options(graph, o);
  graph->add_option("--dot", o.dot, "output path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", o.suite, "default or extended");
  verify->add_flag("--inject-bar-fault", o.bar_fault)->group("");

  auto* recheck = app.add_subcommand("recheck", "re-verify a JSON result written by bm --json");
  recheck->add_option("file", o.result_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*kl) return cmd_kl(o);
    if (*bm) return cmd_bm(o);
    if (*graph) return cmd_graph(o);
    if (*verify) return cmd_verify(o);
    if (*recheck) return cmd_recheck(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const RealizationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kFailed;
  }
  return kBadInput;
}
