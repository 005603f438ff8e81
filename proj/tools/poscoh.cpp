#include "poscoh/builders.hpp"
#include "poscoh/cellular.hpp"
#include "poscoh/errors.hpp"
#include "poscoh/io.hpp"
#include "poscoh/singular.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace poscoh;
using io::Json;

namespace {

bool quiet = false;

void note(const std::string& message) {
  if (!quiet) std::cerr << "poscoh: " << message << "\n";
}

int to_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError(std::string(what) + ": '" + s + "' is not an integer");
  return v;
}

struct BuildArgs {
  std::string family;
  std::vector<std::string> params;
  std::string out;
  std::string presheaf_out;
  bool remove_top = false;
  bool adjoin_minimum = false;
  bool both_apexes = false;
};

int run_build(const BuildArgs& a) {
  auto want = [&](std::size_t n) {
    if (a.params.size() != n)
      throw PreconditionError("build " + a.family + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  };
  Poset p;
  std::optional<Presheaf> f;
  if (a.family == "boolean") {
    want(1);
    p = boolean_lattice(to_int(a.params[0], "N"));
  } else if (a.family == "partition") {
    want(1);
    p = partition_lattice(to_int(a.params[0], "N"));
  } else if (a.family == "bruhat") {
    want(1);
    p = BruhatOrder(to_int(a.params[0], "N")).poset();
  } else if (a.family == "tree") {
    want(2);
    p = tree_poset(to_int(a.params[0], "D"), to_int(a.params[1], "B"));
  } else if (a.family == "circle") {
    want(0);
    p = circle_poset();
  } else if (a.family == "square") {
    want(0);
    p = square_circle_poset();
  } else if (a.family == "rp2") {
    want(0);
    p = rp2_poset();
  } else if (a.family == "suspension") {
    want(1);
    p = suspension_simplex_poset(to_int(a.params[0], "N"));
  } else if (a.family == "cw") {
    want(1);
    p = face_poset(io::facets_from_json(io::read_json_file(a.params[0])), a.adjoin_minimum);
  } else if (a.family == "khovanov") {
    want(1);
    auto [px, fx] = khovanov(parse_pd(io::read_text_file(a.params[0])), KhovanovOptions{a.both_apexes});
    p = std::move(px);
    f = std::move(fx);
  } else {
    throw PreconditionError("unknown family '" + a.family + "'");
  }
  if (a.remove_top) {
    if (f) throw PreconditionError("--remove-top cannot be combined with a built presheaf");
    p = poscoh::remove_top(p);
  }
  io::write_json_file(a.out, io::poset_to_json(p));
  note("wrote " + std::to_string(p.size()) + " elements to " + a.out);
  if (!a.presheaf_out.empty()) {
    io::write_json_file(a.presheaf_out, io::presheaf_to_json(f ? *f : constant(p, 1)));
    note("wrote presheaf to " + a.presheaf_out);
  }
  std::cout << io::dump(Json{{"elements", p.size()}, {"covers", p.cover_count()}, {"graded", p.is_graded()}});
  return 0;
}

struct Inputs {
  std::string poset;
  std::string presheaf;
};

std::pair<Poset, Presheaf> load(const Inputs& in) {
  Poset p = io::poset_from_json(io::read_json_file(in.poset));
  Presheaf f = in.presheaf.empty() ? constant(p, 1) : io::presheaf_from_json(io::read_json_file(in.presheaf), p);
  return {std::move(p), std::move(f)};
}

int run_check(const std::string& path) {
  Poset p = io::poset_from_json(io::read_json_file(path));
  Json j{{"elements", p.size()}, {"graded", p.is_graded()}, {"diamond", has_diamond_property(p)}};
  if (p.is_graded()) {
    j.update(io::cellularity_to_json(is_cellular(p), p));
  } else {
    j["cellular"] = nullptr;
    j["witness"] = nullptr;
  }
  std::cout << io::dump(j);
  return 0;
}

int run_cohomology(const Inputs& in, const std::string& method) {
  auto [p, f] = load(in);
  const auto start = std::chrono::steady_clock::now();
  CohomologyReport r = method == "cellular" ? hc(f) : hs(f);
  note(method + " cohomology in " +
       std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
  Json j{{"method", method}};
  j.update(io::cohomology_to_json(r));
  std::cout << io::dump(j);
  return 0;
}

int run_compare(const Inputs& in) {
  auto [p, f] = load(in);
  const auto start = std::chrono::steady_clock::now();
  ComparisonReport r = compare(f);
  note("compared in " + std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) +
       " s");
  std::cout << io::dump(io::comparison_to_json(r, p));
  return 0;
}

int run_signs(const std::string& path) {
  Poset p = io::poset_from_json(io::read_json_file(path));
  std::cout << io::dump(io::signs_to_json(cell_signs(p), p));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of presheaves on finite posets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--quiet", quiet, "Suppress progress notes on stderr");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build an example poset (and presheaf)");
  b->add_option("family", build.family,
                "boolean N | partition N | bruhat N | tree D B | circle | square | rp2 | suspension N | cw FILE | khovanov FILE")
      ->required();
  b->add_option("args", build.params, "Family parameters");
  b->add_option("--out", build.out, "Poset JSON output")->required();
  b->add_option("--presheaf-out", build.presheaf_out, "Presheaf JSON output (the constant presheaf unless khovanov)");
  b->add_flag("--remove-top", build.remove_top, "Remove the unique maximal element");
  b->add_flag("--adjoin-minimum", build.adjoin_minimum, "cw: adjoin a bottom element");
  b->add_flag("--both-apexes", build.both_apexes, "khovanov: give both apexes the value V^c(0)");

  std::string check_path;
  auto* c = app.add_subcommand("check", "Report grading, diamond property and cellularity");
  c->add_option("poset", check_path, "Poset JSON")->required();

  Inputs coh;
  std::string method = "singular";
  auto* h = app.add_subcommand("cohomology", "Per-degree cohomology");
  h->add_option("--poset", coh.poset, "Poset JSON")->required();
  h->add_option("--presheaf", coh.presheaf, "Presheaf JSON (default: constant Z)");
  h->add_option("--method", method, "singular or cellular")->check(CLI::IsMember({"singular", "cellular"}));

  Inputs cmp;
  auto* m = app.add_subcommand("compare", "Compare HS and HC degree by degree");
  m->add_option("--poset", cmp.poset, "Poset JSON")->required();
  m->add_option("--presheaf", cmp.presheaf, "Presheaf JSON (default: constant Z)");

  std::string signs_path;
  auto* s = app.add_subcommand("signs", "Incidence signs of a cell poset");
  s->add_option("--poset", signs_path, "Poset JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*b) return run_build(build);
    if (*c) return run_check(check_path);
    if (*h) return run_cohomology(coh, method);
    if (*m) return run_compare(cmp);
    if (*s) return run_signs(signs_path);
  } catch (const InputError& e) {
    std::cerr << "poscoh: error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "poscoh: error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "poscoh: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
