#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "popbranch/errors.hpp"
#include "popbranch/factor.hpp"
#include "popbranch/generators.hpp"
#include "popbranch/instance.hpp"
#include "popbranch/mixed.hpp"
#include "popbranch/oracle.hpp"
#include "popbranch/polytope.hpp"
#include "popbranch/popularity.hpp"
#include "popbranch/solver.hpp"

using json = nlohmann::json;
using namespace popbranch;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInput = 3, kBudget = 4 };

enum class Level { Error = 0, Info = 1, Debug = 2 };

Level log_level() {
  const char* env = std::getenv("POPBRANCH_LOG");
  if (!env) return Level::Error;
  const std::string s(env);
  if (s == "debug") return Level::Debug;
  if (s == "info") return Level::Info;
  return Level::Error;
}

void log(Level level, const std::string& msg) {
  static const Level threshold = log_level();
  static const char* names[] = {"error", "info", "debug"};
  if (level <= threshold) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Syntax, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts a bare instance or any object carrying one under "instance".
Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::Syntax, e.what());
  }
  if (doc.is_object() && doc.contains("instance")) return parse_instance(doc["instance"].dump());
  return parse_instance(text);
}

// A JSON array of edge ids, or an object with a "branching" array.
Branching load_branching(const Instance& g, const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
    if (doc.is_object()) doc = doc.at("branching");
    return branching_from_ids(g, doc.get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw Error(Errc::Syntax, std::string("branching file: ") + e.what());
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

json ids_of(const Instance& g, const Branching& b) {
  auto ids = edge_ids(g, b);
  std::sort(ids.begin(), ids.end());
  return ids;
}

json family_json(const Instance& g, const DualCertificate& family) {
  std::vector<std::vector<std::string>> sets;
  for (const auto& set : family) {
    std::vector<std::string> names;
    for (int v : set) names.push_back(g.node_id(v));
    std::sort(names.begin(), names.end());
    sets.push_back(std::move(names));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

json solver_json(const RootedInstance& rooted, const SolverResult& res) {
  return {{"branching", ids_of(rooted.base(), project(rooted, res.arborescence))},
          {"certificate", family_json(rooted.graph(), res.certificate)},
          {"margin", res.margin}};
}

struct Output {
  std::string path;
  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Syntax, "cannot write " + path);
    out << text;
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

struct Common {
  std::string input;
  std::string branching;
  Output out;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultOracleBudget;
  int jobs = 1;
};

int run(int argc, char** argv) {
  CLI::App app{"Popular branchings: solve, verify, measure, generate and reduce."};
  app.require_subcommand(1);
  Common c;

  auto with_input = [&](CLI::App* sub) { sub->add_option("-i,--input", c.input, "instance JSON")->required(); };
  auto with_output = [&](CLI::App* sub) { sub->add_option("-o,--output", c.out.path, "write result here"); };
  auto with_branching = [&](CLI::App* sub) {
    sub->add_option("-b,--branching", c.branching, "JSON edge-id array or result object")->required();
  };

  auto* solve = app.add_subcommand("solve", "find a popular branching with its dual certificate");
  with_input(solve);
  with_output(solve);

  auto* verify = app.add_subcommand("verify", "decide whether a branching is popular");
  with_input(verify);
  with_branching(verify);
  with_output(verify);

  auto* margin = app.add_subcommand("margin", "unpopularity margin of a branching");
  with_input(margin);
  with_branching(margin);
  with_output(margin);

  auto* minmargin = app.add_subcommand("minmargin", "minimum-margin branching (weak rankings)");
  with_input(minmargin);
  with_output(minmargin);

  auto* factor = app.add_subcommand("factor", "branching with unpopularity factor at most floor(log n)");
  with_input(factor);
  with_output(factor);

  auto* factor_of = app.add_subcommand("factor-of", "exact unpopularity factor of a branching");
  with_input(factor_of);
  with_branching(factor_of);
  with_output(factor_of);

  int max_nodes = MixedOptions{}.max_nodes;
  auto* mixed = app.add_subcommand("mixed", "popular mixed branching");
  with_input(mixed);
  with_output(mixed);
  mixed->add_option("--max-nodes", max_nodes, "size limit")->check(CLI::PositiveNumber);

  std::string gen_kind, model = "strict";
  int n = 4, m = 6, k = 2, max_ties = 2, vars = 4, clauses = 4, extra = 0;
  double density = 0.5;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("kind", gen_kind, "random | tight-factor | complete-top | sat | hampath-graph")
      ->required()
      ->check(CLI::IsMember({"random", "tight-factor", "complete-top", "sat", "hampath-graph"}));
  gen->add_option("--n", n, "node count");
  gen->add_option("--m", m, "edge count");
  gen->add_option("--k", k, "tight family index");
  gen->add_option("--model", model, "strict | weak | partial")->check(CLI::IsMember({"strict", "weak", "partial"}));
  gen->add_option("--max-ties", max_ties, "weak model tie class size");
  gen->add_option("--density", density, "partial model comparability");
  gen->add_option("--vars", vars, "sat: variables");
  gen->add_option("--clauses", clauses, "sat: clauses");
  gen->add_option("--extra", extra, "hampath-graph: extra random edges");
  gen->add_option("--seed", c.seed, "random seed");
  with_output(gen);

  std::string reduce_kind, assignment, path, matching;
  auto* reduce = app.add_subcommand("reduce", "build a hardness gadget");
  reduce->add_option("kind", reduce_kind, "3sat | hampath | 3dm")
      ->required()
      ->check(CLI::IsMember({"3sat", "hampath", "3dm"}));
  reduce->add_option("-i,--input", c.input, "DIMACS CNF, digraph JSON, or 3DM JSON")->required();
  reduce->add_option("--assignment", assignment, "3sat: comma-separated true/false literals, e.g. 1,-2");
  reduce->add_option("--path", path, "hampath: comma-separated node ids from the root");
  reduce->add_option("--matching", matching, "3dm: comma-separated triple indices (0-based)");
  with_output(reduce);

  std::string mode = "popular";
  auto* oracle = app.add_subcommand("oracle", "exhaustive ground truth for small instances");
  with_input(oracle);
  with_output(oracle);
  oracle->add_option("--mode", mode, "popular | margin | factor")->check(CLI::IsMember({"popular", "margin", "factor"}));
  oracle->add_option("--budget", c.budget, "maximum parent maps");
  oracle->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string form = "extended";
  int cutoff = kDefaultFaceCutoff;
  auto* emit = app.add_subcommand("emit-lp", "write the popular-arborescence LP");
  with_input(emit);
  with_output(emit);
  emit->add_option("--form", form, "face | extended")->check(CLI::IsMember({"face", "extended"}));
  emit->add_option("--cutoff", cutoff, "face form node limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (solve->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    const auto res = popular_arborescence(rooted);
    if (!res) {
      log(Level::Info, "no popular branching exists");
      c.out.emit(json{{"popular", false}});
      return kNegative;
    }
    json j = solver_json(rooted, *res);
    j["popular"] = true;
    c.out.emit(j);
    return kOk;
  }
  if (verify->parsed() || margin->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    const auto a = lift(rooted, load_branching(rooted.base(), c.branching));
    const auto mr = unpopularity_margin(rooted, a);
    json j{{"margin", mr.margin}};
    if (mr.margin > 0) j["witness"] = ids_of(rooted.base(), project(rooted, mr.witness));
    if (margin->parsed()) {
      c.out.emit(j);
      return kOk;
    }
    const auto check = is_popular(rooted, a);
    j["popular"] = check.popular;
    if (check.certificate) j["certificate"] = family_json(rooted.graph(), *check.certificate);
    c.out.emit(j);
    return check.popular ? kOk : kNegative;
  }
  if (minmargin->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    c.out.emit(solver_json(rooted, min_margin_arborescence(rooted)));
    return kOk;
  }
  if (factor->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    const auto res = low_factor_arborescence(rooted);
    log(Level::Info, "iterations: " + std::to_string(res.iterations));
    c.out.emit(json{{"branching", ids_of(rooted.base(), project(rooted, res.arborescence))},
                    {"factor_bound", res.t_bound},
                    {"iterations", res.iterations}});
    return kOk;
  }
  if (factor_of->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    const auto a = lift(rooted, load_branching(rooted.base(), c.branching));
    c.out.emit(json{{"factor", unpopularity_factor(rooted, a).to_string()}});
    return kOk;
  }
  if (mixed->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    MixedOptions opts;
    opts.max_nodes = max_nodes;
    const auto res = popular_mixed_branching(rooted, opts);
    json arr = json::array();
    for (const auto& comp : res.components)
      arr.push_back({{"branching", ids_of(rooted.base(), project(rooted, comp.arborescence))},
                     {"weight", to_string(comp.weight)}});
    c.out.emit(arr);
    return kOk;
  }
  if (gen->parsed()) {
    if (gen_kind == "sat") {
      const auto [cnf, planted] = random_satisfiable_cnf(vars, clauses, c.seed);
      std::string text = "c planted:";
      for (int i = 0; i < cnf.num_vars; ++i) text += " " + std::to_string(planted[i] ? i + 1 : -(i + 1));
      c.out.emit(text + "\n" + to_dimacs(cnf));
      return kOk;
    }
    if (gen_kind == "hampath-graph") {
      const auto [g, p] = random_hampath_graph(n, extra, c.seed);
      c.out.emit(json{{"instance", json::parse(serialize_instance(g))}, {"path", p}});
      return kOk;
    }
    Instance g;
    if (gen_kind == "random") {
      const PrefModel pm = model == "weak"      ? PrefModel::weak(max_ties)
                           : model == "partial" ? PrefModel::partial(density)
                                                : PrefModel::strict();
      g = random_instance(n, m, pm, c.seed);
    } else if (gen_kind == "tight-factor") {
      g = tight_factor_instance(k);
    } else {
      g = complete_top_instance(n);
    }
    c.out.emit(serialize_instance(g));
    return kOk;
  }
  if (reduce->parsed()) {
    json j;
    if (reduce_kind == "3sat") {
      const auto red = reduce_3sat(parse_dimacs(read_file(c.input)));
      j["instance"] = json::parse(serialize_instance(red.instance));
      if (!assignment.empty()) {
        std::vector<bool> values(red.formula.num_vars, false);
        for (const auto& lit : split(assignment)) {
          int v = 0;
          try {
            v = std::stoi(lit);
          } catch (const std::exception&) {
            throw Error(Errc::BadInput, "bad literal " + lit);
          }
          if (v == 0 || std::abs(v) > red.formula.num_vars) throw Error(Errc::BadInput, "literal out of range: " + lit);
          values[std::abs(v) - 1] = v > 0;
        }
        j["branching"] = ids_of(red.instance, assignment_to_branching(red, values));
      }
    } else if (reduce_kind == "hampath") {
      const auto red = reduce_hampath(load_instance(c.input));
      j["instance"] = json::parse(serialize_instance(red.instance));
      if (!path.empty()) j["branching"] = ids_of(red.instance, hampath_to_branching(red, split(path)));
    } else {
      const auto red = reduce_3dm(parse_3dm(read_file(c.input)));
      j["instance"] = json::parse(serialize_instance(red.rooted.graph()));
      j["root"] = std::string(kRootId);
      j["proof_valid"] = red.proof_valid;
      if (!matching.empty()) {
        std::vector<int> idx;
        for (const auto& s : split(matching)) {
          try {
            idx.push_back(std::stoi(s));
          } catch (const std::exception&) {
            throw Error(Errc::BadInput, "bad triple index " + s);
          }
        }
        const auto [a, cert] = matching_to_certificate(red, idx);
        const auto check = validate_certificate(red.rooted, a, cert);
        j["arborescence"] = ids_of(red.rooted.graph(), a);
        j["certificate"] = family_json(red.rooted.graph(), cert);
        j["certificate_valid"] = check.ok;
        j["margin_bound"] = check.bound;
      }
    }
    c.out.emit(j);
    return kOk;
  }
  if (oracle->parsed()) {
    const auto g = load_instance(c.input);
    const OracleOptions opts{c.budget, c.jobs};
    if (mode == "popular") {
      json arr = json::array();
      for (const auto& b : brute_popular(g, opts)) arr.push_back(ids_of(g, b));
      c.out.emit(json{{"count", arr.size()}, {"popular", arr}});
    } else if (mode == "margin") {
      const auto res = brute_min_margin(g, opts);
      c.out.emit(json{{"margin", res.margin}, {"branching", ids_of(g, res.argmin)}});
    } else {
      const auto res = brute_min_factor(g, opts);
      c.out.emit(json{{"factor", res.factor.to_string()}, {"branching", ids_of(g, res.argmin)}});
    }
    return kOk;
  }
  if (emit->parsed()) {
    const auto rooted = augment_root(load_instance(c.input));
    c.out.emit((form == "face" ? emit_face_lp(rooted, cutoff) : emit_extended_lp(rooted)).to_text());
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    log(Level::Error, e.what());
    switch (e.code()) {
      case Errc::BudgetExceeded:
      case Errc::TooLarge:
      case Errc::SupportTooLarge:
        return kBudget;
      default:
        return kInput;
    }
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return kInput;
  }
}
