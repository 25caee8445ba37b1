#include "logstrat/cli.hpp"

#include <json.hpp>
#include <sstream>

#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "logstrat/stratify.hpp"

namespace logstrat::cli {

using Json = nlohmann::ordered_json;

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::Stratify: return "stratify";
    case Command::Fiber: return "fiber";
    case Command::CheckFree: return "check-free";
    case Command::Tangent: return "tangent";
    case Command::Verify: return "verify";
  }
  return "?";
}

Json strings(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

Json derivation_strings(const std::vector<Derivation>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(d.to_string());
  return a;
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p.coordinates) a.push_back(c.get_str());
  return a;
}

Json problem_json(const ProblemSpec& spec) {
  Json vars = Json::array();
  for (const auto& v : spec.ring->variables()) vars.push_back(v);
  Json j;
  j["ring"] = {{"variables", vars}, {"order", std::string(to_string(spec.ring->order()))}};
  j["ideal"] = strings(spec.ideal);
  j["derivations"] = {{"source", spec.source == DerivationSource::Tangent ? "tangent" : "explicit"},
                      {"generators", derivation_strings(spec.derivations)}};
  return j;
}

std::string ideal_text(const std::vector<Polynomial>& gens) {
  std::string s = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : "") + gens[k].to_string();
  return gens.empty() ? "(0)" : s + ")";
}

// The module every command works with, plus a note on how it was obtained.
struct ModuleChoice {
  DerivationModule module;
  std::string origin;
  std::size_t added = 0;
};

ModuleChoice choose_module(const ProblemSpec& spec, const Ideal& ideal, const RunOptions& opt) {
  if (spec.source == DerivationSource::Tangent) return {logarithmic_derivations(ideal), "tangent", 0};
  DerivationModule given(spec.ring, spec.derivations);
  if (is_bracket_closed(given)) return {DerivationModule(spec.ring, spec.derivations, true), "explicit", 0};
  if (opt.strict_bracket) throw PreconditionError("the given derivations are not closed under the Lie bracket");
  DerivationModule closed = close_under_bracket(given);
  const std::size_t added = closed.size() > given.size() ? closed.size() - given.size() : 0;
  return {std::move(closed), "explicit, closed under bracket", added};
}

Json module_json(const ModuleChoice& m) {
  Json j;
  j["origin"] = m.origin;
  j["generators"] = derivation_strings(m.module.generators());
  j["bracket_closed"] = true;
  if (m.added) j["bracket_generators_added"] = m.added;
  return j;
}

std::string module_text(const ModuleChoice& m) {
  std::string s = "module (" + m.origin + ", " + std::to_string(m.module.size()) + " generators)\n";
  for (const auto& d : m.module.generators()) s += "  " + d.to_string() + "\n";
  return s;
}

Json certification_json(const StratificationDAG& dag) {
  Json primes = Json::array();
  bool all = true;
  for (const auto& n : dag.nodes) {
    all = all && n.profile.prime.certified();
    primes.push_back({{"id", n.id}, {"status", to_string(n.profile.prime.certification)}});
  }
  return {{"all_certified", all}, {"primes", primes}};
}

Json nodes_json(const StratificationDAG& dag) {
  Json a = Json::array();
  for (const auto& n : dag.nodes) {
    Json j;
    j["id"] = n.id;
    j["prime_generators"] = strings(n.prime().groebner_basis());
    j["dim"] = n.profile.dim;
    j["rank"] = n.profile.generic_rank;
    j["kind"] = to_string(n.kind);
    j["fiber_dim"] = n.fiber_dim;
    j["holonomic"] = n.holonomic;
    j["root"] = n.root;
    j["children"] = n.children;
    a.push_back(std::move(j));
  }
  return a;
}

std::string nodes_text(const StratificationDAG& dag) {
  std::ostringstream s;
  s << dag.nodes.size() << " nodes, roots";
  for (std::size_t r : dag.roots) s << " #" << r;
  s << "\n";
  for (const auto& n : dag.nodes) {
    s << "  #" << n.id << " " << n.prime().to_string() << "  dim " << n.profile.dim << " rank "
      << n.profile.generic_rank << "  " << to_string(n.kind);
    if (n.kind == NodeKind::Family) s << " (fiber dim " << n.fiber_dim << ")";
    s << ", " << (n.holonomic ? "holonomic" : "non-holonomic");
    if (!n.children.empty()) {
      s << ", children";
      for (std::size_t c : n.children) s << " #" << c;
    }
    s << "\n";
  }
  return s.str();
}

struct Report {
  Json json;
  std::string text;
  int exit_code = kOk;
};

Report do_stratify(const Ideal& ideal, const ModuleChoice& m) {
  const StratificationDAG dag = stratify(ideal, m.module);
  Report r;
  r.json["module"] = module_json(m);
  r.json["nodes"] = nodes_json(dag);
  r.json["roots"] = dag.roots;
  r.json["certification"] = certification_json(dag);
  r.text = module_text(m) + nodes_text(dag);
  return r;
}

Report do_fiber(const Ideal& ideal, const ModuleChoice& m, const RunOptions& opt) {
  if (!opt.point) throw PreconditionError("fiber needs --point");
  const Point p = parse_point(*opt.point, ideal.ring()->arity());
  const StratificationDAG dag = stratify(ideal, m.module);
  const PointQuery q = defining_prime_of_point(p, dag, opt.first_integral_degree);
  const StratNode& node = dag.nodes[q.node];
  Report r;
  r.json["point"] = point_json(p);
  r.json["prime_generators"] = strings(q.prime.groebner_basis());
  r.json["kind"] = "defining";
  r.json["holonomic"] = q.holonomic;
  r.json["stratum_node"] = q.node;
  r.json["stratum_kind"] = to_string(node.kind);
  r.json["certification"] = certification_json(dag);
  r.text = q.prime.to_string() + ", defining, " + (q.holonomic ? "holonomic" : "non-holonomic") + "\n";
  if (node.kind == NodeKind::Family) r.text += "fiber of the family over " + node.prime().to_string() + "\n";
  return r;
}

Report do_check_free(const ProblemSpec& spec, const ModuleChoice& m) {
  if (spec.ideal.size() != 1) throw PreconditionError("check-free needs a principal ideal with one generator");
  const Polynomial& f = spec.ideal.front();
  Report r;
  const auto& gens = m.module.generators();
  if (spec.source == DerivationSource::Tangent && gens.size() != spec.ring->arity()) {
    r.json["verdict"] = "inconclusive";
    r.json["reason"] = "the tangent module needs " + std::to_string(gens.size()) + " generators, not " +
                       std::to_string(spec.ring->arity());
    r.json["generators"] = derivation_strings(gens);
    r.text = "inconclusive, " + r.json["reason"].get<std::string>() + "\n";
    r.exit_code = kUnresolved;
    return r;
  }
  const SaitoResult s = saito_free_check(gens, f);
  const bool free = s.verdict == SaitoVerdict::FreeWithBasis;
  r.json["verdict"] = free ? "free_with_basis" : "inconclusive";
  r.json["determinant"] = s.determinant.to_string();
  r.json["f"] = f.to_string();
  if (free) r.json["constant"] = s.constant.get_str();
  r.json["generators"] = derivation_strings(gens);
  if (free) {
    const std::string c = s.constant == 1 ? "" : s.constant.get_str() + "*";
    r.text = "free_with_basis, det = " + c + "f\n";
  } else {
    r.text = "inconclusive, det = " + s.determinant.to_string() + "\n";
    r.exit_code = kUnresolved;
  }
  return r;
}

Report do_tangent(const ModuleChoice& m) {
  Report r;
  r.json["module"] = module_json(m);
  r.json["count"] = m.module.size();
  r.text = module_text(m);
  return r;
}

Report do_verify(const Ideal& ideal, const ModuleChoice& m, const RunOptions& opt) {
  const StratificationDAG dag = stratify(ideal, m.module);
  const FrontierReport fr = verify_frontier(dag, 4, 1, opt.first_integral_degree);
  // Minimal primes of every preserved ideal met during the descent.
  std::vector<std::string> seidenberg;
  std::size_t checked = 0;
  std::vector<Ideal> produced{ideal};
  for (const auto& n : dag.nodes)
    if (n.degeneracy && !n.degeneracy->is_unit()) produced.push_back(*n.degeneracy);
  for (const auto& j : produced)
    for (const auto& p : minimal_primes(j)) {
      ++checked;
      if (!is_preserved(p.ideal, m.module))
        seidenberg.push_back(p.ideal.to_string() + " over " + j.to_string() + " is not preserved");
    }
  Report r;
  Json fv = Json::array();
  for (const auto& v : fr.violations) fv.push_back(v);
  Json sv = Json::array();
  for (const auto& v : seidenberg) sv.push_back(v);
  r.json["nodes"] = dag.nodes.size();
  r.json["frontier"] = {{"points_checked", fr.points_checked}, {"violations", fv}};
  r.json["seidenberg"] = {{"primes_checked", checked}, {"violations", sv}};
  const bool ok = fr.ok() && seidenberg.empty();
  r.json["ok"] = ok;
  r.json["certification"] = certification_json(dag);
  std::ostringstream s;
  s << (ok ? "ok" : "violations found") << ": " << dag.nodes.size() << " nodes, " << fr.points_checked
    << " sample points, " << checked << " minimal primes checked\n";
  for (const auto& v : fr.violations) s << "  frontier: " << v << "\n";
  for (const auto& v : seidenberg) s << "  seidenberg: " << v << "\n";
  r.text = s.str();
  if (!ok) r.exit_code = kUnresolved;
  return r;
}

Json envelope(Command command, const ProblemSpec* spec) {
  Json j;
  j["tool"] = "logstrat";
  j["version"] = kVersion;
  j["command"] = command_name(command);
  if (spec) j["problem"] = problem_json(*spec);
  return j;
}

Json budget_json() { return {{"limit", budget::limit()}, {"used", budget::used()}}; }

RunResult failure(Command command, const ProblemSpec* spec, const RunOptions& opt, int code, const std::string& kind,
                  const std::string& message, const std::vector<std::string>& path = {}) {
  RunResult res;
  res.exit_code = code;
  res.err = "logstrat: " + kind + ": " + message + "\n";
  if (!path.empty()) {
    res.err += "  path:";
    for (const auto& p : path) res.err += " " + p;
    res.err += "\n";
  }
  if (opt.output == "json") {
    Json j = envelope(command, spec);
    j["error"] = {{"kind", kind}, {"message", message}};
    if (!path.empty()) j["error"]["path"] = path;
    j["budget"] = budget_json();
    res.out = j.dump(2) + "\n";
  }
  return res;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::Stratify, Command::Fiber, Command::CheckFree, Command::Tangent, Command::Verify})
    if (name == command_name(c)) return c;
  return std::nullopt;
}

RunOptions merge_options(RunOptions cli, const ProblemOptions& file, bool output_given, bool degree_given,
                         bool strict_given) {
  if (!output_given && file.output) cli.output = *file.output;
  if (!degree_given && file.first_integral_degree) cli.first_integral_degree = *file.first_integral_degree;
  if (!cli.step_budget && file.step_budget) cli.step_budget = file.step_budget;
  if (!strict_given && file.strict_bracket) cli.strict_bracket = *file.strict_bracket;
  return cli;
}

Point parse_point(const std::string& text, std::size_t arity) {
  Point p;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    const bool ok = !part.empty() && part.find_first_not_of("+-0123456789/") == std::string::npos &&
                    part.find_first_of("0123456789") != std::string::npos;
    Rational q;
    if (!ok || q.set_str(part[0] == '+' ? part.substr(1) : part, 10) != 0 || q.get_den() == 0)
      throw PreconditionError("bad point coordinate '" + part + "'");
    q.canonicalize();
    p.coordinates.push_back(q);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (p.size() != arity)
    throw PreconditionError("point has " + std::to_string(p.size()) + " coordinates but the ring has " +
                            std::to_string(arity) + " variables");
  return p;
}

RunResult run(Command command, const ProblemSpec& spec, const RunOptions& opt) {
  if (opt.output != "json" && opt.output != "text") return failure(command, &spec, opt, kInputError, "input", "output must be json or text");
  budget::set_limit(opt.step_budget ? *opt.step_budget : budget::kDefaultLimit);
  budget::reset();
  try {
    const Ideal ideal(spec.ring, spec.ideal);
    if (ideal.is_unit()) throw PreconditionError("the ideal is the unit ideal");
    const ModuleChoice m = choose_module(spec, ideal, opt);
    Report r;
    switch (command) {
      case Command::Stratify: r = do_stratify(ideal, m); break;
      case Command::Fiber: r = do_fiber(ideal, m, opt); break;
      case Command::CheckFree: r = do_check_free(spec, m); break;
      case Command::Tangent: r = do_tangent(m); break;
      case Command::Verify: r = do_verify(ideal, m, opt); break;
    }
    RunResult res;
    res.exit_code = r.exit_code;
    if (opt.output == "json") {
      Json j = envelope(command, &spec);
      for (auto& [k, v] : r.json.items()) j[k] = v;
      j["budget"] = budget_json();
      res.out = j.dump(2) + "\n";
    } else {
      res.out = std::string("logstrat ") + kVersion + " " + command_name(command) + "\n" + "ring " +
                spec.ring->to_string() + " order " + std::string(to_string(spec.ring->order())) + "\n" + "ideal " +
                ideal_text(spec.ideal) + "\n" + r.text + "budget " + std::to_string(budget::used()) + " of " +
                std::to_string(budget::limit()) + " steps\n";
    }
    return res;
  } catch (const BudgetExceeded& e) {
    return failure(command, &spec, opt, kBudgetExhausted, "budget", e.what());
  } catch (const DecompositionIncomplete& e) {
    return failure(command, &spec, opt, kUnresolved, "incomplete", e.what(), e.path());
  } catch (const Unresolved& e) {
    return failure(command, &spec, opt, kUnresolved, "unresolved", e.what());
  } catch (const ParseError& e) {
    return failure(command, &spec, opt, kInputError, "parse", e.what());
  } catch (const PreconditionError& e) {
    return failure(command, &spec, opt, kInputError, "input", e.what());
  }
}

RunResult run_text(Command command, const std::string& text, RunOptions options, bool output_given, bool degree_given,
                   bool strict_given) {
  ProblemSpec spec;
  try {
    spec = parse_problem(text);
  } catch (const ParseError& e) {
    return failure(command, nullptr, options, kInputError, "parse", e.what());
  } catch (const PreconditionError& e) {
    return failure(command, nullptr, options, kInputError, "input", e.what());
  }
  options = merge_options(std::move(options), spec.options, output_given, degree_given, strict_given);
  return run(command, spec, options);
}

}  // namespace logstrat::cli
