#include <doctest.h>
#include <json.hpp>

#include "logstrat/cli.hpp"
#include "logstrat/errors.hpp"
#include "test_util.hpp"

using namespace logstrat;
using namespace logstrat::cli;
using Json = nlohmann::json;

namespace {

const char* kFreeDivisor =
    "ring Q[x,y,z] order degrevlex\n"
    "ideal { x*y*(x+y)*(x+y*z) }\n"
    "derivations tangent\n";

const char* kFreeDivisorBasis =
    "ring Q[x,y,z] order degrevlex\n"
    "ideal { x*y*(x+y)*(x+y*z) }\n"
    "derivations { x*dx + y*dy ; (x+y)*(y*dy - z*dz) ; (x+y*z)*dz }\n";

bool has_line(const std::string& out, const std::string& line) {
  return ("\n" + out).find("\n" + line + "\n") != std::string::npos;
}

RunOptions json_options() { return RunOptions{}; }

RunOptions text_options() {
  RunOptions o;
  o.output = "text";
  return o;
}

}  // namespace

TEST_CASE("parse the free divisor file") {
  const ProblemSpec s = parse_problem(kFreeDivisor);
  CHECK(s.ring->arity() == 3);
  CHECK(s.ideal.size() == 1);
  CHECK(s.source == DerivationSource::Tangent);
  CHECK(s.derivations.empty());
  CHECK(s.ideal[0] == testutil::P("x*y*(x+y)*(x+y*z)"));
}

TEST_CASE("explicit derivation blocks") {
  const ProblemSpec s = parse_problem("ring Q[x,y]\nideal { x*y }\nderivations { x*dx + y*dy }\n");
  CHECK(s.source == DerivationSource::Explicit);
  REQUIRE(s.derivations.size() == 1);
  CHECK(s.derivations[0][0] == testutil::P("x", testutil::xy()));
  CHECK(s.derivations[0][1] == testutil::P("y", testutil::xy()));

  const ProblemSpec t = parse_problem(kFreeDivisorBasis);
  CHECK(t.derivations.size() == 3);
  CHECK(t.derivations[1][2] == testutil::P("-x*z - y*z"));

  const ProblemSpec u = parse_problem("ring Q[x,y]\nideal { x }\nderivations {\n (1, 0) ;\n (0, x)\n}\n");
  REQUIRE(u.derivations.size() == 2);
  CHECK(u.derivations[1][1] == testutil::P("x", testutil::xy()));
}

TEST_CASE("derivation arity must match the ring") {
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x*y }\nderivations { (x, y, 1) }\n"), PreconditionError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x*y }\nderivations { x*dx + dz }\n"), PreconditionError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_problem("ring Q[x,y]\n\nideal { x*y +* 1 }\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 14);
  }
  try {
    parse_problem("ring Q[x,y]\nideal { x }\nderivations { x*dx*dy }\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y] order lexx\nideal { x }\n"), ParseError);
}

TEST_CASE("directive checks") {
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x }\nmodule tangent\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nring Q[x,y]\nideal { x }\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ideal { x }\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x }\noption colour red\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("ring Q[x,y]\nideal { x }\noption output xml\n"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const ProblemSpec s = parse_problem(
      "# leading comment\n\nring Q[x,y,z]   # trailing\nideal {\n  x*y*(x+y)*(x+y*z)  # the divisor\n}\n"
      "derivations tangent\n");
  CHECK(s == parse_problem(kFreeDivisor));
}

TEST_CASE("options are parsed and merged, command line first") {
  const ProblemSpec s = parse_problem(
      "ring Q[x,y]\nideal { x }\noption first-integral-degree 5\noption output text\noption strict-bracket true\n"
      "option step-budget 1000\n");
  CHECK(*s.options.first_integral_degree == 5);
  CHECK(*s.options.output == "text");
  CHECK(*s.options.strict_bracket);
  CHECK(*s.options.step_budget == 1000);

  RunOptions cli;
  cli.first_integral_degree = 2;
  const RunOptions a = merge_options(cli, s.options, false, false, false);
  CHECK(a.first_integral_degree == 5);
  CHECK(a.output == "text");
  CHECK(a.strict_bracket);
  CHECK(*a.step_budget == 1000);
  const RunOptions b = merge_options(cli, s.options, true, true, false);
  CHECK(b.first_integral_degree == 2);
  CHECK(b.output == "json");
}

TEST_CASE("canonical printing round-trips") {
  const std::vector<std::string> files = {
      kFreeDivisor, kFreeDivisorBasis, "ring Q[x,y,z] order lex\nideal { 0 }\nderivations { dx ; dy }\n",
      "ring Q[a,b]\nideal { a^2 - b^3 ; 2/3*a*b }\noption first-integral-degree 4\noption output text\n"};
  for (const auto& f : files) {
    const ProblemSpec s = parse_problem(f);
    const std::string printed = print_problem(s);
    INFO(printed);
    const ProblemSpec back = parse_problem(printed);
    CHECK(back == s);
    CHECK(print_problem(back) == printed);
  }
}

TEST_CASE("points") {
  const Point p = parse_point("1, -2, 3/4", 3);
  CHECK(p[0] == 1);
  CHECK(p[1] == -2);
  CHECK(p[2] == Rational(3, 4));
  CHECK_THROWS_AS(parse_point("1,2", 3), PreconditionError);
  CHECK_THROWS_AS(parse_point("1,a,2", 3), PreconditionError);
}

TEST_CASE("stratify report") {
  const RunResult r = run_text(Command::Stratify, kFreeDivisor, json_options());
  CHECK(r.exit_code == kOk);
  const Json j = Json::parse(r.out);
  CHECK(j["tool"] == "logstrat");
  CHECK(j["version"] == kVersion);
  CHECK(j["problem"]["ideal"].size() == 1);
  CHECK(j["budget"]["used"].get<std::uint64_t>() > 0);
  CHECK(j["certification"]["all_certified"] == true);
  const Json& nodes = j["nodes"];
  REQUIRE(nodes.size() == 9);
  CHECK(j["roots"].size() == 4);
  CHECK(j["certification"]["primes"].size() == 9);
  int by_dim[3] = {0, 0, 0};
  int family = 0, non_holonomic = 0;
  for (const auto& n : nodes) {
    for (const char* key : {"id", "prime_generators", "dim", "rank", "kind", "fiber_dim", "holonomic", "children"})
      CHECK(n.contains(key));
    ++by_dim[n["dim"].get<int>()];
    if (n["kind"] == "family") ++family;
    if (!n["holonomic"].get<bool>()) ++non_holonomic;
  }
  CHECK(by_dim[2] == 4);
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[0] == 2);
  CHECK(family == 1);
  CHECK(non_holonomic == 3);
}

TEST_CASE("output is byte-identical across runs") {
  for (Command c : {Command::Stratify, Command::Tangent, Command::Verify, Command::CheckFree}) {
    const RunResult a = run_text(c, kFreeDivisor, json_options());
    const RunResult b = run_text(c, kFreeDivisor, json_options());
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("check-free on the explicit basis") {
  const RunResult r = run_text(Command::CheckFree, kFreeDivisorBasis, text_options());
  CHECK(r.exit_code == kOk);
  CHECK(has_line(r.out, "free_with_basis, det = f"));
  const Json j = Json::parse(run_text(Command::CheckFree, kFreeDivisorBasis, json_options()).out);
  CHECK(j["verdict"] == "free_with_basis");
  CHECK(j["constant"] == "1");
}

TEST_CASE("check-free on a non-free divisor is inconclusive") {
  // The tangent module of four generic planes through the origin needs more
  // than three generators.
  const char* text = "ring Q[x,y,z]\nideal { x*y*z*(x+y+z) }\n";
  const RunResult r = run_text(Command::CheckFree, text, text_options());
  CHECK(r.exit_code == kUnresolved);
  CHECK(r.out.find("\ninconclusive, ") != std::string::npos);
}

TEST_CASE("fiber") {
  RunOptions o = text_options();
  o.point = "0,0,5";
  RunResult r = run_text(Command::Fiber, kFreeDivisor, o);
  CHECK(r.exit_code == kOk);
  CHECK(has_line(r.out, "(x, y, z - 5), defining, non-holonomic"));

  o.point = "1,1,-1";
  r = run_text(Command::Fiber, kFreeDivisor, o);
  CHECK(r.exit_code == kOk);
  CHECK(has_line(r.out, "(y*z + x), defining, holonomic"));

  RunOptions js = json_options();
  js.point = "0,0,5";
  const Json j = Json::parse(run_text(Command::Fiber, kFreeDivisor, js).out);
  CHECK(j["stratum_kind"] == "family");
  CHECK(j["holonomic"] == false);
  CHECK(j["prime_generators"].size() == 3);
}

TEST_CASE("exit codes") {
  RunOptions o = text_options();
  o.point = "1,1,1";
  CHECK(run_text(Command::Fiber, kFreeDivisor, o).exit_code == kInputError);
  CHECK(run_text(Command::Fiber, kFreeDivisor, text_options()).exit_code == kInputError);
  CHECK(run_text(Command::Stratify, "ring Q[x,y]\nideal { x*y +* }\n", json_options()).exit_code == kInputError);
  CHECK(run_text(Command::Stratify, "ring Q[x,y]\nideal { 1 }\n", json_options()).exit_code == kInputError);

  // Non-preserved ideal for an explicit module.
  CHECK(run_text(Command::Stratify, "ring Q[x,y]\nideal { x }\nderivations { dx }\n", json_options()).exit_code ==
        kInputError);

  RunOptions tight = json_options();
  tight.step_budget = 100;
  const RunResult b = run_text(Command::Stratify, kFreeDivisor, tight);
  CHECK(b.exit_code == kBudgetExhausted);
  const Json j = Json::parse(b.out);
  CHECK(j["error"]["kind"] == "budget");
  CHECK(j["budget"]["limit"] == 100);
  CHECK(b.err.find("logstrat: budget:") == 0);

  RunOptions planar = text_options();
  planar.point = "1,1,1";
  planar.first_integral_degree = 0;
  const RunResult u = run_text(Command::Fiber, "ring Q[x,y,z]\nideal { 0 }\nderivations { dx ; dy }\n", planar);
  CHECK(u.exit_code == kUnresolved);
}

TEST_CASE("unbracketed modules are closed unless strict") {
  const char* text = "ring Q[x,y]\nideal { 0 }\nderivations { dx ; x*dy }\n";
  const RunResult loose = run_text(Command::Tangent, text, json_options());
  CHECK(loose.exit_code == kOk);
  const Json j = Json::parse(loose.out);
  CHECK(j["module"]["bracket_generators_added"].get<int>() >= 1);

  RunOptions strict = json_options();
  strict.strict_bracket = true;
  CHECK(run_text(Command::Tangent, text, strict).exit_code == kInputError);
}

TEST_CASE("verify") {
  const RunResult r = run_text(Command::Verify, kFreeDivisor, json_options());
  CHECK(r.exit_code == kOk);
  const Json j = Json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["frontier"]["violations"].empty());
  CHECK(j["seidenberg"]["violations"].empty());
  CHECK(j["frontier"]["points_checked"].get<int>() > 0);
}
