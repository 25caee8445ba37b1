#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logstrat/cli.hpp"

int main(int argc, char** argv) {
  using namespace logstrat::cli;
  CLI::App app{"Stratification of closed points by logarithmic derivations"};
  app.set_version_flag("--version", std::string("logstrat ") + kVersion);

  std::string command, file, output = "json";
  RunOptions opt;
  std::string point;
  std::uint64_t budget = 0;
  app.add_option("command", command, "stratify | fiber | check-free | tangent | verify")
      ->required()
      ->check(CLI::IsMember({"stratify", "fiber", "check-free", "tangent", "verify"}));
  app.add_option("file", file, "problem file")->required();
  auto* point_opt = app.add_option("--point", point, "closed point a,b,c for fiber");
  auto* output_opt = app.add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* degree_opt = app.add_option("--first-integral-degree", opt.first_integral_degree,
                                    "degree bound for family first integrals (default 3)");
  auto* budget_opt = app.add_option("--step-budget", budget, "limit on computation steps");
  auto* strict_opt = app.add_flag("--strict-bracket", opt.strict_bracket,
                                  "reject derivations that are not closed under the bracket");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::ifstream in(file);
  if (!in) {
    std::cerr << "logstrat: cannot read " << file << "\n";
    return kInputError;
  }
  std::ostringstream text;
  text << in.rdbuf();

  opt.output = output;
  if (*point_opt) opt.point = point;
  if (*budget_opt) opt.step_budget = budget;
  const RunResult r = run_text(*parse_command(command), text.str(), opt, bool(*output_opt), bool(*degree_opt),
                               bool(*strict_opt));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
