#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "campaign.hpp"
#include "report.hpp"

// Exit status: 0 all checks pass, 1 a check failed, 2 bad invocation or config, 3 computation error.
int main(int argc, char** argv) {
  using namespace awq::cli;
  CLI::App app{"Askey-Wilson / reflection equation / ASEP verification campaigns"};
  std::string command, config_path, out_path;
  std::uint64_t seed = 0;
  double tol = 0;
  app.add_option("command", command, "campaign to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--config", config_path, "JSON job configuration")->required();
  app.add_option("--out", out_path, "report path (stdout if omitted)");
  auto* seed_opt = app.add_option("--seed", seed, "overrides the configured seed");
  auto* tol_opt = app.add_option("--tol", tol, "overrides the default tolerances");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunOptions opts;
  if (*seed_opt) opts.seed = seed;
  if (*tol_opt) opts.tol = tol;

  Report rep;
  try {
    rep = run(command, load_config(config_path), opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return 3;
  }

  const std::string body = rep.csv ? *rep.csv : serialize(rep.doc);
  try {
    if (out_path.empty())
      std::cout << body;
    else
      write_file_atomic(out_path, body);
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return 2;
  }
  if (!rep.csv) {
    const auto& s = rep.doc["summary"];
    std::fprintf(stderr, "%s: %d checks, %d failed\n", command.c_str(), s["checks"].get<int>(), s["failed"].get<int>());
  }
  return rep.pass ? 0 : 1;
}
