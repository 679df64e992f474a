#include "gfs/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  gfs::cli::JobSpec job;
  CLI::App app{"Finite groupoid Fourier-Stieltjes toolkit"};
  app.add_option("command", job.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember(gfs::cli::commands()));
  app.add_option("--groupoid", job.groupoid, "Groupoid JSON file");
  app.add_option("--measure", job.measure, "Unit measure JSON file (default: uniform)");
  app.add_option("--measure2", job.measure2, "Second unit measure JSON file");
  app.add_option("--phi", job.phi, "Function or matrix JSON file");
  app.add_option("--f", job.f, "Function JSON file");
  app.add_option("--f2", job.f2, "Second function JSON file");
  app.add_option("--rep", job.rep, "Representation JSON file (default: seeded random triple)");
  app.add_option("--seed", job.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", job.tol, "Tolerance override");
  app.add_option("--format", job.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--samples", job.samples, "Sample count for randomized bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return 1;
  }

  const auto result = gfs::cli::run(job);
  std::cout << result.out << std::flush;
  std::cerr << result.err << std::flush;
  return result.exit_code;
}
