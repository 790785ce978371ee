#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "eg2/cli/commands.hpp"

namespace {

using eg2::cli::CommonOptions;

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--grid-min", opt.grid.x_min, "smallest grid abscissa");
  cmd->add_option("--grid-max", opt.grid.x_max, "largest grid abscissa");
  cmd->add_option("--grid-points", opt.grid.points, "number of grid points");
  const std::map<std::string, eg2::Spacing> spacings{{"log", eg2::Spacing::Log},
                                                     {"linear", eg2::Spacing::Linear}};
  cmd->add_option("--spacing", opt.grid.spacing, "log or linear")
      ->transform(CLI::CheckedTransformer(spacings, CLI::ignore_case));
  cmd->add_option("--tol", opt.grid.tolerance, "dominance tolerance");
  cmd->add_option("--csv", opt.csv_path, "write the grid table to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic comparisons of series and parallel systems with EG2 components"};
  app.set_version_flag("--version", eg2::cli::kToolVersion);
  app.require_subcommand(1);

  CommonOptions opt;
  std::string path;
  std::string id;
  eg2::cli::EvalRequest eval{};

  auto* compare = app.add_subcommand("compare", "compare two systems described by a scenario file");
  compare->add_option("scenario", path, "scenario JSON file")->required();
  add_common(compare, opt);
  compare->add_flag("--dump-normalized", opt.dump_normalized,
                    "print the normalized scenario and exit");
  compare->add_option("--record", opt.record_path, "write a JSON run record to this file");

  auto* reproduce = app.add_subcommand("reproduce", "rerun a built-in reproduction");
  reproduce->add_option("id", id, "3.3, 3.4 or 3.11")->required();
  add_common(reproduce, opt);

  auto* chain = app.add_subcommand("chain", "check a chain of T-transforms and its conclusion");
  chain->add_option("file", path, "chain JSON file")->required();
  add_common(chain, opt);

  auto* crossings = app.add_subcommand("crossings", "locate crossings of the survival curves");
  crossings->add_option("scenario", path, "scenario JSON file")->required();
  add_common(crossings, opt);
  crossings->add_flag("--dump-normalized", opt.dump_normalized,
                      "print the normalized scenario and exit");
  crossings->add_option("--record", opt.record_path, "write a JSON run record to this file");

  auto* ev = app.add_subcommand("eval", "evaluate a single EG2 distribution");
  ev->add_option("--theta", eval.theta, "scale")->required();
  ev->add_option("--phi", eval.phi, "inner shape")->required();
  ev->add_option("--alpha", eval.alpha, "outer shape")->required();
  ev->add_option("x", eval.xs, "abscissae")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? eg2::cli::kExitOk : eg2::cli::kExitInput;
  }

  if (*compare) return eg2::cli::cmd_compare(path, opt, std::cout, std::cerr);
  if (*reproduce) return eg2::cli::cmd_reproduce(id, opt, std::cout, std::cerr);
  if (*chain) return eg2::cli::cmd_chain(path, opt, std::cout, std::cerr);
  if (*crossings) return eg2::cli::cmd_crossings(path, opt, std::cout, std::cerr);
  return eg2::cli::cmd_eval(eval, std::cout, std::cerr);
}
