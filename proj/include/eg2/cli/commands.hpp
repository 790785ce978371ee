#pragma once

// The eg2check subcommands. Each one writes its report to `out`, diagnostics
// to `err`, and returns the process exit code:
//
//   0  conclusive result (or, for reproduce, every check passed)
//   1  input or usage error
//   2  Crossing / Inconclusive verdict, or a reproduction check that failed

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eg2/cli/scenario.hpp"

namespace eg2::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInconclusive = 2;

struct CommonOptions {
  GridOverrides grid;
  std::optional<std::string> csv_path;
  bool dump_normalized = false;
  std::optional<std::string> record_path;
};

int cmd_compare(const std::string& scenario_path, const CommonOptions& opt, std::ostream& out,
                std::ostream& err);
/// id is one of "3.3", "3.4", "3.11".
int cmd_reproduce(const std::string& id, const CommonOptions& opt, std::ostream& out,
                  std::ostream& err);
int cmd_chain(const std::string& chain_path, const CommonOptions& opt, std::ostream& out,
              std::ostream& err);
int cmd_crossings(const std::string& scenario_path, const CommonOptions& opt, std::ostream& out,
                  std::ostream& err);

struct EvalRequest {
  double theta;
  double phi;
  double alpha;
  std::vector<double> xs;
};

int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err);

/// Grid table with columns
///   x, F_A, Fbar_A, f_A, rhaz_A, F_B, Fbar_B, f_B, rhaz_B, diff_surv
/// where diff_surv = Fbar_A - Fbar_B. Numbers use the shortest decimal form
/// that reads back to the same double.
void write_grid_csv(std::ostream& os, const ComponentSet& a, const ComponentSet& b,
                    SystemKind kind, const GridSpec& g);

/// Shortest round-trip decimal text of v ("inf", "-inf", "nan" otherwise).
std::string format_number(double v);

/// e.g. "X_{1:2}" for a two-component series system.
std::string order_statistic(const std::string& label, SystemKind kind, std::size_t n);

/// Human-readable relation between the systems for a verdict, e.g.
/// "X_{1:2} <=_st X*_{1:2}". Empty for Crossing / Inconclusive.
std::string statement(Relation r, Order order, const NamedSystem& a, const NamedSystem& b,
                      SystemKind kind);

}  // namespace eg2::cli
