#pragma once

// Scenario and chain files for the eg2check command-line tool.
//
// A scenario names two systems, the system kind, the order to compare in and
// optionally the grid and tolerance. Input is JSON; unknown keys are errors.
// A normalized form (every default filled in, systems written as component
// lists) is the basis of the digest, so two files that differ only in key
// order or in the way a system is written share a digest.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eg2/majorization.hpp"
#include "eg2/orders.hpp"
#include "eg2/systems.hpp"

namespace eg2::cli {

/// Any problem with an input file. The message carries a location: line and
/// column for syntax errors, a JSON pointer for invalid values.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Order { St, Fr, Rf, Lr };

std::string_view to_string(Order o);

/// Largest component count accepted from a file.
inline constexpr std::size_t kMaxComponents = 10000;

struct NamedSystem {
  std::string label;
  ComponentSet components;
};

struct Scenario {
  NamedSystem a;
  NamedSystem b;
  SystemKind kind;
  Order order;
  GridSpec grid;
  double tolerance;
};

/// Command-line overrides applied on top of a file.
struct GridOverrides {
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<std::size_t> points;
  std::optional<Spacing> spacing;
  std::optional<double> tolerance;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
Scenario with_overrides(const Scenario& s, const GridOverrides& o);

nlohmann::json normalized(const Scenario& s);
/// Compact dump of the normalized form; keys are sorted.
std::string normalized_text(const Scenario& s);
/// Lower-case hex SHA-256 of normalized_text.
std::string digest(const Scenario& s);

struct ChainFile {
  ParamMatrix matrix;
  ParamSet set;
  /// Zero-based; files use one-based coordinates.
  std::vector<TTransform> transforms;
  /// Common inner shape used for the numerical st check.
  double phi;
  std::string label;
  std::string label_star;
};

ChainFile parse_chain(std::string_view text);
ChainFile load_chain(const std::string& path);

/// The whole file as a string. Throws InputError if it cannot be read.
std::string read_file(const std::string& path);

}  // namespace eg2::cli
