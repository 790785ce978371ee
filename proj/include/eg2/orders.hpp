#pragma once

// Grid-based comparison of two systems in the usual stochastic (st), failure
// rate (fr), reversed failure rate (rf) and likelihood ratio (lr) orders,
// finite-difference evidence for Schur convexity, the two-column chain
// majorization condition, and a crossing finder for survival curves.
//
// Every verdict is certified only on the grid it reports; nothing here claims
// an ordering outside [x_min, x_max].

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eg2/majorization.hpp"
#include "eg2/systems.hpp"

namespace eg2 {

enum class Spacing { Linear, Log };

std::string_view to_string(Spacing spacing);

/// Abscissae x_min = x_0 < ... < x_{count-1} = x_max.
class GridSpec {
 public:
  GridSpec(double x_min, double x_max, std::size_t count, Spacing spacing);

  /// Logarithmic, [1e-2, 1e2], 4096 points.
  static GridSpec default_grid();

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t count() const noexcept { return count_; }
  Spacing spacing() const noexcept { return spacing_; }

  std::vector<double> points() const;
  /// Same window and spacing with 2 count - 1 points (old points kept).
  GridSpec refined() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t count_;
  Spacing spacing_;
};

enum class Relation { FirstDominates, SecondDominates, Equal, Crossing, Inconclusive };

std::string_view to_string(Relation r);
/// FirstDominates <-> SecondDominates; others unchanged.
Relation mirrored(Relation r);

struct Interval {
  double lo;
  double hi;
};

struct DominanceVerdict {
  Relation relation;
  /// Non-empty exactly when relation is Crossing.
  std::vector<Interval> crossings;
  /// Largest pointwise amount by which the reported relation is contradicted
  /// (for Equal: the largest gap; for Crossing/Inconclusive: the smaller of
  /// the two one-sided violations).
  double max_violation;
  GridSpec grid_used;
  /// Grid points that entered the comparison (dead tails excluded).
  std::size_t points_compared;
};

inline constexpr double kDefaultTolerance = 1e-10;
/// Points where both survivals fall below this are excluded from st and fr.
inline constexpr double kDeadTailLevel = 1e-14;

/// FirstDominates means A >=_st B (A's survival is pointwise larger).
DominanceVerdict compare_st(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g = GridSpec::default_grid(),
                            double tol = kDefaultTolerance);

/// FirstDominates means A >=_fr B (A's hazard is pointwise smaller).
/// Tolerance is scaled by max(1, |hazard|).
DominanceVerdict compare_fr(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g = GridSpec::default_grid(),
                            double tol = kDefaultTolerance);

/// Parallel systems. FirstDominates means A >=_rf B (A's reversed hazard is
/// pointwise larger). Uses the common-parameter closed form when each set
/// shares theta and phi, otherwise the sum of component reversed hazards
/// (which equals f/F of the system). Tolerance is scaled by max(1, |value|).
DominanceVerdict compare_rf(const ComponentSet& a, const ComponentSet& b,
                            const GridSpec& g = GridSpec::default_grid(),
                            double tol = kDefaultTolerance);
/// Kind-generic form; series systems use f/F of the minimum.
DominanceVerdict compare_rf(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g, double tol = kDefaultTolerance);

/// FirstDominates means f_A / f_B is nondecreasing (B <=_lr A); Equal means the
/// ratio is constant. Monotonicity is judged on consecutive differences of the
/// log ratio against tol * max(1, |log ratio|). Points where both densities lie
/// below the smallest normal double are excluded. A single change of
/// direction is reported as Crossing with the bracketing interval; anything
/// else non-monotone is Inconclusive. Throws DomainError if a log density is
/// not finite.
DominanceVerdict compare_lr(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g = GridSpec::default_grid(),
                            double tol = kDefaultTolerance);

struct AuditReport {
  DominanceVerdict lr;
  DominanceVerdict rf;
  DominanceVerdict fr;
  DominanceVerdict st;
  /// One entry per violated implication (lr => rf, lr => fr, rf => st, fr => st).
  std::vector<std::string> flags;

  bool consistent() const noexcept { return flags.empty(); }
};

/// Runs all four comparators and flags any pair where the stronger order
/// holds in some direction but the weaker one does not.
AuditReport implication_audit(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                              const GridSpec& g = GridSpec::default_grid(),
                              double tol = kDefaultTolerance);

enum class SchurClass { ConvexEvidence, ConcaveEvidence, Neither, Both };

std::string_view to_string(SchurClass c);

struct SchurEvidence {
  double min_pair_product;
  double max_pair_product;
  SchurClass classification;
};

/// A real functional of a parameter vector evaluated at abscissa x.
using ParamFunctional = std::function<double(std::span<const double> z, double x)>;

/// Tolerance on the sign of the pair products.
inline constexpr double kSchurTolerance = 1e-9;
/// Relative finite-difference step for parameter derivatives.
inline constexpr double kParamStep = 1e-5;

/// min and max over pairs i < j of (z_i - z_j)(d_i f - d_j f), with partials by
/// central differences of step h * max(1, |z_i|). Requires z.size() >= 2.
SchurEvidence schur_pair_condition(const ParamFunctional& f, const RealVector& z, double x,
                                   double h = kParamStep);

/// sum over rows r of (a_r2 - a_r1)(dpsi/da_r2 - dpsi/da_r1) for a 2x2
/// [alpha; theta] matrix, where psi is the series survival (Series) or the
/// parallel cdf (Parallel) at x with common inner shape phi. Partials use
/// central differences with step h * max(1, |entry|).
/// Throws ContractError unless a is 2 x 2.
double theorem26_condition(const ParamMatrix& a, SystemKind kind, double phi, double x,
                           double h = kParamStep);

/// Abscissae where the survival difference of A and B changes sign beyond
/// +-tol on the grid, each refined by bisection to relative width 1e-10.
/// Sorted ascending.
std::vector<double> find_crossings(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                                   const GridSpec& g = GridSpec::default_grid(),
                                   double tol = kDefaultTolerance);

}  // namespace eg2
