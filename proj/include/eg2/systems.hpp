#pragma once

// Lifetimes of series (minimum, X_{1:n}) and parallel (maximum, X_{n:n})
// systems built from independent, possibly heterogeneous EG2 components.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "eg2/core.hpp"

namespace eg2 {

enum class SystemKind { Series, Parallel };

std::string_view to_string(SystemKind kind);

/// Ordered, non-empty list of component parameters.
class ComponentSet {
 public:
  explicit ComponentSet(std::vector<EG2Params> components);

  /// Builds components (theta_i, phi, alpha_i) from parallel rows.
  static ComponentSet from_rows(std::span<const double> alphas, std::span<const double> thetas,
                                double phi);

  std::size_t size() const noexcept { return components_.size(); }
  const EG2Params& operator[](std::size_t i) const { return components_[i]; }
  std::span<const EG2Params> components() const noexcept { return components_; }
  auto begin() const noexcept { return components_.begin(); }
  auto end() const noexcept { return components_.end(); }

  /// True when every component has the same theta and the same phi.
  bool has_common_theta_phi() const noexcept;
  double alpha_sum() const noexcept;

  friend bool operator==(const ComponentSet&, const ComponentSet&) = default;

 private:
  std::vector<EG2Params> components_;
};

/// prod_i (1 - exp(-theta_i x^-phi_i))^alpha_i
Probability series_survival(const ComponentSet& cs, double x);
/// prod_i [1 - (1 - exp(-theta_i x^-phi_i))^alpha_i]
Probability parallel_cdf(const ComponentSet& cs, double x);

/// Density of the system lifetime: series uses survival * sum of hazards,
/// parallel uses cdf * sum of reversed hazards.
double system_pdf(const ComponentSet& cs, SystemKind kind, double x);

/// Reversed hazard of a parallel system whose components share theta and phi:
///   theta phi x^(-phi-1) e^(-theta x^-phi) sum_i varphi(alpha_i, 1 - e^(-theta x^-phi)).
/// Throws ContractError if theta or phi differ across components.
double parallel_reversed_hazard(const ComponentSet& cs, double x);

/// Closed-form series density for common theta and phi; it depends on the
/// alphas only through their sum. Throws ContractError otherwise.
double series_pdf_homogeneous(const ComponentSet& cs, double x);

// Kind-generic system functions used by the comparators and the CLI.
double system_survival(const ComponentSet& cs, SystemKind kind, double x);
double system_cdf(const ComponentSet& cs, SystemKind kind, double x);
double system_log_survival(const ComponentSet& cs, SystemKind kind, double x);
double system_log_cdf(const ComponentSet& cs, SystemKind kind, double x);
double system_log_pdf(const ComponentSet& cs, SystemKind kind, double x);
/// f / (1 - F) of the system lifetime.
double system_hazard(const ComponentSet& cs, SystemKind kind, double x);
/// f / F of the system lifetime.
double system_reversed_hazard(const ComponentSet& cs, SystemKind kind, double x);

}  // namespace eg2
