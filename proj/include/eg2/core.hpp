#pragma once

// Pointwise evaluation of the exponentiated Gumbel type-II (EG2) family
//
//   F(x) = 1 - (1 - exp(-theta * x^-phi))^alpha,   x > 0,
//
// together with the three auxiliary kernels
//
//   eta(a, u)    = u^a ln u / (1 - u^a)
//   gamma(a, u)  = a (1 - u) u^(a-1) / (1 - u^a)
//   varphi(a, u) = a u^(a-1) / (1 - u^a)
//
// that drive the ordering results for series and parallel systems.
//
// Everything here is a pure function of its arguments.

#include <limits>

#include "eg2/error.hpp"

namespace eg2 {

/// Parameter triple (theta, phi, alpha) of one EG2 component.
/// All three must be finite and strictly positive.
class EG2Params {
 public:
  EG2Params(double theta, double phi, double alpha);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const EG2Params&, const EG2Params&) = default;

 private:
  double theta_;
  double phi_;
  double alpha_;
};

/// A real number in [0, 1].
class Probability {
 public:
  explicit Probability(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  double value_;
};

/// Arguments (alpha, u) of the eta, gamma and varphi kernels: alpha > 0 and
/// u strictly inside (0, 1). Boundary values are rejected, not extended by
/// their limits.
class KernelArgs {
 public:
  KernelArgs(double alpha, double u);

  double alpha() const noexcept { return alpha_; }
  double u() const noexcept { return u_; }

 private:
  double alpha_;
  double u_;
};

/// Cap above which varphi_kernel reports OverflowSignal instead of a value.
inline constexpr double kDefaultVarphiCap = 1e300;

// Distribution functions. Every function throws DomainError if x is not a
// finite positive number.

Probability cdf(const EG2Params& p, double x);
/// Evaluated from its own closed form, not as 1 - cdf.
Probability survival(const EG2Params& p, double x);
double pdf(const EG2Params& p, double x);
/// f / (1 - F). Throws OverflowSignal if the value is not representable.
double hazard(const EG2Params& p, double x);
/// f / F, computed as theta phi x^(-phi-1) * gamma(alpha, 1 - exp(-theta x^-phi))
/// so it stays finite where F itself underflows.
/// Throws OverflowSignal if the value is not representable.
double reversed_hazard(const EG2Params& p, double x);

// Natural logarithms of the above. They remain finite deep in both tails where
// the plain values underflow.
double log_cdf(const EG2Params& p, double x);
double log_survival(const EG2Params& p, double x);
double log_pdf(const EG2Params& p, double x);
double log_hazard(const EG2Params& p, double x);
double log_reversed_hazard(const EG2Params& p, double x);

/// Negative; tends to 0 as u -> 0 and to -1/alpha as u -> 1.
double eta_kernel(const KernelArgs& k);
/// Positive; identically 1 at alpha = 1; tends to 1 as u -> 1.
double gamma_kernel(const KernelArgs& k);
/// Positive; diverges as u -> 1. Throws OverflowSignal above `cap`.
double varphi_kernel(const KernelArgs& k, double cap = kDefaultVarphiCap);

namespace detail {

/// Closed-form pieces shared by the distribution functions at one abscissa.
/// With z = theta x^-phi: e = exp(-z), one_minus_e = 1 - e and
/// log_one_minus_e = log(1 - e), each computed without cancellation.
struct Terms {
  double log_z;
  double z;
  double e;
  double one_minus_e;
  double log_one_minus_e;
};

/// Above this value of z the exponential is handled in log space.
inline constexpr double kLogSpaceThreshold = 700.0;
/// Below this value of 1 - u the eta and gamma kernels switch to a two-term
/// expansion about u = 1.
inline constexpr double kKernelSeriesThreshold = 1e-8;

Terms terms(const EG2Params& p, double x);

// Kernels on a split representation of u: the caller supplies 1 - u and
// log u, each accurate on its own. This keeps the kernels precise when u is
// within rounding of 1 and only 1 - u is known to full relative precision.
double eta(double alpha, double one_minus_u, double log_u);
double gamma(double alpha, double one_minus_u, double log_u);
double log_gamma(double alpha, double one_minus_u, double log_u);
double varphi(double alpha, double one_minus_u, double log_u);

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

}  // namespace detail

}  // namespace eg2
