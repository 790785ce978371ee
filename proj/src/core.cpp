#include "eg2/core.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace eg2 {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    std::ostringstream msg;
    msg << "EG2 parameter " << name << " must be finite and positive, got " << v;
    throw DomainError(msg.str());
  }
}

void require_abscissa(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    std::ostringstream msg;
    msg << "abscissa must be finite and positive, got " << x;
    throw DomainError(msg.str());
  }
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw OverflowSignal(std::string(what) + " is not representable at this abscissa");
  }
  return v;
}

}  // namespace

EG2Params::EG2Params(double theta, double phi, double alpha)
    : theta_(theta), phi_(phi), alpha_(alpha) {
  require_positive(theta, "theta");
  require_positive(phi, "phi");
  require_positive(alpha, "alpha");
}

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << "probability outside [0,1]: " << value;
    throw DomainError(msg.str());
  }
}

KernelArgs::KernelArgs(double alpha, double u) : alpha_(alpha), u_(u) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "kernel alpha must be finite and positive, got " << alpha;
    throw DomainError(msg.str());
  }
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream msg;
    msg << "kernel argument u must lie in the open interval (0,1), got " << u;
    throw DomainError(msg.str());
  }
}

namespace detail {

Terms terms(const EG2Params& p, double x) {
  require_abscissa(x);
  Terms t{};
  t.log_z = std::log(p.theta()) - p.phi() * std::log(x);
  t.z = std::exp(t.log_z);
  t.e = std::exp(-t.z);
  if (t.z > kLogSpaceThreshold) {
    // e < 1e-304: log(1 - e) = -e to full precision and 1 - e rounds to 1.
    t.one_minus_e = 1.0;
    t.log_one_minus_e = -t.e;
  } else if (t.z < 1e-10) {
    // 1 - e = z (1 - z/2 + ...) and z may itself be subnormal or zero.
    t.one_minus_e = -std::expm1(-t.z);
    t.log_one_minus_e = t.log_z - 0.5 * t.z;
  } else {
    t.one_minus_e = -std::expm1(-t.z);
    t.log_one_minus_e = t.e < 0.5 ? std::log1p(-t.e) : std::log(t.one_minus_e);
  }
  return t;
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log1p(std::exp(b - a));
}

double eta(double alpha, double one_minus_u, double log_u) {
  if (one_minus_u < kKernelSeriesThreshold) {
    const double t = -log_u;
    return -1.0 / alpha + 0.5 * t;
  }
  const double a = alpha * log_u;
  return std::exp(a) * log_u / -std::expm1(a);
}

double gamma(double alpha, double one_minus_u, double log_u) {
  if (one_minus_u < kKernelSeriesThreshold) {
    const double t = -log_u;
    return 1.0 + 0.5 * (1.0 - alpha) * t;
  }
  const double a = alpha * log_u;
  return alpha * one_minus_u * std::exp(a - log_u) / -std::expm1(a);
}

double log_gamma(double alpha, double one_minus_u, double log_u) {
  if (one_minus_u < kKernelSeriesThreshold) {
    const double t = -log_u;
    return std::log1p(0.5 * (1.0 - alpha) * t);
  }
  const double a = alpha * log_u;
  return std::log(alpha) + std::log(one_minus_u) + (alpha - 1.0) * log_u -
         std::log(-std::expm1(a));
}

double varphi(double alpha, double one_minus_u, double log_u) {
  if (one_minus_u < kKernelSeriesThreshold) {
    // varphi = gamma / (1 - u)
    return gamma(alpha, one_minus_u, log_u) / one_minus_u;
  }
  const double a = alpha * log_u;
  return alpha * std::exp(a - log_u) / -std::expm1(a);
}

}  // namespace detail

namespace {

struct SplitU {
  double u;
  double one_minus_u;
  double log_u;
};

SplitU split(const KernelArgs& k) {
  return {k.u(), 1.0 - k.u(), std::log(k.u())};
}

}  // namespace

Probability cdf(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  return Probability(-std::expm1(p.alpha() * t.log_one_minus_e));
}

Probability survival(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  return Probability(std::exp(p.alpha() * t.log_one_minus_e));
}

double pdf(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  // z / x may overflow while e underflows; the product is then tiny.
  if (t.z > detail::kLogSpaceThreshold) return std::exp(log_pdf(p, x));
  // theta x^(-phi-1) = z / x
  return p.alpha() * p.phi() * (t.z / x) * t.e *
         std::exp((p.alpha() - 1.0) * t.log_one_minus_e);
}

double hazard(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  // f / (1-F) = alpha phi (z/x) e / (1 - e) = alpha phi (z/x) / expm1(z)
  const double ratio = t.z == 0.0 ? 1.0 : t.z / std::expm1(t.z);
  if (ratio == 0.0) return 0.0;
  return checked(p.alpha() * p.phi() * ratio / x, "hazard");
}

double reversed_hazard(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  if (t.one_minus_e == 0.0) return 0.0;
  const double g = detail::gamma(p.alpha(), t.e, t.log_one_minus_e);
  return checked(p.phi() * (t.z / x) * g, "reversed hazard");
}

double log_cdf(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  if (t.z > detail::kLogSpaceThreshold) {
    // 1 - (1-e)^alpha = alpha e (1 + O(e)) and e < 1e-304.
    return std::log(p.alpha()) - t.z;
  }
  const double log_s = p.alpha() * t.log_one_minus_e;
  // near F = 1 take log1p of the (accurate) survival instead
  if (log_s < -0.6931471805599453) return std::log1p(-std::exp(log_s));
  return std::log(-std::expm1(log_s));
}

double log_survival(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  return p.alpha() * t.log_one_minus_e;
}

double log_pdf(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  return std::log(p.alpha() * p.phi()) + t.log_z - std::log(x) - t.z +
         (p.alpha() - 1.0) * t.log_one_minus_e;
}

double log_hazard(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  // log expm1(z) = z + log(1 - e)
  const double log_expm1_z = t.z > 1.0    ? t.z + t.log_one_minus_e
                             : t.z < 1e-10 ? t.log_z + 0.5 * t.z
                                           : std::log(std::expm1(t.z));
  return std::log(p.alpha() * p.phi()) + t.log_z - std::log(x) - log_expm1_z;
}

double log_reversed_hazard(const EG2Params& p, double x) {
  const auto t = detail::terms(p, x);
  return std::log(p.phi()) + t.log_z - std::log(x) +
         detail::log_gamma(p.alpha(), t.e, t.log_one_minus_e);
}

double eta_kernel(const KernelArgs& k) {
  const auto s = split(k);
  return detail::eta(k.alpha(), s.one_minus_u, s.log_u);
}

double gamma_kernel(const KernelArgs& k) {
  const auto s = split(k);
  return detail::gamma(k.alpha(), s.one_minus_u, s.log_u);
}

double varphi_kernel(const KernelArgs& k, double cap) {
  const auto s = split(k);
  const double v = detail::varphi(k.alpha(), s.one_minus_u, s.log_u);
  if (!std::isfinite(v) || v > cap) {
    std::ostringstream msg;
    msg << "varphi kernel exceeds cap " << cap << " at alpha=" << k.alpha() << ", u=" << k.u();
    throw OverflowSignal(msg.str());
  }
  return v;
}

}  // namespace eg2
