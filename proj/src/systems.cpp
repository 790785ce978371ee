#include "eg2/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace eg2 {

namespace {

// Factors below this are multiplied in log space.
constexpr double kProductFloor = 1e-300;

void require_common(const ComponentSet& cs, const char* op) {
  if (!cs.has_common_theta_phi()) {
    throw ContractError(std::string(op) + " requires common theta and phi across components");
  }
}

template <class Value, class LogValue>
double product(const ComponentSet& cs, double x, Value value, LogValue log_value) {
  std::vector<double> factors;
  factors.reserve(cs.size());
  bool tiny = false;
  for (const auto& p : cs) {
    factors.push_back(value(p, x));
    tiny = tiny || factors.back() < kProductFloor;
  }
  if (!tiny) {
    double acc = 1.0;
    for (double f : factors) acc *= f;
    return acc;
  }
  double log_acc = 0.0;
  for (const auto& p : cs) log_acc += log_value(p, x);
  return std::exp(log_acc);
}

double sum_log_survival(const ComponentSet& cs, double x) {
  double acc = 0.0;
  for (const auto& p : cs) acc += log_survival(p, x);
  return acc;
}

double sum_log_cdf(const ComponentSet& cs, double x) {
  double acc = 0.0;
  for (const auto& p : cs) acc += log_cdf(p, x);
  return acc;
}

template <class LogTerm>
double log_sum(const ComponentSet& cs, double x, LogTerm log_term) {
  double acc = -INFINITY;
  for (const auto& p : cs) acc = detail::log_add(acc, log_term(p, x));
  return acc;
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  return kind == SystemKind::Series ? "series" : "parallel";
}

ComponentSet::ComponentSet(std::vector<EG2Params> components) : components_(std::move(components)) {
  if (components_.empty()) throw ContractError("component set must not be empty");
}

ComponentSet ComponentSet::from_rows(std::span<const double> alphas, std::span<const double> thetas,
                                     double phi) {
  if (alphas.size() != thetas.size()) {
    std::ostringstream msg;
    msg << "alpha row has " << alphas.size() << " entries but theta row has " << thetas.size();
    throw ContractError(msg.str());
  }
  std::vector<EG2Params> out;
  out.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) out.emplace_back(thetas[i], phi, alphas[i]);
  return ComponentSet(std::move(out));
}

bool ComponentSet::has_common_theta_phi() const noexcept {
  const auto& first = components_.front();
  return std::all_of(components_.begin(), components_.end(), [&](const EG2Params& p) {
    return p.theta() == first.theta() && p.phi() == first.phi();
  });
}

double ComponentSet::alpha_sum() const noexcept {
  double s = 0.0;
  for (const auto& p : components_) s += p.alpha();
  return s;
}

Probability series_survival(const ComponentSet& cs, double x) {
  return Probability(product(
      cs, x, [](const EG2Params& p, double t) { return survival(p, t).value(); },
      [](const EG2Params& p, double t) { return log_survival(p, t); }));
}

Probability parallel_cdf(const ComponentSet& cs, double x) {
  return Probability(product(
      cs, x, [](const EG2Params& p, double t) { return cdf(p, t).value(); },
      [](const EG2Params& p, double t) { return log_cdf(p, t); }));
}

double system_pdf(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Series) {
    const double s = series_survival(cs, x);
    if (s == 0.0) return std::exp(system_log_pdf(cs, kind, x));
    double rate = 0.0;
    for (const auto& p : cs) rate += hazard(p, x);
    return s * rate;
  }
  const double f = parallel_cdf(cs, x);
  if (f == 0.0) return std::exp(system_log_pdf(cs, kind, x));
  double rate = 0.0;
  for (const auto& p : cs) rate += reversed_hazard(p, x);
  return f * rate;
}

double parallel_reversed_hazard(const ComponentSet& cs, double x) {
  require_common(cs, "parallel_reversed_hazard");
  const auto t = detail::terms(cs[0], x);
  if (t.one_minus_e == 0.0) return 0.0;
  // e * varphi(a, 1 - e) = gamma(a, 1 - e), so the exponential factor cancels
  // against the 1/(1 - u) pole of varphi.
  double kernel_sum = 0.0;
  for (const auto& p : cs) {
    kernel_sum += detail::gamma(p.alpha(), t.e, t.log_one_minus_e);
  }
  const double v = cs[0].phi() * (t.z / x) * kernel_sum;
  if (!std::isfinite(v)) throw OverflowSignal("parallel reversed hazard is not representable");
  return v;
}

double series_pdf_homogeneous(const ComponentSet& cs, double x) {
  require_common(cs, "series_pdf_homogeneous");
  const double a = cs.alpha_sum();
  const auto t = detail::terms(cs[0], x);
  return a * cs[0].phi() * (t.z / x) * t.e * std::exp((a - 1.0) * t.log_one_minus_e);
}

double system_survival(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Series) return series_survival(cs, x);
  return -std::expm1(sum_log_cdf(cs, x));
}

double system_cdf(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Parallel) return parallel_cdf(cs, x);
  return -std::expm1(sum_log_survival(cs, x));
}

double system_log_survival(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Series) return sum_log_survival(cs, x);
  return std::log(-std::expm1(sum_log_cdf(cs, x)));
}

double system_log_cdf(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Parallel) return sum_log_cdf(cs, x);
  return std::log(-std::expm1(sum_log_survival(cs, x)));
}

double system_log_pdf(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Series) {
    return sum_log_survival(cs, x) +
           log_sum(cs, x, [](const EG2Params& p, double t) { return log_hazard(p, t); });
  }
  return sum_log_cdf(cs, x) +
         log_sum(cs, x, [](const EG2Params& p, double t) { return log_reversed_hazard(p, t); });
}

double system_hazard(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Series) {
    double rate = 0.0;
    for (const auto& p : cs) rate += hazard(p, x);
    return rate;
  }
  return std::exp(system_log_pdf(cs, kind, x) - system_log_survival(cs, kind, x));
}

double system_reversed_hazard(const ComponentSet& cs, SystemKind kind, double x) {
  if (kind == SystemKind::Parallel) {
    if (cs.has_common_theta_phi()) return parallel_reversed_hazard(cs, x);
    double rate = 0.0;
    for (const auto& p : cs) rate += reversed_hazard(p, x);
    return rate;
  }
  return std::exp(system_log_pdf(cs, kind, x) - system_log_cdf(cs, kind, x));
}

}  // namespace eg2
