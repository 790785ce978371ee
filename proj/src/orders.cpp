#include "eg2/orders.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

namespace eg2 {

namespace {

constexpr double kCompareRefineWidth = 1e-8;
constexpr double kCrossingRefineWidth = 1e-10;

struct Sample {
  double diff;       // > 0 favours the first system
  double threshold;  // |diff| <= threshold counts as a tie
  bool dead;
};

using Sampler = std::function<Sample(double)>;

int sign_of(const Sample& s) {
  if (s.diff > s.threshold) return 1;
  if (s.diff < -s.threshold) return -1;
  return 0;
}

// Shrinks [lo, hi] around a sign change of the raw difference, where the
// difference has sign `lo_sign` at lo and the opposite sign at hi.
Interval bisect(const Sampler& sample, double lo, double hi, int lo_sign, double rel_width) {
  while (hi - lo > rel_width * lo) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double d = sample(mid).diff;
    if (d * lo_sign > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

DominanceVerdict compare_pointwise(const Sampler& sample, const GridSpec& g, double rel_width) {
  const auto xs = g.points();
  double pos = 0.0;  // largest excess in favour of the first system
  double neg = 0.0;  // largest excess in favour of the second
  bool all_within = true;
  std::size_t compared = 0;
  std::vector<Interval> crossings;
  int last_sign = 0;
  double last_x = 0.0;
  for (double x : xs) {
    const Sample s = sample(x);
    if (s.dead) continue;
    ++compared;
    pos = std::max(pos, s.diff);
    neg = std::max(neg, -s.diff);
    const int sg = sign_of(s);
    if (sg == 0) continue;
    all_within = false;
    if (last_sign != 0 && sg != last_sign) {
      crossings.push_back(bisect(sample, last_x, x, last_sign, rel_width));
    }
    last_sign = sg;
    last_x = x;
  }

  DominanceVerdict v{Relation::Equal, {}, 0.0, g, compared};
  if (all_within) {
    v.max_violation = std::max(pos, neg);
  } else if (!crossings.empty()) {
    v.relation = Relation::Crossing;
    v.crossings = std::move(crossings);
    v.max_violation = std::min(pos, neg);
  } else if (last_sign > 0) {
    v.relation = Relation::FirstDominates;
    v.max_violation = neg;
  } else {
    v.relation = Relation::SecondDominates;
    v.max_violation = pos;
  }
  return v;
}

double scaled(double tol, double a, double b) {
  return tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Sampler st_sampler(const ComponentSet& a, const ComponentSet& b, SystemKind kind, double tol) {
  return [&a, &b, kind, tol](double x) {
    const double sa = system_survival(a, kind, x);
    const double sb = system_survival(b, kind, x);
    return Sample{sa - sb, tol, sa < kDeadTailLevel && sb < kDeadTailLevel};
  };
}

void require_grid_tol(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    std::ostringstream msg;
    msg << "tolerance must be finite and nonnegative, got " << tol;
    throw DomainError(msg.str());
  }
}

bool consistent(Relation strong, Relation weak) {
  switch (strong) {
    case Relation::FirstDominates:
    case Relation::SecondDominates:
      return weak == strong || weak == Relation::Equal;
    case Relation::Equal:
      return weak == Relation::Equal;
    default:
      return true;
  }
}

}  // namespace

std::string_view to_string(Spacing spacing) { return spacing == Spacing::Log ? "log" : "linear"; }

GridSpec::GridSpec(double x_min, double x_max, std::size_t count, Spacing spacing)
    : x_min_(x_min), x_max_(x_max), count_(count), spacing_(spacing) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min > 0.0) || !(x_min < x_max)) {
    std::ostringstream msg;
    msg << "grid needs 0 < x_min < x_max, got [" << x_min << ", " << x_max << "]";
    throw DomainError(msg.str());
  }
  if (count < 2) throw DomainError("grid needs at least 2 points");
}

GridSpec GridSpec::default_grid() { return GridSpec(1e-2, 1e2, 4096, Spacing::Log); }

std::vector<double> GridSpec::points() const {
  std::vector<double> xs(count_);
  const double last = static_cast<double>(count_ - 1);
  if (spacing_ == Spacing::Log) {
    const double l0 = std::log(x_min_);
    const double l1 = std::log(x_max_);
    for (std::size_t k = 0; k < count_; ++k) xs[k] = std::exp(l0 + (l1 - l0) * (k / last));
  } else {
    for (std::size_t k = 0; k < count_; ++k) xs[k] = x_min_ + (x_max_ - x_min_) * (k / last);
  }
  xs.front() = x_min_;
  xs.back() = x_max_;
  return xs;
}

GridSpec GridSpec::refined() const { return GridSpec(x_min_, x_max_, 2 * count_ - 1, spacing_); }

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::FirstDominates: return "FirstDominates";
    case Relation::SecondDominates: return "SecondDominates";
    case Relation::Equal: return "Equal";
    case Relation::Crossing: return "Crossing";
    case Relation::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Relation mirrored(Relation r) {
  if (r == Relation::FirstDominates) return Relation::SecondDominates;
  if (r == Relation::SecondDominates) return Relation::FirstDominates;
  return r;
}

std::string_view to_string(SchurClass c) {
  switch (c) {
    case SchurClass::ConvexEvidence: return "ConvexEvidence";
    case SchurClass::ConcaveEvidence: return "ConcaveEvidence";
    case SchurClass::Neither: return "Neither";
    case SchurClass::Both: return "Both";
  }
  return "?";
}

DominanceVerdict compare_st(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g, double tol) {
  require_grid_tol(tol);
  return compare_pointwise(st_sampler(a, b, kind, tol), g, kCompareRefineWidth);
}

DominanceVerdict compare_fr(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g, double tol) {
  require_grid_tol(tol);
  const Sampler sample = [&a, &b, kind, tol](double x) {
    const bool dead = system_survival(a, kind, x) < kDeadTailLevel &&
                      system_survival(b, kind, x) < kDeadTailLevel;
    if (dead) return Sample{0.0, 0.0, true};
    const double ha = system_hazard(a, kind, x);
    const double hb = system_hazard(b, kind, x);
    return Sample{hb - ha, scaled(tol, ha, hb), false};
  };
  return compare_pointwise(sample, g, kCompareRefineWidth);
}

DominanceVerdict compare_rf(const ComponentSet& a, const ComponentSet& b, const GridSpec& g,
                            double tol) {
  return compare_rf(a, b, SystemKind::Parallel, g, tol);
}

DominanceVerdict compare_rf(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g, double tol) {
  require_grid_tol(tol);
  const Sampler sample = [&a, &b, kind, tol](double x) {
    const bool dead =
        system_cdf(a, kind, x) < kDeadTailLevel && system_cdf(b, kind, x) < kDeadTailLevel;
    if (dead) return Sample{0.0, 0.0, true};
    const double ra = system_reversed_hazard(a, kind, x);
    const double rb = system_reversed_hazard(b, kind, x);
    return Sample{ra - rb, scaled(tol, ra, rb), false};
  };
  return compare_pointwise(sample, g, kCompareRefineWidth);
}

DominanceVerdict compare_lr(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                            const GridSpec& g, double tol) {
  require_grid_tol(tol);
  const double dead_level = std::log(DBL_MIN);
  std::vector<double> xs;
  std::vector<double> ratio;  // log f_A - log f_B
  for (double x : g.points()) {
    const double la = system_log_pdf(a, kind, x);
    const double lb = system_log_pdf(b, kind, x);
    if (!std::isfinite(la) || !std::isfinite(lb)) {
      std::ostringstream msg;
      msg << "density ratio undefined at x=" << x << " (log densities " << la << ", " << lb << ")";
      throw DomainError(msg.str());
    }
    if (la < dead_level && lb < dead_level) continue;
    xs.push_back(x);
    ratio.push_back(la - lb);
  }

  DominanceVerdict v{Relation::Equal, {}, 0.0, g, xs.size()};
  if (ratio.size() < 2) return v;

  const auto [lo_it, hi_it] = std::minmax_element(ratio.begin(), ratio.end());
  const double spread = *hi_it - *lo_it;
  const double flat_tol = tol * std::max({1.0, std::abs(*lo_it), std::abs(*hi_it)});
  if (spread <= flat_tol) {
    v.max_violation = spread;
    return v;
  }

  double rise = 0.0;  // largest increase of the log ratio between neighbours
  double fall = 0.0;  // largest decrease
  int last_sign = 0;
  std::size_t last_k = 0;
  std::vector<Interval> turns;
  for (std::size_t k = 0; k + 1 < ratio.size(); ++k) {
    const double d = ratio[k + 1] - ratio[k];
    rise = std::max(rise, d);
    fall = std::max(fall, -d);
    const double thr = tol * std::max({1.0, std::abs(ratio[k]), std::abs(ratio[k + 1])});
    const int sg = d > thr ? 1 : (d < -thr ? -1 : 0);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) turns.push_back({xs[last_k], xs[k + 1]});
    last_sign = sg;
    last_k = k;
  }
  if (turns.empty()) {
    v.relation = last_sign >= 0 ? Relation::FirstDominates : Relation::SecondDominates;
    v.max_violation = last_sign >= 0 ? fall : rise;
  } else {
    v.relation = turns.size() == 1 ? Relation::Crossing : Relation::Inconclusive;
    if (v.relation == Relation::Crossing) v.crossings = std::move(turns);
    v.max_violation = std::min(rise, fall);
  }
  return v;
}

AuditReport implication_audit(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                              const GridSpec& g, double tol) {
  AuditReport r{compare_lr(a, b, kind, g, tol), compare_rf(a, b, kind, g, tol),
                compare_fr(a, b, kind, g, tol), compare_st(a, b, kind, g, tol), {}};
  const auto check = [&r](const char* strong_name, const DominanceVerdict& strong,
                          const char* weak_name, const DominanceVerdict& weak) {
    if (consistent(strong.relation, weak.relation)) return;
    std::ostringstream msg;
    msg << strong_name << " " << to_string(strong.relation) << " but " << weak_name << " "
        << to_string(weak.relation);
    r.flags.push_back(msg.str());
  };
  check("lr", r.lr, "rf", r.rf);
  check("lr", r.lr, "fr", r.fr);
  check("rf", r.rf, "st", r.st);
  check("fr", r.fr, "st", r.st);
  return r;
}

SchurEvidence schur_pair_condition(const ParamFunctional& f, const RealVector& z, double x,
                                   double h) {
  const std::size_t n = z.size();
  if (n < 2) throw ContractError("Schur pair condition needs at least two coordinates");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  std::vector<double> point(z.entries().begin(), z.entries().end());
  std::vector<double> grad(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = h * std::max(1.0, std::abs(point[i]));
    const double saved = point[i];
    point[i] = saved + step;
    const double up = f(point, x);
    point[i] = saved - step;
    const double down = f(point, x);
    point[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double prod = (point[i] - point[j]) * (grad[i] - grad[j]);
      lo = std::min(lo, prod);
      hi = std::max(hi, prod);
    }
  }
  const bool convex = lo >= -kSchurTolerance;
  const bool concave = hi <= kSchurTolerance;
  SchurClass c = SchurClass::Neither;
  if (convex && concave) {
    c = SchurClass::Both;
  } else if (convex) {
    c = SchurClass::ConvexEvidence;
  } else if (concave) {
    c = SchurClass::ConcaveEvidence;
  }
  return {lo, hi, c};
}

double theorem26_condition(const ParamMatrix& a, SystemKind kind, double phi, double x, double h) {
  if (a.cols() != 2) throw ContractError("two-column condition needs a 2x2 parameter matrix");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  // entries[r * 2 + c]: row 0 alpha, row 1 theta.
  std::vector<double> entries = {a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1)};
  const auto psi = [&](const std::vector<double>& e) {
    const auto cs = ComponentSet({EG2Params(e[2], phi, e[0]), EG2Params(e[3], phi, e[1])});
    return kind == SystemKind::Series ? series_survival(cs, x).value() : parallel_cdf(cs, x).value();
  };
  std::vector<double> grad(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double saved = entries[k];
    const double step = std::min(h * std::max(1.0, std::abs(saved)), 0.5 * saved);
    entries[k] = saved + step;
    const double up = psi(entries);
    entries[k] = saved - step;
    const double down = psi(entries);
    entries[k] = saved;
    grad[k] = (up - down) / (2.0 * step);
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    sum += (entries[r * 2 + 1] - entries[r * 2]) * (grad[r * 2 + 1] - grad[r * 2]);
  }
  return sum;
}

std::vector<double> find_crossings(const ComponentSet& a, const ComponentSet& b, SystemKind kind,
                                   const GridSpec& g, double tol) {
  require_grid_tol(tol);
  const auto verdict = compare_pointwise(st_sampler(a, b, kind, tol), g, kCrossingRefineWidth);
  std::vector<double> out;
  for (const auto& c : verdict.crossings) out.push_back(0.5 * (c.lo + c.hi));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eg2
