#include <doctest.h>

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "eg2/systems.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace eg2;
using doctest::Approx;

namespace {

ComponentSet random_set(gen::Rng& rng, std::size_t n, bool common) {
  const double theta = gen::log_uniform(rng, 0.1, 10.0);
  const double phi = gen::log_uniform(rng, 0.3, 4.0);
  std::vector<EG2Params> cs;
  for (std::size_t i = 0; i < n; ++i) {
    cs.emplace_back(common ? theta : gen::log_uniform(rng, 0.1, 10.0),
                    common ? phi : gen::log_uniform(rng, 0.3, 4.0), gen::log_uniform(rng, 0.1, 8.0));
  }
  return ComponentSet(std::move(cs));
}

double total_mass(const ComponentSet& cs, SystemKind kind) {
  // x = (1 - t) / t maps (0, 1) onto (0, inf)
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto integrand = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double x = (1.0 - t) / t;
    return std::exp(system_log_pdf(cs, kind, x) - 2.0 * std::log(t));
  };
  return integrator.integrate(integrand, 0.0, 1.0);
}

}  // namespace

TEST_CASE("component set construction") {
  CHECK_THROWS_AS(ComponentSet({}), ContractError);
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> t{1.0};
  CHECK_THROWS_AS(ComponentSet::from_rows(a, t, 2.0), ContractError);
  const std::vector<double> t2{3.0, 3.0};
  const auto cs = ComponentSet::from_rows(a, t2, 2.0);
  CHECK(cs.size() == 2);
  CHECK(cs[1] == EG2Params(3.0, 2.0, 2.0));
  CHECK(cs.has_common_theta_phi());
  CHECK(cs.alpha_sum() == 3.0);
  CHECK_FALSE(ComponentSet({EG2Params(1, 1, 1), EG2Params(1, 2, 1)}).has_common_theta_phi());
}

TEST_CASE("single component reduces to the component") {
  const EG2Params p(1.7, 2.0, 0.54);
  const ComponentSet one({p});
  for (double x : {0.3, 1.0, 1.5, 7.0}) {
    CHECK(series_survival(one, x).value() == survival(p, x).value());
    CHECK(parallel_cdf(one, x).value() == cdf(p, x).value());
    CHECK(system_pdf(one, SystemKind::Series, x) == Approx(pdf(p, x)).epsilon(1e-13));
    CHECK(system_pdf(one, SystemKind::Parallel, x) == Approx(pdf(p, x)).epsilon(1e-13));
    CHECK(parallel_reversed_hazard(one, x) == Approx(reversed_hazard(p, x)).epsilon(1e-13));
    CHECK(series_pdf_homogeneous(one, x) == Approx(pdf(p, x)).epsilon(1e-13));
  }
}

TEST_CASE("frozen system values") {
  const std::vector<double> a{0.54, 0.66}, t{1.7, 1.4};
  CHECK(series_survival(ComponentSet::from_rows(a, t, 2.0), 1.0).value() ==
        Approx(0.74392439179128480).epsilon(1e-14));
  const std::vector<double> a0{0.5, 0.7}, t0{1.8, 1.3};
  CHECK(series_survival(ComponentSet::from_rows(a0, t0, 2.0), 1.0).value() ==
        Approx(0.73119852801866394).epsilon(1e-14));

  const std::vector<double> b{2.34, 2.26}, u{1.32, 1.38};
  CHECK(parallel_cdf(ComponentSet::from_rows(b, u, 2.0), 1.0).value() ==
        Approx(0.24831634259268675).epsilon(1e-14));
  const std::vector<double> b0{2.1, 2.5}, u0{1.5, 1.2};
  CHECK(parallel_cdf(ComponentSet::from_rows(b0, u0, 2.0), 1.0).value() ==
        Approx(0.24353077100177091).epsilon(1e-14));

  const ComponentSet r({EG2Params(1, 1, 3), EG2Params(1, 1, 1), EG2Params(1, 1, 1)});
  CHECK(parallel_reversed_hazard(r, 2.0) == Approx(0.57499485344738658).epsilon(1e-14));

  const ComponentSet h({EG2Params(1.7, 2.0, 0.54), EG2Params(1.7, 2.0, 0.66)});
  CHECK(series_pdf_homogeneous(h, 1.5) == Approx(0.50020609950784716).epsilon(1e-13));
  CHECK(series_pdf_homogeneous(h, 1.5) == Approx(pdf(EG2Params(1.7, 2.0, 1.2), 1.5)).epsilon(1e-12));

  const ComponentSet fig({EG2Params(5, 0.1, 2), EG2Params(5, 1.14, 2), EG2Params(5, 0.3, 2)});
  CHECK(system_pdf(fig, SystemKind::Parallel, 1.0) == Approx(1.8590716747231703e-05).epsilon(1e-11));
}

TEST_CASE("identical components and closed forms") {
  const EG2Params p(2.0, 1.3, 0.8);
  const ComponentSet twice({p, p});
  for (double x : {0.2, 1.0, 4.0}) {
    CHECK(parallel_cdf(twice, x).value() == Approx(std::pow(cdf(p, x).value(), 2)).epsilon(1e-14));
  }
  // common theta, phi: alpha enters only through its sum
  const ComponentSet c({EG2Params(1, 1, 1), EG2Params(1, 1, 2)});
  for (double x : {0.5, 1.0, 3.0}) {
    const double e = std::exp(-1.0 / x);
    const double closed = std::pow(x, -2.0) * e * 3.0 * std::pow(1.0 - e, 2.0);
    CHECK(system_pdf(c, SystemKind::Series, x) == Approx(closed).epsilon(1e-13));
    CHECK(series_survival(c, x).value() == Approx(std::pow(1.0 - e, 3.0)).epsilon(1e-14));
  }
  CHECK(series_pdf_homogeneous(ComponentSet({EG2Params(1, 1, 1), EG2Params(1, 1, 1)}), 0.8) ==
        Approx(pdf(EG2Params(1, 1, 2), 0.8)).epsilon(1e-14));
}

TEST_CASE("closed forms require common theta and phi") {
  const ComponentSet mixed({EG2Params(1, 1, 1), EG2Params(2, 1, 1)});
  CHECK_THROWS_AS(parallel_reversed_hazard(mixed, 1.0), ContractError);
  CHECK_THROWS_AS(series_pdf_homogeneous(mixed, 1.0), ContractError);
  CHECK_THROWS_AS(series_survival(mixed, 0.0), DomainError);
}

TEST_CASE("random systems: products, additivity, density") {
  gen::Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = gen::index(rng, 1, 6);
    const auto cs = random_set(rng, n, k % 2 == 0);
    const double x = gen::log_uniform(rng, 0.2, 20.0);
    double s_prod = 1.0, c_prod = 1.0, s_min = 1.0, c_min = 1.0;
    for (const auto& p : cs) {
      s_prod *= survival(p, x);
      c_prod *= cdf(p, x);
      s_min = std::min(s_min, survival(p, x).value());
      c_min = std::min(c_min, cdf(p, x).value());
    }
    CHECK(std::abs(series_survival(cs, x) - s_prod) <= 1e-12);
    CHECK(std::abs(parallel_cdf(cs, x) - c_prod) <= 1e-12);
    CHECK(series_survival(cs, x).value() <= s_min);
    CHECK(parallel_cdf(cs, x).value() <= c_min);

    // density against a central difference of whichever of F, 1 - F is smaller
    for (auto kind : {SystemKind::Series, SystemKind::Parallel}) {
      const double h = x * 1e-6;
      const double fd = system_cdf(cs, kind, x) < 0.5
                            ? (system_cdf(cs, kind, x + h) - system_cdf(cs, kind, x - h)) / (2.0 * h)
                            : (system_survival(cs, kind, x - h) - system_survival(cs, kind, x + h)) / (2.0 * h);
      const double f = system_pdf(cs, kind, x);
      INFO(to_string(kind) << " x=" << x << " f=" << f << " F=" << system_cdf(cs, kind, x));
      if (f > 1e-8) CHECK(std::abs(f - fd) / f < 1e-6);
    }

    if (cs.has_common_theta_phi()) {
      std::vector<double> alphas;
      for (const auto& p : cs) alphas.push_back(p.alpha());
      const double want = oracle::parallel_reversed_hazard(cs[0].theta(), cs[0].phi(), alphas, x);
      double sum = 0.0;
      for (const auto& p : cs) sum += reversed_hazard(p, x);
      if (want > 1e-250) {
        CHECK(std::abs(parallel_reversed_hazard(cs, x) - want) / want < 1e-11);
        CHECK(std::abs(parallel_reversed_hazard(cs, x) - sum) <= 1e-12 * std::max(1.0, sum));
      }
      CHECK(series_pdf_homogeneous(cs, x) ==
            Approx(system_pdf(cs, SystemKind::Series, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("component order does not matter") {
  gen::Rng rng(22);
  for (int k = 0; k < 50; ++k) {
    const auto cs = random_set(rng, 4, false);
    std::vector<EG2Params> shuffled(cs.begin(), cs.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const ComponentSet perm(shuffled);
    const double x = gen::log_uniform(rng, 0.1, 10.0);
    CHECK(series_survival(perm, x).value() == Approx(series_survival(cs, x).value()).epsilon(1e-14));
    CHECK(parallel_cdf(perm, x).value() == Approx(parallel_cdf(cs, x).value()).epsilon(1e-14));
  }
}

TEST_CASE("equal alpha sums give equal series survival") {
  gen::Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = gen::index(rng, 2, 6);
    const double theta = gen::log_uniform(rng, 0.1, 10.0);
    const double phi = gen::log_uniform(rng, 0.2, 4.0);
    const auto a = gen::vector(rng, n, 0.1, 5.0);
    const auto b = gen::smoothed(rng, a, 4);
    std::vector<double> thetas(n, theta);
    const auto A = ComponentSet::from_rows(a, thetas, phi);
    const auto B = ComponentSet::from_rows(b, thetas, phi);
    for (double x : {0.05, 0.5, 1.0, 5.0, 50.0}) {
      CHECK(std::abs(series_survival(A, x) - series_survival(B, x)) <= 1e-12);
    }
  }
}

TEST_CASE("densities integrate to one") {
  gen::Rng rng(24);
  for (int k = 0; k < 10; ++k) {
    const auto cs = random_set(rng, gen::index(rng, 1, 4), k % 2 == 0);
    CHECK(total_mass(cs, SystemKind::Series) == Approx(1.0).epsilon(1e-5));
    CHECK(total_mass(cs, SystemKind::Parallel) == Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("deep tails stay finite through log-space products") {
  const ComponentSet cs({EG2Params(3.0, 2.0, 5.0), EG2Params(4.0, 2.0, 7.0)});
  // each cdf underflows at x = 0.05
  CHECK(parallel_cdf(cs, 0.05).value() == 0.0);
  CHECK(std::isfinite(system_log_cdf(cs, SystemKind::Parallel, 0.05)));
  CHECK(system_log_cdf(cs, SystemKind::Parallel, 0.05) ==
        Approx(log_cdf(cs[0], 0.05) + log_cdf(cs[1], 0.05)).epsilon(1e-15));
  CHECK(std::isfinite(system_log_pdf(cs, SystemKind::Parallel, 0.05)));
  CHECK(system_reversed_hazard(cs, SystemKind::Parallel, 0.05) ==
        Approx(reversed_hazard(cs[0], 0.05) + reversed_hazard(cs[1], 0.05)).epsilon(1e-13));
  // one factor below the log-space floor, the product still representable
  const ComponentSet tails({EG2Params(1.0, 1.0, 1.0), EG2Params(1e-3, 1.0, 1.0)});
  const double x = 1.0 / 700.0;
  CHECK(parallel_cdf(tails, x).value() == Approx(std::exp(-700.7)).epsilon(1e-10));
}
