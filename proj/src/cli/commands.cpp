#include "eg2/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace eg2::cli {

namespace {

using nlohmann::json;

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string describe(const GridSpec& g) {
  std::ostringstream s;
  s << to_string(g.spacing()) << " [" << format_number(g.x_min()) << ", "
    << format_number(g.x_max()) << "] x " << g.count();
  return s.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double guarded(const std::function<double()>& f) {
  try {
    return f();
  } catch (const OverflowSignal&) {
    return INFINITY;
  }
}

DominanceVerdict run_order(const Scenario& s) {
  const auto& a = s.a.components;
  const auto& b = s.b.components;
  switch (s.order) {
    case Order::St: return compare_st(a, b, s.kind, s.grid, s.tolerance);
    case Order::Fr: return compare_fr(a, b, s.kind, s.grid, s.tolerance);
    case Order::Rf: return compare_rf(a, b, s.kind, s.grid, s.tolerance);
    case Order::Lr: return compare_lr(a, b, s.kind, s.grid, s.tolerance);
  }
  throw std::logic_error("unhandled order");
}

bool conclusive(Relation r) {
  return r == Relation::FirstDominates || r == Relation::SecondDominates || r == Relation::Equal;
}

void write_csv_file(const std::string& path, const ComponentSet& a, const ComponentSet& b,
                    SystemKind kind, const GridSpec& g) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  write_grid_csv(f, a, b, kind, g);
}

void write_record(const std::string& path, const std::string& digest_hex, const DominanceVerdict& v,
                  const std::vector<double>& crossing_points) {
  json crossings = json::array();
  for (const auto& c : v.crossings) crossings.push_back({{"lo", c.lo}, {"hi", c.hi}});
  json record = {{"digest", digest_hex},
                 {"verdict", std::string(to_string(v.relation))},
                 {"max_violation", v.max_violation},
                 {"crossings", crossings},
                 {"timestamp", utc_timestamp()},
                 {"version", kToolVersion}};
  if (!crossing_points.empty()) record["crossing_points"] = crossing_points;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << record.dump(2) << '\n';
}

void print_verdict(std::ostream& out, const Scenario& s, const DominanceVerdict& v) {
  out << "verdict          " << to_string(v.relation);
  const auto st = statement(v.relation, s.order, s.a, s.b, s.kind);
  if (!st.empty()) out << " (" << st << ")";
  out << '\n';
  out << "max violation    " << format_number(v.max_violation) << '\n';
  out << "points compared  " << v.points_compared << " of " << v.grid_used.count() << '\n';
  for (const auto& c : v.crossings) {
    out << "crossing in      [" << format_number(c.lo) << ", " << format_number(c.hi) << "]\n";
  }
}

template <class Body>
int guard(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInput;
}

ComponentSet rows(const ParamMatrix& m, double phi) {
  return ComponentSet::from_rows(m.alphas(), m.thetas(), phi);
}

std::string matrix_text(const ParamMatrix& m) {
  std::ostringstream s;
  s << '[';
  for (std::size_t r = 0; r < 2; ++r) {
    s << (r ? "; " : "");
    for (std::size_t c = 0; c < m.cols(); ++c) s << (c ? " " : "") << format_number(m.at(r, c));
  }
  s << ']';
  return s.str();
}

// A 2 x 2 pair related by one T-transform, checked the same way for 3.3 and 3.4.
struct ChainExample {
  ParamMatrix x;
  double w;
  ParamMatrix x_star;
  ParamSet set;
  SystemKind kind;
  Relation expected;
};

int reproduce_chain_example(const ChainExample& ex, const CommonOptions& opt, std::ostream& out) {
  constexpr double phi = 2.0;
  const std::vector<TTransform> ts{TTransform(2, 0, 1, ex.w)};
  const auto product = apply_transforms(ex.x, ts);
  const double product_err = max_abs_difference(product, ex.x_star);
  const bool x_in = is_member(ex.x, ex.set);
  const bool xs_in = is_member(ex.x_star, ex.set);
  const auto w = recover_t_transform_2x2(ex.x, ex.x_star);

  Scenario s{{"X", rows(ex.x, phi)}, {"X*", rows(ex.x_star, phi)}, ex.kind, Order::St,
             GridSpec::default_grid(), kDefaultTolerance};
  s = with_overrides(s, opt.grid);
  const auto v = compare_st(s.a.components, s.b.components, s.kind, s.grid, s.tolerance);

  const std::string set_name = std::string(to_string(ex.set)) + "_2";
  out << "X   = " << matrix_text(ex.x) << "  (rows alpha; theta)\n";
  out << "X*  = " << matrix_text(ex.x_star) << '\n';
  out << "phi = " << format_number(phi) << " (common inner shape; not fixed by the example)\n";
  out << "grid " << describe(s.grid) << ", tol " << format_number(s.tolerance) << "\n\n";

  bool ok = true;
  auto line = [&](bool passed, const std::string& what) {
    ok = ok && passed;
    out << "  " << pass(passed) << "  " << what << '\n';
  };
  line(product_err < 1e-12, "X T_w = X*, w = " + format_number(ex.w) +
                                ", max entry error " + format_number(product_err));
  line(x_in, "X in " + set_name);
  line(xs_in, "X* in " + set_name);
  line(w.has_value() && std::abs(*w - ex.w) <= 1e-10,
       "recovered w = " + (w ? format_number(*w) : std::string("none")));
  const auto expected_text = statement(ex.expected, Order::St, s.a, s.b, s.kind);
  line(v.relation == ex.expected && v.max_violation < 1e-10 && v.crossings.empty(),
       "compare_st: " + std::string(to_string(v.relation)) + ", expected " + expected_text +
           ", max violation " + format_number(v.max_violation));
  out << '\n';
  out << "note: X is the chain-majorizing matrix and X* = X T_w; labels bound the other\n"
         "way round reverse the direction of the statement.\n";
  if (opt.csv_path) write_csv_file(*opt.csv_path, s.a.components, s.b.components, s.kind, s.grid);
  return ok ? kExitOk : kExitInconclusive;
}

int reproduce_crossing(const CommonOptions& opt, std::ostream& out) {
  const std::vector<double> phi{0.1, 1.14, 0.3};
  const std::vector<double> phi_star{0.6, 0.9, 0.04};
  std::vector<EG2Params> x, xs;
  for (double f : phi) x.emplace_back(5.0, f, 2.0);
  for (double f : phi_star) xs.emplace_back(5.0, f, 2.0);
  Scenario s{{"X", ComponentSet(x)}, {"X*", ComponentSet(xs)}, SystemKind::Parallel, Order::St,
             GridSpec::default_grid(), kDefaultTolerance};
  s = with_overrides(s, opt.grid);

  out << "parallel systems, theta = 5, alpha = 2\n";
  out << "phi  = (0.1, 1.14, 0.3)\nphi* = (0.6, 0.9, 0.04)\n";
  out << "grid " << describe(s.grid) << ", tol " << format_number(s.tolerance) << "\n\n";

  // prefix sums of the sorted vectors
  auto prefix = [](std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    for (std::size_t i = 1; i < v.size(); ++i) v[i] += v[i - 1];
    return v;
  };
  const auto pp = prefix(phi);
  const auto ps = prefix(phi_star);
  const bool maj = majorizes(RealVector(phi), RealVector(phi_star));
  out << "  " << pass(maj) << "  phi majorizes phi*: prefix sums";
  for (std::size_t k = 0; k < pp.size(); ++k) {
    out << (k ? "," : "") << " k=" << k + 1 << ": " << format_number(pp[k]) << " vs "
        << format_number(ps[k]);
  }
  out << '\n';

  const auto xs_found = find_crossings(s.a.components, s.b.components, s.kind, s.grid, s.tolerance);
  out << "  " << pass(!xs_found.empty()) << "  survival curves cross: " << xs_found.size()
      << " crossing(s)\n";
  for (double c : xs_found) {
    const double below = system_survival(s.a.components, s.kind, c * 0.99) -
                         system_survival(s.b.components, s.kind, c * 0.99);
    const double above = system_survival(s.a.components, s.kind, c * 1.01) -
                         system_survival(s.b.components, s.kind, c * 1.01);
    out << "        x = " << format_number(c) << "  (Fbar_X - Fbar_X* is " << format_number(below)
        << " at 0.99x, " << format_number(above) << " at 1.01x)\n";
  }
  out << '\n';
  out << "note: neither shape vector majorizes the other (the second prefix sums are in the\n"
         "wrong order); the crossing itself does not depend on that claim.\n";
  if (opt.csv_path) {
    write_csv_file(*opt.csv_path, s.a.components, s.b.components, s.kind, s.grid);
    out << "grid table written to " << *opt.csv_path << '\n';
  }
  return kExitInconclusive;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string order_statistic(const std::string& label, SystemKind kind, std::size_t n) {
  const std::string nn = std::to_string(n);
  return label + "_{" + (kind == SystemKind::Series ? "1" : nn) + ":" + nn + "}";
}

std::string statement(Relation r, Order order, const NamedSystem& a, const NamedSystem& b,
                      SystemKind kind) {
  std::string op;
  switch (r) {
    case Relation::FirstDominates: op = "≥"; break;
    case Relation::SecondDominates: op = "≤"; break;
    case Relation::Equal: op = "="; break;
    default: return {};
  }
  return order_statistic(a.label, kind, a.components.size()) + " " + op + "_" +
         std::string(to_string(order)) + " " + order_statistic(b.label, kind, b.components.size());
}

void write_grid_csv(std::ostream& os, const ComponentSet& a, const ComponentSet& b,
                    SystemKind kind, const GridSpec& g) {
  os << "x,F_A,Fbar_A,f_A,rhaz_A,F_B,Fbar_B,f_B,rhaz_B,diff_surv\n";
  for (double x : g.points()) {
    const double sa = system_survival(a, kind, x);
    const double sb = system_survival(b, kind, x);
    const double cols[] = {
        x,
        system_cdf(a, kind, x),
        sa,
        system_pdf(a, kind, x),
        guarded([&] { return system_reversed_hazard(a, kind, x); }),
        system_cdf(b, kind, x),
        sb,
        system_pdf(b, kind, x),
        guarded([&] { return system_reversed_hazard(b, kind, x); }),
        sa - sb,
    };
    for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << format_number(cols[i]);
    os << '\n';
  }
}

int cmd_compare(const std::string& path, const CommonOptions& opt, std::ostream& out,
                std::ostream& err) {
  return guard(err, [&] {
    const auto s = with_overrides(load_scenario(path), opt.grid);
    if (opt.dump_normalized) {
      out << normalized(s).dump(2) << '\n';
      return kExitOk;
    }
    const auto v = run_order(s);
    const auto dig = digest(s);
    out << "scenario         " << dig << '\n';
    out << "systems          " << to_string(s.kind) << ", A = " << s.a.label << " ("
        << s.a.components.size() << "), B = " << s.b.label << " (" << s.b.components.size()
        << ")\n";
    out << "order            " << to_string(s.order) << '\n';
    out << "grid             " << describe(s.grid) << ", tol " << format_number(s.tolerance) << '\n';
    print_verdict(out, s, v);
    if (opt.csv_path) write_csv_file(*opt.csv_path, s.a.components, s.b.components, s.kind, s.grid);
    if (opt.record_path) write_record(*opt.record_path, dig, v, {});
    return conclusive(v.relation) ? kExitOk : kExitInconclusive;
  });
}

int cmd_crossings(const std::string& path, const CommonOptions& opt, std::ostream& out,
                  std::ostream& err) {
  return guard(err, [&] {
    const auto s = with_overrides(load_scenario(path), opt.grid);
    if (opt.dump_normalized) {
      out << normalized(s).dump(2) << '\n';
      return kExitOk;
    }
    const auto xs = find_crossings(s.a.components, s.b.components, s.kind, s.grid, s.tolerance);
    out << "scenario  " << digest(s) << '\n';
    out << "grid      " << describe(s.grid) << ", tol " << format_number(s.tolerance) << '\n';
    out << "survival crossings: " << xs.size() << '\n';
    for (double x : xs) out << format_number(x) << '\n';
    if (opt.csv_path) write_csv_file(*opt.csv_path, s.a.components, s.b.components, s.kind, s.grid);
    if (opt.record_path) {
      auto v = compare_st(s.a.components, s.b.components, s.kind, s.grid, s.tolerance);
      write_record(*opt.record_path, digest(s), v, xs);
    }
    return kExitOk;
  });
}

int cmd_reproduce(const std::string& id, const CommonOptions& opt, std::ostream& out,
                  std::ostream& err) {
  return guard(err, [&]() -> int {
    if (id == "3.3") {
      out << "3.3: series systems, chain majorization in S_2\n\n";
      return reproduce_chain_example({ParamMatrix({0.5, 0.7}, {1.8, 1.3}), 0.8,
                                      ParamMatrix({0.54, 0.66}, {1.7, 1.4}), ParamSet::S,
                                      SystemKind::Series, Relation::SecondDominates},
                                     opt, out);
    }
    if (id == "3.4") {
      out << "3.4: parallel systems, chain majorization in T_2\n\n";
      const int rc = reproduce_chain_example({ParamMatrix({2.1, 2.5}, {1.5, 1.2}), 0.4,
                                              ParamMatrix({2.34, 2.26}, {1.32, 1.38}), ParamSet::T,
                                              SystemKind::Parallel, Relation::FirstDominates},
                                             opt, out);
      out << "note: the transform matrix [0.4 0.6; 0.6 0.4] is w I + (1 - w) Pi with w = 0.4\n"
             "(weight of the identity, not of the swap).\n";
      return rc;
    }
    if (id == "3.11") {
      out << "3.11: parallel systems with heterogeneous inner shapes\n\n";
      return reproduce_crossing(opt, out);
    }
    throw InputError("unknown reproduction id \"" + id + "\" (expected 3.3, 3.4 or 3.11)");
  });
}

int cmd_chain(const std::string& path, const CommonOptions& opt, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&] {
    const auto c = load_chain(path);
    const auto rep = verify_chain_path(c.matrix, c.transforms, c.set);
    const auto set_name = std::string(to_string(c.set)) + "_" + std::to_string(c.matrix.cols());
    out << "A = " << matrix_text(rep.initial) << "  (rows alpha; theta), in " << set_name << ": "
        << (rep.initial_member ? "yes" : "no") << '\n';
    if (rep.steps.empty()) {
      out << "no transforms; nothing to conclude\n";
      return kExitOk;
    }
    for (std::size_t k = 0; k < rep.steps.size(); ++k) {
      const auto& st = rep.steps[k];
      out << "step " << k + 1 << ": T(" << st.transform.i() + 1 << "," << st.transform.j() + 1
          << "; w=" << format_number(st.transform.weight()) << ") -> " << matrix_text(st.matrix)
          << ", in " << set_name << ": " << (st.member ? "yes" : "no")
          << (k + 1 == rep.steps.size() ? " (final, not required)" : "") << '\n';
    }
    out << "same structure: " << (rep.same_structure ? "yes" : "no") << '\n';
    out << "membership hypothesis: " << (rep.all_members ? "holds" : "fails");
    if (rep.first_failure) out << " (first failure after " << *rep.first_failure << " transform(s))";
    out << '\n';

    // Same-structure chains only need the starting matrix in the set.
    const bool hypothesis = rep.initial_member && (rep.all_members || rep.same_structure);
    const auto kind = c.set == ParamSet::S ? SystemKind::Series : SystemKind::Parallel;
    const Relation claimed = c.set == ParamSet::S ? Relation::SecondDominates : Relation::FirstDominates;
    const NamedSystem x{c.label, rows(rep.initial, c.phi)};
    const NamedSystem xs{c.label_star, rows(rep.final_matrix, c.phi)};
    if (!hypothesis) {
      out << "conclusion withheld\n";
      return kExitInconclusive;
    }
    out << "conclusion: " << statement(claimed, Order::St, x, xs, kind) << '\n';

    Scenario s{x, xs, kind, Order::St, GridSpec::default_grid(), kDefaultTolerance};
    s = with_overrides(s, opt.grid);
    const auto v = compare_st(s.a.components, s.b.components, kind, s.grid, s.tolerance);
    out << "grid check (phi = " << format_number(c.phi) << ", " << describe(s.grid)
        << "): " << to_string(v.relation) << ", max violation " << format_number(v.max_violation)
        << '\n';
    if (opt.csv_path) write_csv_file(*opt.csv_path, s.a.components, s.b.components, kind, s.grid);
    const bool agrees = v.relation == claimed || v.relation == Relation::Equal;
    return agrees ? kExitOk : kExitInconclusive;
  });
}

int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    const EG2Params p(req.theta, req.phi, req.alpha);
    if (req.xs.empty()) throw InputError("no abscissa given");
    out << "x,cdf,survival,pdf,hazard,reversed_hazard\n";
    for (double x : req.xs) {
      const double cols[] = {x,
                             cdf(p, x),
                             survival(p, x),
                             pdf(p, x),
                             guarded([&] { return hazard(p, x); }),
                             guarded([&] { return reversed_hazard(p, x); })};
      for (std::size_t i = 0; i < std::size(cols); ++i) out << (i ? "," : "") << format_number(cols[i]);
      out << '\n';
    }
    return kExitOk;
  });
}

}  // namespace eg2::cli
