#include "eg2/cli/scenario.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace eg2::cli {

namespace {

using nlohmann::json;
using Pointer = json::json_pointer;

[[noreturn]] void fail(const Pointer& at, const std::string& what) {
  const std::string where = at.empty() ? std::string("/") : at.to_string();
  throw InputError("at " + where + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "line " << line << ", column " << col << ": " << e.what();
    throw InputError(msg.str());
  }
}

void only_keys(const json& j, const Pointer& at, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(at, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) fail(at / key, "unknown key");
  }
}

const json& required(const json& j, const Pointer& at, const char* key) {
  if (!j.contains(key)) fail(at / key, "missing");
  return j.at(key);
}

double number(const json& j, const Pointer& at) {
  if (!j.is_number()) fail(at, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(at, "must be finite");
  return v;
}

double positive(const json& j, const Pointer& at) {
  const double v = number(j, at);
  if (!(v > 0.0)) fail(at, "must be positive");
  return v;
}

std::size_t count(const json& j, const Pointer& at) {
  if (!j.is_number_unsigned()) fail(at, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, const Pointer& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

std::vector<double> positive_list(const json& j, const Pointer& at) {
  if (!j.is_array()) fail(at, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(positive(j[i], at / i));
  return out;
}

SystemKind parse_kind(const json& j, const Pointer& at) {
  const auto s = text(j, at);
  if (s == "series") return SystemKind::Series;
  if (s == "parallel") return SystemKind::Parallel;
  fail(at, "expected \"series\" or \"parallel\", got \"" + s + "\"");
}

Order parse_order(const json& j, const Pointer& at) {
  const auto s = text(j, at);
  if (s == "st") return Order::St;
  if (s == "fr") return Order::Fr;
  if (s == "rf") return Order::Rf;
  if (s == "lr") return Order::Lr;
  fail(at, "expected one of st, fr, rf, lr, got \"" + s + "\"");
}

Spacing parse_spacing(const json& j, const Pointer& at) {
  const auto s = text(j, at);
  if (s == "log") return Spacing::Log;
  if (s == "linear") return Spacing::Linear;
  fail(at, "expected \"log\" or \"linear\", got \"" + s + "\"");
}

// Either {"components": [{theta, phi, alpha}, ...]} or the matrix form
// {"alpha": [...], "theta": [...], "phi": p}.
NamedSystem parse_system(const json& j, const Pointer& at, const std::string& default_label) {
  only_keys(j, at, {"label", "components", "alpha", "theta", "phi"});
  const std::string label = j.contains("label") ? text(j["label"], at / "label") : default_label;
  std::vector<EG2Params> comps;
  if (j.contains("components")) {
    if (j.contains("alpha") || j.contains("theta") || j.contains("phi")) {
      fail(at, "give either components or alpha/theta/phi rows, not both");
    }
    const auto& list = j["components"];
    const auto lat = at / "components";
    if (!list.is_array()) fail(lat, "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto cat = lat / i;
      only_keys(list[i], cat, {"theta", "phi", "alpha"});
      comps.emplace_back(positive(required(list[i], cat, "theta"), cat / "theta"),
                         positive(required(list[i], cat, "phi"), cat / "phi"),
                         positive(required(list[i], cat, "alpha"), cat / "alpha"));
    }
  } else {
    const auto alphas = positive_list(required(j, at, "alpha"), at / "alpha");
    const auto thetas = positive_list(required(j, at, "theta"), at / "theta");
    const double phi = positive(required(j, at, "phi"), at / "phi");
    if (alphas.size() != thetas.size()) fail(at, "alpha and theta rows differ in length");
    for (std::size_t i = 0; i < alphas.size(); ++i) comps.emplace_back(thetas[i], phi, alphas[i]);
  }
  if (comps.empty()) fail(at, "a system needs at least one component");
  if (comps.size() > kMaxComponents) {
    fail(at, "more than " + std::to_string(kMaxComponents) + " components");
  }
  return {label, ComponentSet(std::move(comps))};
}

json system_json(const NamedSystem& s) {
  json comps = json::array();
  for (const auto& p : s.components) {
    comps.push_back({{"theta", p.theta()}, {"phi", p.phi()}, {"alpha", p.alpha()}});
  }
  return {{"label", s.label}, {"components", comps}};
}

}  // namespace

std::string_view to_string(Order o) {
  switch (o) {
    case Order::St: return "st";
    case Order::Fr: return "fr";
    case Order::Rf: return "rf";
    case Order::Lr: return "lr";
  }
  return "?";
}

Scenario parse_scenario(std::string_view input) {
  const json j = parse_json(input);
  const Pointer root;
  only_keys(j, root, {"kind", "order", "systems", "grid", "tolerance"});
  const auto& systems = required(j, root, "systems");
  const auto sat = root / "systems";
  only_keys(systems, sat, {"A", "B"});

  GridSpec grid = GridSpec::default_grid();
  if (j.contains("grid")) {
    const auto gat = root / "grid";
    const auto& g = j["grid"];
    only_keys(g, gat, {"min", "max", "points", "spacing"});
    const double lo = g.contains("min") ? positive(g["min"], gat / "min") : grid.x_min();
    const double hi = g.contains("max") ? positive(g["max"], gat / "max") : grid.x_max();
    const std::size_t n = g.contains("points") ? count(g["points"], gat / "points") : grid.count();
    const Spacing sp = g.contains("spacing") ? parse_spacing(g["spacing"], gat / "spacing") : grid.spacing();
    try {
      grid = GridSpec(lo, hi, n, sp);
    } catch (const std::exception& e) {
      fail(gat, e.what());
    }
  }
  const double tol = j.contains("tolerance") ? positive(j["tolerance"], root / "tolerance") : kDefaultTolerance;
  try {
    return Scenario{parse_system(required(systems, sat, "A"), sat / "A", "X"),
                    parse_system(required(systems, sat, "B"), sat / "B", "X*"),
                    parse_kind(required(j, root, "kind"), root / "kind"),
                    parse_order(required(j, root, "order"), root / "order"),
                    grid,
                    tol};
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario load_scenario(const std::string& path) {
  const auto content = read_file(path);
  try {
    return parse_scenario(content);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Scenario with_overrides(const Scenario& s, const GridOverrides& o) {
  Scenario out = s;
  try {
    out.grid = GridSpec(o.x_min.value_or(s.grid.x_min()), o.x_max.value_or(s.grid.x_max()),
                        o.points.value_or(s.grid.count()), o.spacing.value_or(s.grid.spacing()));
  } catch (const std::exception& e) {
    throw InputError(std::string("grid flags: ") + e.what());
  }
  if (o.tolerance) {
    if (!(*o.tolerance > 0.0) || !std::isfinite(*o.tolerance)) {
      throw InputError("--tol must be a positive number");
    }
    out.tolerance = *o.tolerance;
  }
  return out;
}

nlohmann::json normalized(const Scenario& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"order", std::string(to_string(s.order))},
          {"systems", {{"A", system_json(s.a)}, {"B", system_json(s.b)}}},
          {"grid",
           {{"min", s.grid.x_min()},
            {"max", s.grid.x_max()},
            {"points", s.grid.count()},
            {"spacing", s.grid.spacing() == Spacing::Log ? "log" : "linear"}}},
          {"tolerance", s.tolerance}};
}

std::string normalized_text(const Scenario& s) { return normalized(s).dump(); }

std::string digest(const Scenario& s) {
  const auto body = normalized_text(s);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(body.data(), body.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

ChainFile parse_chain(std::string_view input) {
  const json j = parse_json(input);
  const Pointer root;
  only_keys(j, root, {"alpha", "theta", "set", "transforms", "phi", "label", "label_star"});
  const auto alphas = positive_list(required(j, root, "alpha"), root / "alpha");
  const auto thetas = positive_list(required(j, root, "theta"), root / "theta");
  if (alphas.size() != thetas.size()) fail(root, "alpha and theta rows differ in length");
  if (alphas.size() < 2) fail(root / "alpha", "a parameter matrix needs at least two columns");
  const auto set_name = text(required(j, root, "set"), root / "set");
  if (set_name != "S" && set_name != "T") fail(root / "set", "expected \"S\" or \"T\"");
  const std::size_t n = alphas.size();

  std::vector<TTransform> ts;
  const auto tat = root / "transforms";
  const json empty = json::array();
  const auto& list = j.contains("transforms") ? j["transforms"] : empty;
  if (!list.is_array()) fail(tat, "expected an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto at = tat / k;
    only_keys(list[k], at, {"i", "j", "w"});
    const std::size_t i = count(required(list[k], at, "i"), at / "i");
    const std::size_t jj = count(required(list[k], at, "j"), at / "j");
    const double w = number(required(list[k], at, "w"), at / "w");
    if (i < 1 || i > n) fail(at / "i", "coordinate must lie in 1.." + std::to_string(n));
    if (jj < 1 || jj > n) fail(at / "j", "coordinate must lie in 1.." + std::to_string(n));
    if (i == jj) fail(at, "i and j must differ");
    if (w < 0.0 || w > 1.0) fail(at / "w", "weight must lie in [0, 1]");
    ts.emplace_back(n, i - 1, jj - 1, w);
  }
  return ChainFile{ParamMatrix(alphas, thetas),
                   set_name == "S" ? ParamSet::S : ParamSet::T,
                   std::move(ts),
                   j.contains("phi") ? positive(j["phi"], root / "phi") : 2.0,
                   j.contains("label") ? text(j["label"], root / "label") : "X",
                   j.contains("label_star") ? text(j["label_star"], root / "label_star") : "X*"};
}

ChainFile load_chain(const std::string& path) {
  const auto content = read_file(path);
  try {
    return parse_chain(content);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace eg2::cli
