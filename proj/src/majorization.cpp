#include "eg2/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

namespace eg2 {

namespace {

constexpr double kMajorizationTol = 1e-12;
constexpr double kRecoveryTol = 1e-10;

double scaled_tol(double magnitude) { return kMajorizationTol * std::max(1.0, std::abs(magnitude)); }

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool rows_oppositely_ordered(const ParamMatrix& a) {
  const auto al = a.alphas();
  const auto th = a.thetas();
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if ((al[i] - al[j]) * (th[i] - th[j]) > 0.0) return false;
    }
  }
  return true;
}

void require_same_shape(const ParamMatrix& a, const ParamMatrix& b) {
  if (a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "matrix shapes differ: 2x" << a.cols() << " vs 2x" << b.cols();
    throw ContractError(msg.str());
  }
}

}  // namespace

RealVector::RealVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ContractError("vector must not be empty");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DomainError("vector entries must be finite");
  }
}

ParamMatrix::ParamMatrix(std::vector<double> alphas, std::vector<double> thetas)
    : alphas_(std::move(alphas)), thetas_(std::move(thetas)) {
  if (alphas_.size() != thetas_.size()) {
    std::ostringstream msg;
    msg << "parameter matrix rows differ in length: " << alphas_.size() << " vs " << thetas_.size();
    throw ContractError(msg.str());
  }
  if (alphas_.size() < 2) throw ContractError("parameter matrix needs at least two columns");
  for (const auto* r : {&alphas_, &thetas_}) {
    for (double v : *r) {
      if (!std::isfinite(v) || !(v > 0.0)) {
        std::ostringstream msg;
        msg << "parameter matrix entries must be finite and positive, got " << v;
        throw DomainError(msg.str());
      }
    }
  }
}

double max_abs_difference(const ParamMatrix& a, const ParamMatrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  }
  return m;
}

TTransform::TTransform(std::size_t n, std::size_t i, std::size_t j, double w)
    : n_(n), i_(i), j_(j), w_(w) {
  if (n < 2) throw ContractError("T-transform order must be at least 2");
  if (i >= n || j >= n || i == j) {
    std::ostringstream msg;
    msg << "T-transform coordinates must be distinct and below " << n << ", got (" << i << ", "
        << j << ")";
    throw ContractError(msg.str());
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    std::ostringstream msg;
    msg << "T-transform weight must lie in [0,1], got " << w;
    throw DomainError(msg.str());
  }
}

bool TTransform::same_structure(const TTransform& other) const noexcept {
  return n_ == other.n_ && std::minmax(i_, j_) == std::minmax(other.i_, other.j_);
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0 || entries_.size() != n * n) {
    std::ostringstream msg;
    msg << "square matrix of order " << n << " needs " << n * n << " entries, got "
        << entries_.size();
    throw ContractError(msg.str());
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
  }
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1.0;
  return SquareMatrix(n, std::move(e));
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.order() != b.order()) throw ContractError("matrix orders differ");
  const std::size_t n = a.order();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < n; ++c) e[r * n + c] += a.at(r, k) * b.at(k, c);
    }
  }
  return SquareMatrix(n, std::move(e));
}

bool majorizes(const RealVector& y, const RealVector& x) {
  if (y.size() != x.size()) {
    std::ostringstream msg;
    msg << "majorization needs equal lengths, got " << y.size() << " and " << x.size();
    throw ContractError(msg.str());
  }
  const auto ys = sorted_desc(y.entries());
  const auto xs = sorted_desc(x.entries());
  double sy = 0.0;
  double sx = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    sy += ys[k];
    sx += xs[k];
    const double tol = scaled_tol(std::max(std::abs(sy), std::abs(sx)));
    if (k + 1 < ys.size()) {
      if (sy < sx - tol) return false;
    } else if (std::abs(sy - sx) > tol) {
      return false;
    }
  }
  return true;
}

bool row_majorizes(const ParamMatrix& a, const ParamMatrix& b) {
  require_same_shape(a, b);
  for (std::size_t r = 0; r < 2; ++r) {
    const auto ra = a.row(r);
    const auto rb = b.row(r);
    if (!majorizes(RealVector({ra.begin(), ra.end()}), RealVector({rb.begin(), rb.end()}))) {
      return false;
    }
  }
  return true;
}

bool is_permutation_matrix(const SquareMatrix& m) {
  constexpr double tol = 1e-12;
  const std::size_t n = m.order();
  std::vector<int> col_units(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int row_units = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const double v = m.at(r, c);
      if (std::abs(v - 1.0) <= tol) {
        ++row_units;
        ++col_units[c];
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
    if (row_units != 1) return false;
  }
  return std::all_of(col_units.begin(), col_units.end(), [](int k) { return k == 1; });
}

bool is_doubly_stochastic(const SquareMatrix& m, double tol) {
  const std::size_t n = m.order();
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (m.at(r, c) < -tol) return false;
      row += m.at(r, c);
      col += m.at(c, r);
    }
    if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol) return false;
  }
  return true;
}

SquareMatrix t_transform_matrix(const TTransform& t) {
  const std::size_t n = t.order();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) out[k * n + k] = 1.0;
  const double w = t.weight();
  out[t.i() * n + t.i()] = w;
  out[t.j() * n + t.j()] = w;
  out[t.i() * n + t.j()] = 1.0 - w;
  out[t.j() * n + t.i()] = 1.0 - w;
  return SquareMatrix(n, std::move(out));
}

std::optional<TTransform> as_t_transform(const SquareMatrix& m, double tol) {
  const std::size_t n = m.order();
  if (n < 2) return std::nullopt;
  // Coordinates whose diagonal entry departs from 1.
  std::vector<std::size_t> moved;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(m.at(k, k) - 1.0) > tol) moved.push_back(k);
  }
  const auto matches = [&](const TTransform& t) {
    const auto ref = t_transform_matrix(t);
    for (std::size_t k = 0; k < n * n; ++k) {
      if (std::abs(ref.entries()[k] - m.entries()[k]) > tol) return false;
    }
    return true;
  };
  if (moved.empty()) {
    TTransform id(n, 0, 1, 1.0);
    return matches(id) ? std::optional(id) : std::nullopt;
  }
  if (moved.size() != 2) return std::nullopt;
  const double w = m.at(moved[0], moved[0]);
  if (w < -tol || w > 1.0 + tol) return std::nullopt;
  TTransform t(n, moved[0], moved[1], std::clamp(w, 0.0, 1.0));
  return matches(t) ? std::optional(t) : std::nullopt;
}

ParamMatrix apply_transforms(const ParamMatrix& a, std::span<const TTransform> ts) {
  std::vector<double> al(a.alphas().begin(), a.alphas().end());
  std::vector<double> th(a.thetas().begin(), a.thetas().end());
  for (const auto& t : ts) {
    if (t.order() != a.cols()) {
      std::ostringstream msg;
      msg << "T-transform of order " << t.order() << " applied to a 2x" << a.cols() << " matrix";
      throw ContractError(msg.str());
    }
    // Right multiplication mixes columns i and j.
    const double w = t.weight();
    for (auto* row : {&al, &th}) {
      const double ci = (*row)[t.i()];
      const double cj = (*row)[t.j()];
      (*row)[t.i()] = w * ci + (1.0 - w) * cj;
      (*row)[t.j()] = w * cj + (1.0 - w) * ci;
    }
  }
  return ParamMatrix(std::move(al), std::move(th));
}

ParamMatrix apply_matrix(const ParamMatrix& a, const SquareMatrix& p) {
  const std::size_t n = a.cols();
  if (p.order() != n) {
    std::ostringstream msg;
    msg << "matrix of order " << p.order() << " applied to a 2x" << n << " matrix";
    throw ContractError(msg.str());
  }
  std::vector<double> rows[2] = {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t k = 0; k < n; ++k) rows[r][c] += a.at(r, k) * p.at(k, c);
    }
  }
  return ParamMatrix(std::move(rows[0]), std::move(rows[1]));
}

bool majorizes_via(const ParamMatrix& a, const ParamMatrix& b, const SquareMatrix& p, double tol) {
  require_same_shape(a, b);
  if (!is_doubly_stochastic(p, tol)) return false;
  return max_abs_difference(apply_matrix(a, p), b) <= tol;
}

bool in_S_n(const ParamMatrix& a) { return rows_oppositely_ordered(a); }

bool in_T_n(const ParamMatrix& a) {
  const auto al = a.alphas();
  return rows_oppositely_ordered(a) &&
         std::all_of(al.begin(), al.end(), [](double v) { return v >= 1.0; });
}

std::optional<double> recover_t_transform_2x2(const ParamMatrix& a, const ParamMatrix& b) {
  if (a.cols() != 2 || b.cols() != 2) throw ContractError("recover_t_transform_2x2 needs 2x2 matrices");
  const auto consistent = [&](double w) {
    for (std::size_t r = 0; r < 2; ++r) {
      const double b0 = w * a.at(r, 0) + (1.0 - w) * a.at(r, 1);
      const double b1 = w * a.at(r, 1) + (1.0 - w) * a.at(r, 0);
      const double tol = kRecoveryTol * std::max({1.0, std::abs(b.at(r, 0)), std::abs(b.at(r, 1))});
      if (std::abs(b0 - b.at(r, 0)) > tol || std::abs(b1 - b.at(r, 1)) > tol) return false;
    }
    return true;
  };
  // Solve on the row with the widest column spread.
  std::size_t best = 0;
  double spread = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    const double d = std::abs(a.at(r, 0) - a.at(r, 1));
    if (d > spread) {
      spread = d;
      best = r;
    }
  }
  if (spread == 0.0) {
    // Identical columns: every w fits or none does.
    return consistent(1.0) ? std::optional(1.0) : std::nullopt;
  }
  double w = (b.at(best, 0) - a.at(best, 1)) / (a.at(best, 0) - a.at(best, 1));
  if (w < -kRecoveryTol || w > 1.0 + kRecoveryTol) return std::nullopt;
  w = std::clamp(w, 0.0, 1.0);
  if (!consistent(w)) return std::nullopt;
  return w;
}

std::string_view to_string(ParamSet set) { return set == ParamSet::S ? "S" : "T"; }

bool is_member(const ParamMatrix& a, ParamSet set) {
  return set == ParamSet::S ? in_S_n(a) : in_T_n(a);
}

ChainReport verify_chain_path(const ParamMatrix& a, std::span<const TTransform> ts, ParamSet set) {
  ChainReport report{a, is_member(a, set), {}, a, false, std::nullopt, true};
  if (!report.initial_member) report.first_failure = 0;
  ParamMatrix current = a;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    current = apply_transforms(current, ts.subspan(k, 1));
    const bool member = is_member(current, set);
    report.steps.push_back({ts[k], current, member});
    // Only intermediates (before the last transform) enter the hypothesis.
    if (!member && k + 1 < ts.size() && !report.first_failure) report.first_failure = k + 1;
    if (!ts[k].same_structure(ts.front())) report.same_structure = false;
  }
  report.final_matrix = current;
  report.all_members = !report.first_failure.has_value();
  return report;
}

}  // namespace eg2
