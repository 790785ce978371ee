#pragma once

// Vector majorization, the matrix classes used by multivariate majorization
// (permutation, doubly stochastic, T-transform), the parameter-matrix sets
// S_n and T_n, and verification of supplied T-transform chains.
//
// Majorization follows the usual largest-first convention: y majorizes x when
// both have the same total and every prefix sum of y sorted in nonincreasing
// order is at least the matching prefix sum of x.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eg2/error.hpp"

namespace eg2 {

/// Non-empty vector of finite reals.
class RealVector {
 public:
  explicit RealVector(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
};

/// 2 x n matrix [alpha row; theta row] with positive finite entries, n >= 2.
class ParamMatrix {
 public:
  ParamMatrix(std::vector<double> alphas, std::vector<double> thetas);

  std::size_t cols() const noexcept { return alphas_.size(); }
  std::span<const double> alphas() const noexcept { return alphas_; }
  std::span<const double> thetas() const noexcept { return thetas_; }
  /// row 0 is alpha, row 1 is theta.
  std::span<const double> row(std::size_t r) const noexcept { return r == 0 ? alphas() : thetas(); }
  double at(std::size_t r, std::size_t c) const { return row(r)[c]; }

  friend bool operator==(const ParamMatrix&, const ParamMatrix&) = default;

 private:
  std::vector<double> alphas_;
  std::vector<double> thetas_;
};

/// Largest absolute entry-wise difference; shapes must agree.
double max_abs_difference(const ParamMatrix& a, const ParamMatrix& b);

/// T-transform w I + (1 - w) Pi where Pi swaps coordinates i and j
/// (zero-based). Requires n >= 2, i != j, both < n, and 0 <= w <= 1.
class TTransform {
 public:
  TTransform(std::size_t n, std::size_t i, std::size_t j, double w);

  std::size_t order() const noexcept { return n_; }
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  double weight() const noexcept { return w_; }

  /// Same pair of coordinates (in either order).
  bool same_structure(const TTransform& other) const noexcept;

 private:
  std::size_t n_;
  std::size_t i_;
  std::size_t j_;
  double w_;
};

/// Dense row-major square matrix with finite entries.
class SquareMatrix {
 public:
  SquareMatrix(std::size_t n, std::vector<double> entries);
  static SquareMatrix identity(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  double at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);

/// y majorizes x. Throws ContractError on length mismatch.
bool majorizes(const RealVector& y, const RealVector& x);

/// Each row of a majorizes the matching row of b.
bool row_majorizes(const ParamMatrix& a, const ParamMatrix& b);

bool is_permutation_matrix(const SquareMatrix& m);
bool is_doubly_stochastic(const SquareMatrix& m, double tol);

SquareMatrix t_transform_matrix(const TTransform& t);

/// If m equals some T-transform (identity counts as w = 1 on the pair (0,1)),
/// returns it. Entries are compared with absolute tolerance `tol`.
std::optional<TTransform> as_t_transform(const SquareMatrix& m, double tol = 1e-12);

/// A * T_1 * ... * T_k. Throws ContractError if a transform order differs from
/// the number of columns.
ParamMatrix apply_transforms(const ParamMatrix& a, std::span<const TTransform> ts);

/// A * P. Throws ContractError on order mismatch.
ParamMatrix apply_matrix(const ParamMatrix& a, const SquareMatrix& p);

/// a majorizes b through the supplied P: P is doubly stochastic and b = a P,
/// both checked with tolerance `tol`.
bool majorizes_via(const ParamMatrix& a, const ParamMatrix& b, const SquareMatrix& p,
                   double tol = 1e-12);

/// (alpha_i - alpha_j)(theta_i - theta_j) <= 0 for every pair.
bool in_S_n(const ParamMatrix& a);
/// in_S_n and every alpha_i >= 1.
bool in_T_n(const ParamMatrix& a);

/// Weight w with b = a (w I + (1 - w) Pi) for n = 2, consistent on all four
/// entries within 1e-10. When a has two identical columns returns 1.
/// Throws ContractError unless both matrices are 2 x 2.
std::optional<double> recover_t_transform_2x2(const ParamMatrix& a, const ParamMatrix& b);

enum class ParamSet { S, T };

std::string_view to_string(ParamSet set);
bool is_member(const ParamMatrix& a, ParamSet set);

struct ChainStep {
  TTransform transform;
  ParamMatrix matrix;  // after applying this transform
  bool member;
};

struct ChainReport {
  ParamMatrix initial;
  bool initial_member;
  std::vector<ChainStep> steps;
  ParamMatrix final_matrix;
  /// The initial matrix and every intermediate (steps 1..k-1) lie in the set.
  bool all_members;
  /// Number of transforms applied when membership first fails (0 means the
  /// initial matrix itself). Empty when all_members holds.
  std::optional<std::size_t> first_failure;
  /// Every transform acts on the same coordinate pair.
  bool same_structure;
};

ChainReport verify_chain_path(const ParamMatrix& a, std::span<const TTransform> ts, ParamSet set);

}  // namespace eg2
