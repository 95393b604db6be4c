// Dense two-phase simplex over an arbitrary ordered field.
//
// Instantiate with boost::multiprecision::cpp_rational for exact answers; doubles work too
// (with a small pivot tolerance) and are handy for cross-checks. Bland's rule is used
// throughout, so the method terminates on degenerate problems.
#ifndef MUBW_LP_HPP
#define MUBW_LP_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mubw::lp {

using Rational = boost::multiprecision::cpp_rational;

enum class Relation { LessEqual, GreaterEqual, Equal };

/// coeffs . x  (rel)  rhs.
template <typename Scalar>
struct Constraint {
  std::vector<Scalar> coeffs;
  Relation rel = Relation::LessEqual;
  Scalar rhs{};
};

enum class Status { Optimal, Infeasible, Unbounded };

/// Free variables are split internally as x = x+ - x-; nonnegative ones are used directly.
enum class Domain { Free, Nonnegative };

template <typename Scalar>
struct Solution {
  Status status = Status::Infeasible;
  Scalar objective{};
  std::vector<Scalar> x;
};

template <typename Scalar>
struct ScalarTraits {
  static constexpr bool exact = !std::is_floating_point_v<Scalar>;
  static bool positive(const Scalar& v) {
    if constexpr (exact) return v > 0;
    else return v > Scalar(1e-11);
  }
  static bool negative(const Scalar& v) {
    if constexpr (exact) return v < 0;
    else return v < Scalar(-1e-11);
  }
  static bool zero(const Scalar& v) { return !positive(v) && !negative(v); }
};

/// Exact rational for a double (every finite double is a dyadic rational).
inline Rational to_rational(double v) { return Rational(v); }

namespace detail {

template <typename Scalar>
class Tableau {
  using T = ScalarTraits<Scalar>;

 public:
  Tableau(const std::vector<Constraint<Scalar>>& cons, int num_vars, Domain domain)
      : n_(num_vars), split_(domain == Domain::Free) {
    m_ = static_cast<int>(cons.size());
    int slack = 0;
    for (const auto& c : cons) {
      if (static_cast<int>(c.coeffs.size()) != n_) throw std::invalid_argument("lp: coefficient count mismatch");
      if (c.rel != Relation::Equal) ++slack;
    }
    structural_ = split_ ? 2 * n_ : n_;
    first_artificial_ = structural_ + slack;
    cols_ = first_artificial_ + m_;
    rows_.assign(m_, std::vector<Scalar>(cols_ + 1, Scalar(0)));
    basis_.resize(m_);
    int s = structural_;
    for (int i = 0; i < m_; ++i) {
      const auto& c = cons[i];
      auto& row = rows_[i];
      for (int j = 0; j < n_; ++j) {
        row[j] = c.coeffs[j];
        if (split_) row[n_ + j] = -c.coeffs[j];
      }
      int slack_col = -1;
      if (c.rel == Relation::LessEqual) row[slack_col = s++] = Scalar(1);
      if (c.rel == Relation::GreaterEqual) row[slack_col = s++] = Scalar(-1);
      row[cols_] = c.rhs;
      if (T::negative(row[cols_]) || (T::zero(row[cols_]) && c.rel == Relation::GreaterEqual)) {
        for (auto& v : row) v = -v;
      }
      // A slack with coefficient +1 is a feasible starting basic variable.
      if (slack_col >= 0 && T::positive(row[slack_col])) {
        basis_[i] = slack_col;
      } else {
        row[first_artificial_ + i] = Scalar(1);
        basis_[i] = first_artificial_ + i;
      }
    }
  }

  /// Phase one; returns false when the constraints are infeasible.
  bool find_feasible_basis() {
    std::vector<Scalar> cost(cols_, Scalar(0));
    for (int j = first_artificial_; j < cols_; ++j) cost[j] = Scalar(-1);
    if (optimize(cost, cols_) != Status::Optimal) return false;
    Scalar infeasibility(0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) infeasibility += rows_[i][cols_];
    }
    if (T::positive(infeasibility)) return false;
    drive_out_artificials();
    return true;
  }

  /// Phase two over the structural and slack columns; objective over the original variables.
  Solution<Scalar> maximize(const std::vector<Scalar>& objective) {
    std::vector<Scalar> cost(cols_, Scalar(0));
    for (int j = 0; j < n_; ++j) {
      cost[j] = objective[j];
      if (split_) cost[n_ + j] = -objective[j];
    }
    Solution<Scalar> out;
    out.status = optimize(cost, first_artificial_);
    out.x = point();
    out.objective = Scalar(0);
    for (int j = 0; j < n_; ++j) out.objective += objective[j] * out.x[j];
    return out;
  }

  std::vector<Scalar> point() const {
    std::vector<Scalar> x(n_, Scalar(0));
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (b < n_) x[b] += rows_[i][cols_];
      else if (split_ && b < structural_) x[b - n_] -= rows_[i][cols_];
    }
    return x;
  }

 private:
  // Maximizes cost . z over columns [0, allowed); columns >= allowed never enter.
  Status optimize(const std::vector<Scalar>& cost, int allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        if (is_basic(j)) continue;
        Scalar reduced = cost[j];
        for (int i = 0; i < m_; ++i) {
          if (!T::zero(rows_[i][j])) reduced -= cost[basis_[i]] * rows_[i][j];
        }
        if (T::positive(reduced)) enter = j;
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      Scalar best{};
      for (int i = 0; i < m_; ++i) {
        if (!T::positive(rows_[i][enter])) continue;
        Scalar ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    auto& prow = rows_[r];
    const Scalar inv = Scalar(1) / prow[c];
    for (auto& v : prow) {
      if (!T::zero(v)) v *= inv;
    }
    prow[c] = Scalar(1);
    for (int i = 0; i < m_; ++i) {
      if (i == r || T::zero(rows_[i][c])) continue;
      const Scalar f = rows_[i][c];
      auto& row = rows_[i];
      for (int j = 0; j <= cols_; ++j) {
        if (!T::zero(prow[j])) row[j] -= f * prow[j];
      }
      row[c] = Scalar(0);
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (!is_basic(j) && !T::zero(rows_[i][j])) {
          pivot(i, j);
          break;
        }
      }
      // A row that keeps its artificial is redundant; its value is zero and stays so.
    }
  }

  bool is_basic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  int n_ = 0;
  bool split_ = true;
  int m_ = 0, structural_ = 0, first_artificial_ = 0, cols_ = 0;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<int> basis_;
};

}  // namespace detail

/// True iff the system has a real solution.
template <typename Scalar>
bool feasible(const std::vector<Constraint<Scalar>>& cons, int num_vars, Domain domain = Domain::Free) {
  if (cons.empty()) return true;
  detail::Tableau<Scalar> tab(cons, num_vars, domain);
  return tab.find_feasible_basis();
}

/// A feasible point, when one exists.
template <typename Scalar>
std::optional<std::vector<Scalar>> feasible_point(const std::vector<Constraint<Scalar>>& cons, int num_vars,
                                                  Domain domain = Domain::Free) {
  if (cons.empty()) return std::vector<Scalar>(num_vars, Scalar(0));
  detail::Tableau<Scalar> tab(cons, num_vars, domain);
  if (!tab.find_feasible_basis()) return std::nullopt;
  return tab.point();
}

template <typename Scalar>
Solution<Scalar> maximize(const std::vector<Constraint<Scalar>>& cons, const std::vector<Scalar>& objective,
                          int num_vars, Domain domain = Domain::Free) {
  if (static_cast<int>(objective.size()) != num_vars) throw std::invalid_argument("lp: objective size mismatch");
  detail::Tableau<Scalar> tab(cons, num_vars, domain);
  if (!tab.find_feasible_basis()) return {};
  return tab.maximize(objective);
}

template <typename Scalar>
Solution<Scalar> minimize(const std::vector<Constraint<Scalar>>& cons, const std::vector<Scalar>& objective,
                          int num_vars, Domain domain = Domain::Free) {
  std::vector<Scalar> neg(objective);
  for (auto& v : neg) v = -v;
  auto sol = maximize(cons, neg, num_vars, domain);
  sol.objective = -sol.objective;
  return sol;
}

}  // namespace mubw::lp

#endif  // MUBW_LP_HPP
