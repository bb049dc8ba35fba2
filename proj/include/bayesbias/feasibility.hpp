#pragma once

#include "bayesbias/rational.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace bayesbias {

using VarId = std::size_t;

enum class Relation { EQ, GE, GT };

/// sum_j coefficients[j] * x_j  (relation)  rhs. Omitted variables have
/// coefficient zero. Variables are unrestricted in sign.
struct LinConstraint {
  std::map<VarId, Rational> coefficients;
  Relation relation = Relation::EQ;
  Rational rhs;
};

enum class Verdict { Feasible, Infeasible };

struct FeasibilityOutcome {
  Verdict verdict = Verdict::Infeasible;
  /// Present (non-empty for non-trivial systems) iff Feasible.
  std::map<VarId, Rational> witness;
  /// The maximized strictness margin. Zero when even the non-strict part of
  /// the system has no solution.
  Rational slack;

  [[nodiscard]] bool feasible() const { return verdict == Verdict::Feasible; }
};

/// lhs(x) - rhs for the given assignment; missing variables read as zero.
inline Rational constraint_excess(const LinConstraint& c,
                                  const std::map<VarId, Rational>& x) {
  Rational lhs;
  for (const auto& [id, coef] : c.coefficients) {
    if (auto it = x.find(id); it != x.end()) lhs += coef * it->second;
  }
  return lhs - c.rhs;
}

/// Exact check of one constraint; GT constraints need excess >= margin and > 0.
inline bool satisfies(const LinConstraint& c, const std::map<VarId, Rational>& x,
                      const Rational& margin = Rational(0)) {
  const Rational excess = constraint_excess(c, x);
  switch (c.relation) {
    case Relation::EQ: return excess.is_zero();
    case Relation::GE: return !excess.is_negative();
    case Relation::GT: return excess.is_positive() && excess >= margin;
  }
  return false;
}

namespace detail {

/// Dense two-phase simplex over exact rationals, minimization form,
/// all columns non-negative. Bland's rule for both entering and leaving
/// choices, which makes every run terminate and reproducible.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
          std::size_t structural_columns)
      : a_(std::move(rows)), b_(std::move(rhs)), structural_(structural_columns) {
    const std::size_t m = a_.size();
    // Artificial columns structural_ .. structural_+m-1 form the initial basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (b_[i].is_negative()) {
        for (auto& v : a_[i]) v = -v;
        b_[i] = -b_[i];
      }
      a_[i].resize(structural_ + m);
      a_[i][structural_ + i] = Rational(1);
      basis_.push_back(structural_ + i);
    }
  }

  /// Phase 1. Returns false when the equality system has no non-negative
  /// solution.
  bool find_basic_feasible() {
    const std::size_t n = structural_ + a_.size();
    std::vector<Rational> cost(n);
    for (std::size_t j = structural_; j < n; ++j) cost[j] = Rational(1);
    if (!minimize(cost, n).is_zero()) return false;

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < a_.size();) {
      if (basis_[i] < structural_) {
        ++i;
        continue;
      }
      std::size_t col = structural_;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (!a_[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col == structural_) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
    return true;
  }

  /// Phase 2 over structural columns only; returns the optimal objective.
  Rational minimize_structural(const std::vector<Rational>& cost) {
    std::vector<Rational> full(structural_ + original_rows(), Rational(0));
    std::copy(cost.begin(), cost.end(), full.begin());
    return minimize(full, structural_);
  }

  [[nodiscard]] std::vector<Rational> solution() const {
    std::vector<Rational> x(structural_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = b_[i];
    }
    return x;
  }

 private:
  [[nodiscard]] std::size_t original_rows() const {
    return a_.empty() ? 0 : a_.front().size() - structural_;
  }

  // Minimizes cost.x over columns [0, allowed); the current basis must be
  // feasible. Returns the objective value.
  Rational minimize(const std::vector<Rational>& cost, std::size_t allowed) {
    const std::size_t m = a_.size();
    for (;;) {
      std::size_t entering = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          if (!a_[i][j].is_zero()) reduced -= cost[basis_[i]] * a_[i][j];
        }
        if (reduced.is_negative()) {
          entering = j;
          break;
        }
      }
      if (entering == allowed) break;

      std::size_t leaving = m;
      Rational best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (!a_[i][entering].is_positive()) continue;
        Rational ratio = b_[i] / a_[i][entering];
        if (leaving == m || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == m) {
        throw std::logic_error("simplex: unbounded objective");
      }
      pivot(leaving, entering);
    }
    Rational objective;
    for (std::size_t i = 0; i < m; ++i) objective += cost[basis_[i]] * b_[i];
    return objective;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = a_[row][col];
    for (auto& v : a_[row]) {
      if (!v.is_zero()) v /= p;
    }
    b_[row] /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == row || a_[i][col].is_zero()) continue;
      const Rational f = a_[i][col];
      for (std::size_t j = 0; j < a_[i].size(); ++j) {
        if (!a_[row][j].is_zero()) a_[i][j] -= f * a_[row][j];
      }
      b_[i] -= f * b_[row];
    }
    basis_[row] = col;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::size_t structural_;
};

}  // namespace detail

/// Decides whether the system has a solution in which every GT constraint
/// holds strictly.
///
/// Each GT row is rewritten as lhs - rhs >= eps with a shared margin eps <= 1,
/// and eps is maximized by an exact two-phase simplex. The system is strictly
/// feasible iff the optimum eps* is positive; the optimal point (eps removed)
/// is returned as witness. Pivoting follows Bland's rule, so equal inputs give
/// equal witnesses.
inline FeasibilityOutcome solve_strict_feasibility(std::span<const LinConstraint> constraints) {
  std::set<VarId> ids;
  for (const auto& c : constraints) {
    for (const auto& [id, coef] : c.coefficients) ids.insert(id);
  }
  const std::vector<VarId> vars(ids.begin(), ids.end());
  std::map<VarId, std::size_t> position;
  for (std::size_t k = 0; k < vars.size(); ++k) position[vars[k]] = k;

  // Columns: x_k = pos(2k) - neg(2k+1); then s = 1 - eps >= 0; then one
  // surplus column per inequality row.
  const std::size_t s_col = 2 * vars.size();
  std::size_t columns = s_col + 1;
  for (const auto& c : constraints) {
    if (c.relation != Relation::EQ) ++columns;
  }

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::size_t surplus = s_col + 1;
  for (const auto& c : constraints) {
    std::vector<Rational> row(columns);
    for (const auto& [id, coef] : c.coefficients) {
      const std::size_t k = position[id];
      row[2 * k] += coef;
      row[2 * k + 1] -= coef;
    }
    Rational b = c.rhs;
    if (c.relation == Relation::GT) {
      // lhs - eps >= rhs  <=>  lhs + s - surplus = rhs + 1
      row[s_col] = Rational(1);
      b += Rational(1);
    }
    if (c.relation != Relation::EQ) row[surplus++] = Rational(-1);
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }

  detail::Tableau tableau(std::move(rows), std::move(rhs), columns);
  FeasibilityOutcome out;
  if (!tableau.find_basic_feasible()) {
    out.verdict = Verdict::Infeasible;
    out.slack = Rational(0);
    return out;
  }
  std::vector<Rational> cost(columns);
  cost[s_col] = Rational(1);
  const Rational s_star = tableau.minimize_structural(cost);
  out.slack = Rational(1) - s_star;
  if (!out.slack.is_positive()) {
    out.verdict = Verdict::Infeasible;
    return out;
  }
  out.verdict = Verdict::Feasible;
  const auto x = tableau.solution();
  for (std::size_t k = 0; k < vars.size(); ++k) {
    out.witness[vars[k]] = x[2 * k] - x[2 * k + 1];
  }
  return out;
}

inline FeasibilityOutcome solve_strict_feasibility(const std::vector<LinConstraint>& constraints) {
  return solve_strict_feasibility(std::span<const LinConstraint>(constraints));
}

}  // namespace bayesbias
