#include "relaysynth/rational_lp.hpp"

#include "relaysynth/common.hpp"

namespace relaysynth {

DualFeasibleLp::DualFeasibleLp(std::vector<Rational> rhs) : rhs_(std::move(rhs)) {
  const std::size_t m = rhs_.size();
  for (const auto& b : rhs_)
    if (b < 0) fail(ErrorCode::invalid_argument, "DualFeasibleLp needs a nonnegative right-hand side");
  basis_.resize(m);
  inverse_.assign(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    basis_[i] = -static_cast<int>(i) - 1;
    inverse_[i][i] = 1;
  }
  values_ = rhs_;
}

int DualFeasibleLp::add_column(std::vector<Entry> column, Rational objective) {
  for (const auto& e : column)
    if (e.row < 0 || static_cast<std::size_t>(e.row) >= rhs_.size())
      fail(ErrorCode::invalid_argument, "column entry row out of range");
  columns_.push_back({std::move(column), std::move(objective)});
  return static_cast<int>(columns_.size()) - 1;
}

std::vector<Rational> DualFeasibleLp::row_prices() const {
  const std::size_t m = rhs_.size();
  std::vector<Rational> y(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis_[i] < 0) continue;
    const Rational& cb = columns_[basis_[i]].objective;
    if (cb == 0) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (inverse_[i][j] != 0) y[j] += cb * inverse_[i][j];
  }
  return y;
}

std::vector<Rational> DualFeasibleLp::ftran(const Column& c) const {
  const std::size_t m = rhs_.size();
  std::vector<Rational> alpha(m, 0);
  for (const auto& e : c.entries)
    for (std::size_t i = 0; i < m; ++i)
      if (inverse_[i][e.row] != 0) alpha[i] += inverse_[i][e.row] * e.value;
  return alpha;
}

void DualFeasibleLp::pivot(std::size_t r, int enter, const std::vector<Rational>& alpha) {
  const std::size_t m = rhs_.size();
  const Rational piv = alpha[r];
  for (auto& x : inverse_[r]) x /= piv;
  values_[r] /= piv;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == r || alpha[i] == 0) continue;
    const Rational f = alpha[i];
    for (std::size_t j = 0; j < m; ++j)
      if (inverse_[r][j] != 0) inverse_[i][j] -= f * inverse_[r][j];
    values_[i] -= f * values_[r];
  }
  basis_[r] = enter;
  ++pivots_;
}

DualFeasibleLp::Status DualFeasibleLp::solve(long max_pivots) {
  const std::size_t m = rhs_.size();
  const long start = pivots_;
  while (true) {
    if (pivots_ - start >= max_pivots) return Status::iteration_limit;
    const auto y = row_prices();
    std::vector<char> basic_col(columns_.size(), 0);
    std::vector<char> basic_slack(m, 0);
    for (int b : basis_) {
      if (b < 0)
        basic_slack[-b - 1] = 1;
      else
        basic_col[b] = 1;
    }
    // Bland: lowest-index improving variable, slacks ordered first.
    int enter = 0;
    bool found = false;
    for (std::size_t i = 0; i < m && !found; ++i)
      if (!basic_slack[i] && y[i] < 0) {
        enter = -static_cast<int>(i) - 1;
        found = true;
      }
    for (std::size_t j = 0; j < columns_.size() && !found; ++j) {
      if (basic_col[j]) continue;
      Rational d = columns_[j].objective;
      for (const auto& e : columns_[j].entries) d -= y[e.row] * e.value;
      if (d > 0) {
        enter = static_cast<int>(j);
        found = true;
      }
    }
    if (!found) return Status::optimal;

    std::vector<Rational> alpha;
    if (enter < 0) {
      const int s = -enter - 1;
      alpha.assign(m, 0);
      for (std::size_t i = 0; i < m; ++i) alpha[i] = inverse_[i][s];
    } else {
      alpha = ftran(columns_[enter]);
    }
    long best = -1;
    Rational best_ratio;
    auto order = [](int b) { return b < 0 ? static_cast<long>(-b - 1) : static_cast<long>(b) + 1'000'000'000L; };
    for (std::size_t i = 0; i < m; ++i) {
      if (alpha[i] <= 0) continue;
      Rational ratio = values_[i] / alpha[i];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && order(basis_[i]) < order(basis_[best]))) {
        best = static_cast<long>(i);
        best_ratio = ratio;
      }
    }
    if (best < 0) return Status::unbounded;
    pivot(static_cast<std::size_t>(best), enter, alpha);
  }
}

Rational DualFeasibleLp::objective() const {
  Rational z = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] >= 0) z += columns_[basis_[i]].objective * values_[i];
  return z;
}

std::vector<Rational> DualFeasibleLp::primal() const {
  std::vector<Rational> w(columns_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] >= 0) w[basis_[i]] = values_[i];
  return w;
}

std::vector<Rational> DualFeasibleLp::duals() const { return row_prices(); }

}  // namespace relaysynth
