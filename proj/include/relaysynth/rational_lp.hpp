#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace relaysynth {

using Rational = mpq_class;

// maximize  obj . w   subject to  M w <= rhs,  w >= 0,  with rhs >= 0.
//
// The origin is feasible, so a single primal phase suffices. Columns can be
// appended between solves; the current basis stays feasible and the next
// solve warm-starts from it. Exact arithmetic and Bland's rule guarantee
// termination. The row duals at optimum solve the companion
// min rhs . y  s.t.  M^T y >= obj,  y >= 0.
class DualFeasibleLp {
 public:
  struct Entry {
    int row;
    Rational value;
  };

  explicit DualFeasibleLp(std::vector<Rational> rhs);

  int add_column(std::vector<Entry> column, Rational objective);

  enum class Status { optimal, unbounded, iteration_limit };
  Status solve(long max_pivots = 1'000'000);

  [[nodiscard]] std::size_t rows() const { return rhs_.size(); }
  [[nodiscard]] std::size_t columns() const { return columns_.size(); }
  [[nodiscard]] Rational objective() const;
  [[nodiscard]] std::vector<Rational> primal() const;  // w
  [[nodiscard]] std::vector<Rational> duals() const;   // y, one per row
  [[nodiscard]] long pivots() const { return pivots_; }

 private:
  struct Column {
    std::vector<Entry> entries;
    Rational objective;
  };

  [[nodiscard]] std::vector<Rational> row_prices() const;
  [[nodiscard]] std::vector<Rational> ftran(const Column& c) const;
  void pivot(std::size_t leave_row, int enter, const std::vector<Rational>& alpha);

  std::vector<Rational> rhs_;
  std::vector<Column> columns_;
  // Basis variable per row: -(i+1) for slack i, otherwise a column index.
  std::vector<int> basis_;
  std::vector<std::vector<Rational>> inverse_;
  std::vector<Rational> values_;  // basic variable values
  long pivots_ = 0;
};

}  // namespace relaysynth
