// Copyright 2026 The subsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force oracle for the search game: rows are all n! pure search
// orders, columns the hiding locations, payoff the prefix cost. Two
// backends: fictitious play with certified best-response bounds, and an
// exact LP solved by primal simplex with rational pivoting (Bland's rule).

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subsearch/errors.hpp"
#include "subsearch/game.hpp"

namespace subsearch {

namespace {

constexpr int kMatrixCap = 7;

std::vector<SearchOrder> all_orders(int n) {
  std::vector<SearchOrder> rows;
  SearchOrder order = SearchOrder::identity(n);
  do {
    rows.push_back(order);
  } while (std::next_permutation(order.perm.begin(), order.perm.end()));
  return rows;
}

std::vector<std::vector<Value>> payoff_matrix(
    const SetFunction& f, const std::vector<SearchOrder>& rows) {
  const int n = f.n();
  std::vector<std::vector<Value>> m;
  m.reserve(rows.size());
  for (const SearchOrder& row : rows) {
    std::vector<Value> costs(static_cast<size_t>(n), Value::zero(f.mode()));
    Mask prefix = 0;
    for (int s : row.perm) {
      prefix |= bit(s);
      costs[s] = f.eval(prefix);
    }
    m.push_back(std::move(costs));
  }
  return m;
}

MatrixGameResult fictitious_play(const SetFunction& f,
                                 const MatrixGameOptions& options) {
  const int n = f.n();
  const std::vector<SearchOrder> rows = all_orders(n);
  const size_t m = rows.size();
  const std::vector<std::vector<Value>> payoff_exact = payoff_matrix(f, rows);
  std::vector<std::vector<double>> payoff(m);
  for (size_t r = 0; r < m; ++r) {
    payoff[r].reserve(static_cast<size_t>(n));
    for (const Value& v : payoff_exact[r]) payoff[r].push_back(v.to_double());
  }

  // Cumulative payoffs against the opponent's play history. Initial beliefs
  // are uniform, used only to pick the first plays.
  std::vector<double> vs_hider(m, 0.0);   // per row
  std::vector<double> vs_searcher(static_cast<size_t>(n), 0.0);  // per column
  std::vector<long> row_count(m, 0);
  std::vector<long> col_count(static_cast<size_t>(n), 0);

  auto argmin_row = [&](const std::vector<double>& score) {
    size_t best = 0;
    for (size_t r = 1; r < m; ++r)
      if (score[r] < score[best]) best = r;
    return best;
  };
  auto argmax_col = [&](const std::vector<double>& score) {
    int best = 0;
    for (int s = 1; s < n; ++s)
      if (score[s] > score[best]) best = s;
    return best;
  };

  std::vector<double> uniform_row(m, 0.0);
  std::vector<double> uniform_col(static_cast<size_t>(n), 0.0);
  for (size_t r = 0; r < m; ++r) {
    for (int s = 0; s < n; ++s) {
      uniform_row[r] += payoff[r][s] / n;
      uniform_col[s] += payoff[r][s] / static_cast<double>(m);
    }
  }

  long t = 0;
  double lower = 0.0, upper = 0.0;
  while (t < options.iterations) {
    size_t r = t == 0 ? argmin_row(uniform_row) : argmin_row(vs_hider);
    int s = t == 0 ? argmax_col(uniform_col) : argmax_col(vs_searcher);
    ++row_count[r];
    ++col_count[s];
    ++t;
    for (int j = 0; j < n; ++j) vs_searcher[j] += payoff[r][j];
    for (size_t i = 0; i < m; ++i) vs_hider[i] += payoff[i][s];

    if (t % 128 == 0 || t == options.iterations) {
      // vs_hider[r] / t is the cost of row r against the empirical Hider
      // mixture; its minimum certifies a lower bound on the value. The
      // symmetric maximum certifies an upper bound.
      lower = vs_hider[argmin_row(vs_hider)] / static_cast<double>(t);
      upper = vs_searcher[argmax_col(vs_searcher)] / static_cast<double>(t);
      if (upper - lower <= options.tol) break;
    }
  }
  lower = vs_hider[argmin_row(vs_hider)] / static_cast<double>(t);
  upper = vs_searcher[argmax_col(vs_searcher)] / static_cast<double>(t);

  MatrixGameResult result;
  result.iterations = t;
  result.lower = Value::real(lower);
  result.upper = Value::real(upper);
  result.value = Value::real((lower + upper) / 2.0);
  for (size_t r = 0; r < m; ++r)
    if (row_count[r] > 0)
      result.searcher.push_back(
          {rows[r], Value::real(static_cast<double>(row_count[r]) /
                                static_cast<double>(t))});
  for (int s = 0; s < n; ++s)
    result.hider.push_back(Value::real(static_cast<double>(col_count[s]) /
                                       static_cast<double>(t)));
  return result;
}

Rational to_rational(const Value& v) {
  return v.is_rational() ? v.rat() : Rational(v.to_double());
}

// Searcher LP: maximize sum q_r subject to, for every location s,
// sum_r payoff[r][s] q_r <= 1 and q >= 0. The optimum q* scales to the
// equilibrium row mixture p = q* V with V = 1 / sum q*, and the duals of the
// location constraints scale to the Hider equilibrium.
MatrixGameResult exact_lp(const SetFunction& f) {
  const int n = f.n();
  const std::vector<SearchOrder> rows = all_orders(n);
  const size_t m = rows.size();
  const std::vector<std::vector<Value>> payoff_exact = payoff_matrix(f, rows);

  const size_t cols = m + static_cast<size_t>(n);  // variables + slacks
  // tableau[i] = one constraint row; last entry is the right-hand side.
  std::vector<std::vector<Rational>> tab(
      static_cast<size_t>(n), std::vector<Rational>(cols + 1, Rational(0)));
  for (int s = 0; s < n; ++s) {
    for (size_t r = 0; r < m; ++r)
      tab[s][r] = to_rational(payoff_exact[r][s]);
    tab[s][m + static_cast<size_t>(s)] = 1;
    tab[s][cols] = 1;
  }
  // Reduced costs c_j - z_j for the maximization; objective value in back.
  std::vector<Rational> reduced(cols + 1, Rational(0));
  for (size_t r = 0; r < m; ++r) reduced[r] = 1;
  std::vector<size_t> basis(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) basis[s] = m + static_cast<size_t>(s);

  while (true) {
    // Bland's rule: lowest-index column with positive reduced cost.
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (reduced[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    size_t leave = static_cast<size_t>(n);
    Rational best_ratio;
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][cols] / tab[i][enter];
      if (leave == static_cast<size_t>(n) || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == static_cast<size_t>(n))
      throw std::logic_error("game LP is unbounded");

    Rational pivot = tab[leave][enter];
    for (Rational& v : tab[leave]) v /= pivot;
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      Rational factor = tab[i][enter];
      for (size_t j = 0; j <= cols; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    if (reduced[enter] != 0) {
      Rational factor = reduced[enter];
      for (size_t j = 0; j <= cols; ++j) reduced[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  Rational objective = -reduced[cols];
  if (objective <= 0) throw std::logic_error("game LP degenerate objective");
  Rational value = 1 / objective;

  MatrixGameResult result;
  result.iterations = 0;
  result.value = Value::rational(value);
  result.lower = result.value;
  result.upper = result.value;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    if (basis[i] < m && tab[i][cols] != 0)
      result.searcher.push_back(
          {rows[basis[i]], Value::rational(tab[i][cols] * value)});
  }
  std::sort(result.searcher.begin(), result.searcher.end(),
            [](const auto& a, const auto& b) { return a.first.perm < b.first.perm; });
  for (int s = 0; s < n; ++s) {
    // Dual of constraint s is the negated reduced cost of its slack.
    Rational y = -reduced[m + static_cast<size_t>(s)];
    result.hider.push_back(Value::rational(y * value));
  }
  return result;
}

}  // namespace

MatrixGameResult matrix_game_solve(const SetFunction& f,
                                   const MatrixGameOptions& options) {
  if (f.n() > kMatrixCap)
    throw CapacityError("matrix game oracle enumerates n! rows; n <= 7");
  for (int s = 0; s < f.n(); ++s)
    if (f.eval(bit(s)).sign() <= 0)
      throw std::domain_error("game payoffs need positive singleton costs");
  if (options.method == MatrixGameMethod::kExactLp) return exact_lp(f);
  return fictitious_play(f, options);
}

}  // namespace subsearch
