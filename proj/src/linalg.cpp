#include "asmas/linalg.hpp"

#include <deque>

#include "asmas/error.hpp"

namespace asmas {

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("singular-system", "linear system is singular");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    Rational inv = 1 / a[c][c];
    for (size_t j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = c; j < n; ++j)
        if (a[c][j] != 0) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

std::vector<Rational> solve_until(const SparseRows& rows, const std::vector<bool>& safe,
                                  const std::vector<bool>& target) {
  const size_t n = rows.size();
  std::vector<std::vector<size_t>> pred(n);
  std::vector<bool> leaks(n, false);
  for (size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (auto& [j, p] : rows[i])
      if (p > 0) {
        pred[j].push_back(i);
        sum += p;
      }
    leaks[i] = sum < 1;
  }
  auto is_mid = [&](size_t i) { return safe[i] && !target[i]; };
  // prob > 0: backward from target through safe states
  std::vector<bool> pos(n, false);
  std::deque<size_t> q;
  for (size_t i = 0; i < n; ++i)
    if (target[i]) {
      pos[i] = true;
      q.push_back(i);
    }
  while (!q.empty()) {
    size_t j = q.front();
    q.pop_front();
    for (size_t i : pred[j])
      if (!pos[i] && is_mid(i)) {
        pos[i] = true;
        q.push_back(i);
      }
  }
  // prob < 1: backward from prob-0 or leaking states through mid states
  std::vector<bool> below(n, false);
  for (size_t i = 0; i < n; ++i)
    if (!pos[i] || (is_mid(i) && leaks[i])) {
      below[i] = true;
      q.push_back(i);
    }
  while (!q.empty()) {
    size_t j = q.front();
    q.pop_front();
    for (size_t i : pred[j])
      if (!below[i] && is_mid(i)) {
        below[i] = true;
        q.push_back(i);
      }
  }
  std::vector<Rational> x(n, 0);
  std::vector<long> var(n, -1);
  std::vector<size_t> unknown;
  for (size_t i = 0; i < n; ++i) {
    if (!pos[i]) continue;
    if (target[i] || !below[i]) {
      x[i] = 1;
    } else {
      var[i] = static_cast<long>(unknown.size());
      unknown.push_back(i);
    }
  }
  if (unknown.empty()) return x;
  const size_t m = unknown.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, 0));
  std::vector<Rational> b(m, 0);
  for (size_t r = 0; r < m; ++r) {
    size_t i = unknown[r];
    a[r][r] += 1;
    for (auto& [j, p] : rows[i]) {
      if (var[j] >= 0) a[r][var[j]] -= p;
      else b[r] += p * x[j];
    }
  }
  auto sol = solve_linear(std::move(a), std::move(b));
  for (size_t r = 0; r < m; ++r) x[unknown[r]] = sol[r];
  return x;
}

std::vector<Rational> stationary(const SparseRows& rows) {
  const size_t n = rows.size();
  if (n == 0) return {};
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (auto& [j, p] : rows[i]) {
      a[j][i] += p;
      sum += p;
    }
    if (sum != 1) throw Error("internal-error", "stationary distribution requested on a non-stochastic chain");
    a[i][i] -= 1;
  }
  std::vector<Rational> b(n, 0);
  for (size_t j = 0; j < n; ++j) a[n - 1][j] = 1;
  b[n - 1] = 1;
  return solve_linear(std::move(a), std::move(b));
}

}  // namespace asmas
