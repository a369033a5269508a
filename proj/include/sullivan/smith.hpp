#pragma once

// Smith normal form of integer matrices, with the unimodular transforms:
// U * A * V = D, D diagonal with d1 | d2 | ... .

#include <algorithm>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
  std::vector<Integer> invariant_factors;  ///< nonzero diagonal entries
  IntMatrix u;                             ///< rows x rows
  IntMatrix v;                             ///< cols x cols
  std::size_t rank() const { return invariant_factors.size(); }
};

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IntMatrix c(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

inline SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithForm out;
  out.u = identity_matrix(rows);
  out.v = identity_matrix(cols);
  auto& u = out.u;
  auto& v = out.v;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  };
  // row_i -= q * row_t
  auto sub_row = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
    for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[t][j];
  };
  // col_j -= q * col_t
  auto sub_col = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < rows; ++i) a[i][j] -= q * a[i][t];
    for (std::size_t i = 0; i < cols; ++i) v[i][j] -= q * v[i][t];
  };
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        sub_row(i, t, q);
        if (a[i][t] != 0) {
          swap_rows(t, i);
          done = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        sub_col(j, t, q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          done = false;
        }
      }
      if (done) {
        for (std::size_t i = t + 1; i < rows && done; ++i)
          for (std::size_t j = t + 1; j < cols && done; ++j)
            if (a[i][j] % a[t][t] != 0) {
              sub_row(t, i, Integer(-1));
              done = false;
            }
      }
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    out.invariant_factors.push_back(a[t][t]);
    ++t;
  }
  return out;
}

}  // namespace sullivan
