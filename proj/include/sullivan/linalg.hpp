#pragma once

// Exact sparse linear algebra over Q. Rows are cleared to integers and
// reduced fraction-free (cross-multiplication followed by division by the row
// content). A modular rank over a 61-bit prime serves as a fast cross-check.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using SparseRow = std::vector<std::pair<int, Rational>>;   // sorted by column
using IntRow = std::vector<std::pair<int, Integer>>;       // sorted by column

namespace detail {

inline IntRow to_integer_row(const SparseRow& row) {
  Integer l = 1;
  for (const auto& [c, q] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, q] : row) {
    if (q == 0) continue;
    Integer v = q.get_num() * (l / q.get_den());
    out.emplace_back(c, std::move(v));
  }
  return out;
}

inline void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  bool flip = row.front().second < 0;
  if (g == 1 && !flip) return;
  for (auto& [c, v] : row) {
    if (g != 1) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    if (flip) v = -v;
  }
}

// a*row - b*pivot, dropping zeros.
inline IntRow combine(const Integer& a, const IntRow& row, const Integer& b, const IntRow& pivot) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  auto i = row.begin(), j = pivot.begin();
  while (i != row.end() || j != pivot.end()) {
    if (j == pivot.end() || (i != row.end() && i->first < j->first)) {
      out.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == row.end() || j->first < i->first) {
      out.emplace_back(j->first, -b * j->second);
      ++j;
    } else {
      Integer v = a * i->second - b * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Incremental row echelon form: each inserted row is reduced against the
/// existing pivots on its leading column until it is zero or lands on a new
/// pivot column.
class EchelonForm {
 public:
  /// Returns true when the row was independent of the rows inserted so far.
  bool insert(const SparseRow& row) { return insert_integer(detail::to_integer_row(row)); }

  bool insert_integer(IntRow r) {
    detail::make_primitive(r);
    while (!r.empty()) {
      auto it = pivots_.find(r.front().first);
      if (it == pivots_.end()) {
        int col = r.front().first;
        pivots_.emplace(col, std::move(r));
        return true;
      }
      Integer a = it->second.front().second;
      Integer b = r.front().second;
      Integer g = gcd(a, b);
      r = detail::combine(a / g, r, b / g, it->second);
      detail::make_primitive(r);
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<int, IntRow>& pivots() const { return pivots_; }

  /// Back-substitution for a system whose right-hand side sits in column
  /// rhs_col (greater than every unknown column). Free unknowns are set to 0.
  /// nullopt when some pivot lands on the right-hand side column.
  std::optional<std::map<int, Rational>> back_substitute(int rhs_col) const {
    if (pivots_.count(rhs_col)) return std::nullopt;
    std::map<int, Rational> x;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const IntRow& row = it->second;
      Rational acc = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        int c = row[k].first;
        if (c == rhs_col) {
          acc += Rational(row[k].second);
        } else if (auto f = x.find(c); f != x.end()) {
          acc -= Rational(row[k].second) * f->second;
        }
      }
      Rational v = acc / Rational(row.front().second);
      v.canonicalize();
      if (v != 0) x.emplace(it->first, v);
    }
    return x;
  }

 private:
  std::map<int, IntRow> pivots_;
};

inline std::size_t exact_rank(const std::vector<SparseRow>& rows) {
  EchelonForm ef;
  for (const auto& r : rows) ef.insert(r);
  return ef.rank();
}

inline constexpr std::uint64_t kRankPrime = (std::uint64_t{1} << 61) - 1;

/// Rank over GF(p). Never exceeds the rational rank; equal unless p divides
/// every maximal nonzero minor.
inline std::size_t modular_rank(const std::vector<SparseRow>& rows, std::uint64_t p = kRankPrime) {
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;
  auto mulmod = [p](u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % p); };
  auto powmod = [&](u64 a, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  auto reduce = [p](const Integer& z) -> u64 {
    return static_cast<u64>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p)));
  };
  std::map<int, std::vector<std::pair<int, u64>>> pivots;
  for (const auto& src : rows) {
    IntRow ir = detail::to_integer_row(src);
    std::vector<std::pair<int, u64>> r;
    for (const auto& [c, v] : ir) {
      u64 m = reduce(v);
      if (m) r.emplace_back(c, m);
    }
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) {
        u64 inv = powmod(r.front().second, p - 2);
        for (auto& e : r) e.second = mulmod(e.second, inv);
        int col = r.front().first;
        pivots.emplace(col, std::move(r));
        break;
      }
      u64 f = r.front().second;  // pivot rows are monic
      std::vector<std::pair<int, u64>> out;
      auto i = r.begin();
      auto j = it->second.begin();
      while (i != r.end() || j != it->second.end()) {
        if (j == it->second.end() || (i != r.end() && i->first < j->first)) {
          out.push_back(*i++);
        } else if (i == r.end() || j->first < i->first) {
          out.emplace_back(j->first, (p - mulmod(f, j->second)) % p);
          ++j;
        } else {
          u64 v = (i->second + p - mulmod(f, j->second)) % p;
          if (v) out.emplace_back(i->first, v);
          ++i;
          ++j;
        }
      }
      r = std::move(out);
    }
  }
  return pivots.size();
}

}  // namespace sullivan
