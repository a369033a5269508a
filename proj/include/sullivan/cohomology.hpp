#pragma once

#include <map>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/linalg.hpp"

namespace sullivan {

struct ExactnessAnswer {
  bool exact = false;
  RElement preimage;   ///< d(preimage) == target when exact
  std::string reason;  ///< why not exact
  explicit operator bool() const { return exact; }
};

enum class RankMethod { exact, modular };

namespace detail {

/// Columns d(b) for b in `domain`, with target monomials numbered on the fly.
struct DifferentialColumns {
  std::vector<SparseRow> columns;
  std::map<Monomial, int, MonomialLess> row_index;
};

inline DifferentialColumns differential_columns(const SullivanAlgebra& alg, const std::vector<Monomial>& domain) {
  DifferentialColumns out;
  out.columns.reserve(domain.size());
  for (const auto& m : domain) {
    RElement dm = differentiate(alg, RElement(alg.universe(), m, Rational(1)));
    SparseRow col;
    for (const auto& [tm, c] : dm.terms()) {
      auto [it, inserted] = out.row_index.emplace(tm, static_cast<int>(out.row_index.size()));
      col.emplace_back(it->second, c);
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace detail

/// Decides whether e = d(p) for some p, returning such a p. Exactness implies
/// closedness, which is tested first.
inline ExactnessAnswer solve_exactness(const SullivanAlgebra& alg, const RElement& e,
                                       std::size_t budget = kDefaultMonomialBudget) {
  require_same(alg.universe(), e.universe() ? e.universe() : alg.universe());
  ExactnessAnswer ans;
  ans.preimage = alg.zero();
  if (e.is_zero()) {
    ans.exact = true;
    return ans;
  }
  auto k = e.degree();
  if (!k) throw ValidationError("solve_exactness needs a homogeneous element");
  if (!differentiate(alg, e).is_zero()) {
    ans.reason = "not closed";
    return ans;
  }
  auto domain = basis_of_degree(alg, *k - 1, budget);
  if (domain.empty()) {
    ans.reason = "degree " + std::to_string(*k - 1) + " is zero";
    return ans;
  }
  auto cols = detail::differential_columns(alg, domain);
  for (const auto& [m, c] : e.terms()) {
    if (!cols.row_index.count(m)) {
      ans.reason = "monomial " + m.to_string(alg.generators()) + " is not hit by d";
      return ans;
    }
  }
  // Row-major system A x = e, right-hand side in the last column.
  const int rhs = static_cast<int>(domain.size());
  std::vector<SparseRow> rows(cols.row_index.size());
  for (std::size_t j = 0; j < cols.columns.size(); ++j)
    for (const auto& [r, c] : cols.columns[j]) rows[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(j), c);
  for (const auto& [m, c] : e.terms()) rows[static_cast<std::size_t>(cols.row_index.at(m))].emplace_back(rhs, c);
  EchelonForm ef;
  for (auto& r : rows) ef.insert(r);
  auto sol = ef.back_substitute(rhs);
  if (!sol) {
    ans.reason = "inconsistent linear system";
    return ans;
  }
  for (const auto& [j, v] : *sol) ans.preimage.add_term(domain[static_cast<std::size_t>(j)], v);
  if (!(differentiate(alg, ans.preimage) == e)) {
    throw InvariantViolation("exactness solver returned a wrong preimage");
  }
  ans.exact = true;
  return ans;
}

/// Rank of d from degree k into degree k+1.
inline std::size_t differential_rank(const SullivanAlgebra& alg, int k, std::size_t budget = kDefaultMonomialBudget,
                                     RankMethod method = RankMethod::exact) {
  if (k < 0) return 0;
  auto domain = basis_of_degree(alg, k, budget);
  auto cols = detail::differential_columns(alg, domain);
  return method == RankMethod::exact ? exact_rank(cols.columns) : modular_rank(cols.columns);
}

inline std::size_t cohomology_dim(const SullivanAlgebra& alg, int k, std::size_t budget = kDefaultMonomialBudget,
                                  RankMethod method = RankMethod::exact) {
  if (k < 0) return 0;
  std::size_t dim = basis_of_degree(alg, k, budget).size();
  std::size_t out_rank = differential_rank(alg, k, budget, method);
  std::size_t in_rank = differential_rank(alg, k - 1, budget, method);
  return dim - out_rank - in_rank;
}

/// Finds a scalar a with e - a*x exact (x closed, same degree), plus a witness
/// m with e = a*x + d(m). nullopt when no such scalar exists.
struct ScalarWitness {
  Rational scalar;
  RElement witness;
};

inline std::optional<ScalarWitness> scalar_on_class(const SullivanAlgebra& alg, const RElement& e, const RElement& x,
                                                    std::size_t budget = kDefaultMonomialBudget) {
  auto kx = x.degree();
  if (!kx) throw ValidationError("scalar_on_class needs a nonzero homogeneous class representative");
  if (!e.has_degree(*kx)) throw ValidationError("element and class representative differ in degree");
  auto domain = basis_of_degree(alg, *kx - 1, budget);
  auto cols = detail::differential_columns(alg, domain);
  auto index = [&](const Monomial& m) {
    auto [it, inserted] = cols.row_index.emplace(m, static_cast<int>(cols.row_index.size()));
    return it->second;
  };
  for (const auto& [m, c] : x.terms()) index(m);
  for (const auto& [m, c] : e.terms()) index(m);
  // Unknowns: preimage coordinates 0..n-1, the scalar at column n.
  const int scol = static_cast<int>(domain.size());
  const int rhs = scol + 1;
  std::vector<SparseRow> rows(cols.row_index.size());
  for (std::size_t j = 0; j < cols.columns.size(); ++j)
    for (const auto& [r, c] : cols.columns[j]) rows[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(j), c);
  for (const auto& [m, c] : x.terms()) rows[static_cast<std::size_t>(cols.row_index.at(m))].emplace_back(scol, c);
  for (const auto& [m, c] : e.terms()) rows[static_cast<std::size_t>(cols.row_index.at(m))].emplace_back(rhs, c);
  EchelonForm ef;
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ef.insert(r);
  }
  auto sol = ef.back_substitute(rhs);
  if (!sol) return std::nullopt;
  ScalarWitness w{Rational(0), alg.zero()};
  for (const auto& [j, v] : *sol) {
    if (j == scol) {
      w.scalar = v;
    } else {
      w.witness.add_term(domain[static_cast<std::size_t>(j)], v);
    }
  }
  if (!(x.scaled(w.scalar) + differentiate(alg, w.witness) == e)) {
    throw InvariantViolation("scalar_on_class produced an inconsistent witness");
  }
  return w;
}

}  // namespace sullivan
