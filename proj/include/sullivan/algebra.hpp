#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "sullivan/element.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultMonomialBudget = 200'000;

/// Free graded-commutative algebra with a differential given on generators.
/// Structural conditions are not enforced at construction; check_structure()
/// reports them.
class SullivanAlgebra {
 public:
  SullivanAlgebra(Universe u, std::vector<RElement> differential)
      : universe_(std::move(u)), d_(std::move(differential)) {
    if (!universe_) throw ValidationError("algebra without generators");
    if (d_.size() != universe_->size()) throw ValidationError("differential must be given on every generator");
    for (auto& e : d_) {
      if (!e.universe()) e = RElement(universe_);
      require_same(universe_, e.universe());
    }
  }

  const Universe& universe() const { return universe_; }
  const GeneratorSet& generators() const { return *universe_; }
  std::size_t size() const { return universe_->size(); }
  const RElement& d(std::size_t i) const { return d_[i]; }
  const RElement& d(const std::string& name) const { return d_[universe_->index_of(name)]; }
  const std::vector<RElement>& differential() const { return d_; }

  RElement gen(const std::string& name, std::uint32_t exp = 1) const {
    return RElement::generator(universe_, name, exp);
  }
  RElement gen(std::size_t index, std::uint32_t exp = 1) const {
    return RElement::generator(universe_, static_cast<std::uint32_t>(index), exp);
  }
  RElement zero() const { return RElement(universe_); }
  RElement scalar(const Rational& q) const { return RElement(universe_, Monomial(), q); }

  friend bool operator==(const SullivanAlgebra& a, const SullivanAlgebra& b) {
    if (!a.universe_->same_as(*b.universe_)) return false;
    for (std::size_t i = 0; i < a.d_.size(); ++i)
      if (!(a.d_[i] == b.d_[i])) return false;
    return true;
  }

 private:
  Universe universe_;
  std::vector<RElement> d_;
};

using AlgebraPtr = std::shared_ptr<const SullivanAlgebra>;

/// Extends d as a degree +1 derivation: d(ab) = d(a)b + (-1)^|a| a d(b).
template <class C>
Element<C> differentiate(const SullivanAlgebra& alg, const Element<C>& e) {
  if (e.universe()) require_same(alg.universe(), e.universe());
  const auto& u = alg.universe();
  const GeneratorSet& gs = *u;
  Element<C> out(u);
  for (const auto& [m, c] : e.terms()) {
    const auto& f = m.factors();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto [g, exp] = f[i];
      const RElement& dg = alg.d(g);
      if (!dg.is_zero()) {
        std::vector<Monomial::Factor> left(f.begin(), f.begin() + static_cast<long>(i));
        if (exp > 1) left.emplace_back(g, exp - 1);
        std::vector<Monomial::Factor> right(f.begin() + static_cast<long>(i) + 1, f.end());
        Monomial lm = Monomial::from_sorted(gs, std::move(left));
        Monomial rm = Monomial::from_sorted(gs, std::move(right));
        C scale = c * C(static_cast<long>(exp));
        if (prefix_degree % 2 != 0) scale = -scale;
        for (const auto& [dm, dc] : dg.terms()) {
          auto p1 = Monomial::multiply(gs, lm, dm);
          if (!p1) continue;
          auto p2 = Monomial::multiply(gs, p1->second, rm);
          if (!p2) continue;
          C t = scale * C(dc);
          if (p1->first * p2->first < 0) t = -t;
          out.add_term(p2->second, t);
        }
      }
      prefix_degree += gs[g].degree * static_cast<int>(exp);
    }
  }
  return out;
}

struct StructureReport {
  bool homogeneous = true;      ///< |d g| = |g| + 1
  bool lower_degree = true;     ///< d g only involves generators of smaller degree
  bool filtration = true;       ///< d g only involves generators earlier in the order
  bool d_squared_zero = true;
  bool minimal = true;          ///< no linear part in any d g
  bool simply_connected = true; ///< all generator degrees >= 2
  std::vector<std::string> failures;

  /// Sullivan conditions in the strict form (degree-lowering).
  bool ok() const { return homogeneous && lower_degree && filtration && d_squared_zero; }
  /// Sullivan conditions with respect to the generator order only.
  bool ok_filtered() const { return homogeneous && filtration && d_squared_zero; }
};

inline StructureReport check_structure(const SullivanAlgebra& alg) {
  StructureReport r;
  const auto& gs = alg.generators();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto& name = gs[i].name;
    if (gs[i].degree < 2) {
      r.simply_connected = false;
      r.failures.push_back("generator " + name + " has degree " + std::to_string(gs[i].degree));
    }
    const RElement& dg = alg.d(i);
    if (!dg.has_degree(gs[i].degree + 1)) {
      r.homogeneous = false;
      r.failures.push_back("d(" + name + ") is not homogeneous of degree " + std::to_string(gs[i].degree + 1));
    }
    bool lower = true, earlier = true, decomposable = true;
    for (const auto& [m, c] : dg.terms()) {
      std::uint32_t word = 0;
      for (const auto& [g, e] : m.factors()) {
        word += e;
        if (gs[g].degree >= gs[i].degree) lower = false;
        if (g >= i) earlier = false;
      }
      if (word < 2) decomposable = false;
    }
    if (!lower) {
      r.lower_degree = false;
      r.failures.push_back("d(" + name + ") involves generators of degree >= " + std::to_string(gs[i].degree));
    }
    if (!earlier) {
      r.filtration = false;
      r.failures.push_back("d(" + name + ") involves generators not preceding it");
    }
    if (!decomposable) {
      r.minimal = false;
      r.failures.push_back("d(" + name + ") has a linear part");
    }
    if (!differentiate(alg, dg).is_zero()) {
      r.d_squared_zero = false;
      r.failures.push_back("d(d(" + name + ")) != 0");
    }
  }
  return r;
}

/// All monomials of total degree k, ordered by Monomial::compare.
inline std::vector<Monomial> basis_of_degree(const GeneratorSet& gs, int k,
                                             std::size_t budget = kDefaultMonomialBudget) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  const std::size_t n = gs.size();
  // reachable[i][r]: degree r can be written with generators i..n-1.
  std::vector<std::vector<char>> reachable(n + 1, std::vector<char>(static_cast<std::size_t>(k) + 1, 0));
  reachable[n][0] = 1;
  for (std::size_t i = n; i-- > 0;) {
    const int deg = gs[i].degree;
    const int max_exp = gs[i].odd() ? 1 : k;
    for (int r = 0; r <= k; ++r) {
      for (int e = 0; e <= max_exp && e * deg <= r; ++e) {
        if (reachable[i + 1][static_cast<std::size_t>(r - e * deg)]) {
          reachable[i][static_cast<std::size_t>(r)] = 1;
          break;
        }
      }
    }
  }
  if (!reachable[0][static_cast<std::size_t>(k)]) return out;
  std::vector<Monomial::Factor> current;
  auto recurse = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      if (remaining == 0) {
        if (out.size() >= budget) {
          throw ResourceLimit("degree " + std::to_string(k) + " basis exceeds the monomial budget of " +
                              std::to_string(budget));
        }
        out.push_back(Monomial::from_sorted(gs, current));
      }
      return;
    }
    const int deg = gs[i].degree;
    const int max_exp = gs[i].odd() ? 1 : remaining / deg;
    for (int e = std::min(max_exp, remaining / deg); e >= 0; --e) {
      int rest = remaining - e * deg;
      if (!reachable[i + 1][static_cast<std::size_t>(rest)]) continue;
      if (e > 0) current.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e));
      self(self, i + 1, rest);
      if (e > 0) current.pop_back();
    }
  };
  recurse(recurse, 0, k);
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

inline std::vector<Monomial> basis_of_degree(const SullivanAlgebra& alg, int k,
                                             std::size_t budget = kDefaultMonomialBudget) {
  return basis_of_degree(alg.generators(), k, budget);
}

}  // namespace sullivan
