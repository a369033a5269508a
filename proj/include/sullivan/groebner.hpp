#pragma once

// Buchberger's algorithm over Q with the sugar selection strategy, for a
// weighted graded reverse lexicographic order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultGroebnerBudget = 50'000;

using Exponents = std::vector<std::uint32_t>;

/// Weighted degree first; ties by reverse lexicographic comparison (the later
/// variable with the smaller exponent makes the larger monomial).
class WeightedGrevlex {
 public:
  explicit WeightedGrevlex(std::vector<std::uint32_t> weights) : w_(std::move(weights)) {}
  std::size_t variables() const { return w_.size(); }
  std::uint64_t weight(const Exponents& e) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += std::uint64_t{w_[i]} * e[i];
    return s;
  }
  /// Positive when a > b.
  int compare(const Exponents& a, const Exponents& b) const {
    auto wa = weight(a), wb = weight(b);
    if (wa != wb) return wa > wb ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

 private:
  std::vector<std::uint32_t> w_;
};

class GPoly {
 public:
  struct Greater {
    const WeightedGrevlex* order;
    bool operator()(const Exponents& a, const Exponents& b) const { return order->compare(a, b) > 0; }
  };
  using Terms = std::map<Exponents, Rational, Greater>;

  explicit GPoly(const WeightedGrevlex& o) : terms_(Greater{&o}) {}

  void add(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  const Exponents& lead() const { return terms_.begin()->first; }
  const Rational& lead_coeff() const { return terms_.begin()->second; }
  void make_monic() {
    if (is_zero()) return;
    Rational inv = 1 / lead_coeff();
    for (auto& [e, c] : terms_) c *= inv;
  }
  /// this -= c * x^shift * g
  void sub_scaled(const Rational& c, const Exponents& shift, const GPoly& g) {
    for (const auto& [e, gc] : g.terms_) {
      Exponents s = e;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
      add(s, -c * gc);
    }
  }

 private:
  Terms terms_;
};

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Full reduction of p modulo the polynomials in basis (all monic).
inline GPoly reduce(GPoly p, const std::vector<GPoly>& basis, const WeightedGrevlex& order) {
  GPoly out(order);
  while (!p.is_zero()) {
    const Exponents lt = p.lead();
    const Rational lc = p.lead_coeff();
    bool reduced = false;
    for (const auto& g : basis) {
      if (divides(g.lead(), lt)) {
        p.sub_scaled(lc, quotient(lt, g.lead()), g);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.add(lt, lc);
      p.add(lt, -lc);
    }
  }
  return out;
}

struct GroebnerResult {
  std::vector<GPoly> basis;  ///< reduced, monic, sorted by leading term (ascending)
  std::size_t pairs_processed = 0;
};

inline GroebnerResult groebner_basis(const std::vector<GPoly>& input, const WeightedGrevlex& order,
                                     std::size_t pair_budget = kDefaultGroebnerBudget) {
  struct Entry {
    GPoly poly;
    std::uint64_t sugar;
    bool alive = true;
  };
  std::vector<Entry> g;
  struct Pair {
    std::uint64_t sugar;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  auto pair_sugar = [&](std::size_t i, std::size_t j) {
    Exponents l = lcm(g[i].poly.lead(), g[j].poly.lead());
    return std::max(g[i].sugar + order.weight(quotient(l, g[i].poly.lead())),
                    g[j].sugar + order.weight(quotient(l, g[j].poly.lead())));
  };
  auto current = [&] {
    std::vector<GPoly> b;
    for (const auto& e : g)
      if (e.alive) b.push_back(e.poly);
    return b;
  };
  auto insert = [&](GPoly p, std::uint64_t sugar) {
    p.make_monic();
    std::size_t k = g.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (!g[i].alive) continue;
      if (divides(p.lead(), g[i].poly.lead())) g[i].alive = false;
    }
    g.push_back(Entry{std::move(p), sugar, true});
    for (std::size_t i = 0; i < k; ++i) pairs.push_back(Pair{0, i, k});
    for (auto& pr : pairs)
      if (pr.j == k) pr.sugar = pair_sugar(pr.i, pr.j);
  };
  for (const auto& f : input) {
    if (f.is_zero()) continue;
    std::uint64_t s = 0;
    for (const auto& [e, c] : f.terms()) s = std::max(s, order.weight(e));
    GPoly r = reduce(f, current(), order);
    if (!r.is_zero()) insert(std::move(r), s);
  }
  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = *best;
    pairs.erase(best);
    // Pairs involving a discarded polynomial are still needed when the
    // discarding element came later; keeping them is always sound.
    const auto& fi = g[pr.i].poly;
    const auto& fj = g[pr.j].poly;
    const Exponents& li = fi.lead();
    const Exponents& lj = fj.lead();
    bool coprime = true;
    for (std::size_t v = 0; v < li.size(); ++v)
      if (li[v] && lj[v]) coprime = false;
    if (coprime) continue;
    Exponents l = lcm(li, lj);
    // Chain criterion: some k with lead(k) | lcm whose pairs with i and j are
    // already settled.
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || !divides(g[k].poly.lead(), l)) continue;
      auto pending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& q) { return q.i == a && q.j == b; });
      };
      if (!pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    if (++processed > pair_budget) {
      throw ResourceLimit("Groebner computation exceeds the pair budget of " + std::to_string(pair_budget));
    }
    GPoly s(order);
    s.sub_scaled(-1, quotient(l, li), fi);
    s.sub_scaled(1, quotient(l, lj), fj);
    GPoly r = reduce(std::move(s), current(), order);
    if (!r.is_zero()) insert(std::move(r), pr.sugar);
  }
  // Minimal, then reduced.
  std::vector<GPoly> minimal;
  for (const auto& e : g) {
    if (!e.alive) continue;
    bool redundant = false;
    for (const auto& m : minimal)
      if (divides(m.lead(), e.poly.lead())) redundant = true;
    if (redundant) continue;
    std::vector<GPoly> keep;
    for (auto& m : minimal)
      if (!divides(e.poly.lead(), m.lead())) keep.push_back(std::move(m));
    keep.push_back(e.poly);
    minimal = std::move(keep);
  }
  std::vector<GPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    GPoly lead_part(order);
    lead_part.add(minimal[i].lead(), 1);
    GPoly tail = minimal[i];
    tail.add(minimal[i].lead(), -1);
    GPoly r = reduce(tail, others, order);
    for (const auto& [e, c] : r.terms()) lead_part.add(e, c);
    reduced.push_back(std::move(lead_part));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const GPoly& a, const GPoly& b) { return order.compare(a.lead(), b.lead()) < 0; });
  return GroebnerResult{std::move(reduced), processed};
}

}  // namespace sullivan
