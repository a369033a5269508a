#pragma once

// Sparse multivariate polynomials over Q in numbered unknowns. These carry the
// coefficients of generic morphisms and the equations of constraint systems.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using Var = std::uint32_t;

/// Product of unknowns, factors sorted by variable index, exponents >= 1.
class VarMonomial {
 public:
  using Factor = std::pair<Var, std::uint32_t>;

  VarMonomial() = default;
  explicit VarMonomial(Var v, std::uint32_t e = 1) {
    if (e > 0) factors_.emplace_back(v, e);
  }
  static VarMonomial from_factors(std::vector<Factor> f) {
    std::sort(f.begin(), f.end());
    VarMonomial m;
    for (const auto& [v, e] : f) {
      if (e == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == v) {
        m.factors_.back().second += e;
      } else {
        m.factors_.emplace_back(v, e);
      }
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }
  std::uint32_t exponent(Var v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0},
                               [](const Factor& a, const Factor& b) { return a.first < b.first; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }
  bool contains(Var v) const { return exponent(v) != 0; }

  friend VarMonomial operator*(const VarMonomial& a, const VarMonomial& b) {
    VarMonomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first < j->first) {
        r.factors_.push_back(*i++);
      } else if (j->first < i->first) {
        r.factors_.push_back(*j++);
      } else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
  }

  /// Removes v entirely.
  VarMonomial without(Var v) const {
    VarMonomial r;
    for (const auto& f : factors_)
      if (f.first != v) r.factors_.push_back(f);
    return r;
  }

  /// Exact quotient; caller guarantees divisibility.
  VarMonomial divided_by(const VarMonomial& d) const {
    VarMonomial r;
    auto j = d.factors_.begin();
    for (const auto& f : factors_) {
      std::uint32_t e = f.second;
      if (j != d.factors_.end() && j->first == f.first) {
        e -= j->second;
        ++j;
      }
      if (e > 0) r.factors_.emplace_back(f.first, e);
    }
    return r;
  }

  /// Graded order: higher total degree first, then lexicographic with lower
  /// variable index dominating. Returns <0 if a sorts before b.
  static int compare(const VarMonomial& a, const VarMonomial& b) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? -1 : 1;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
      if (i->first != j->first) return i->first < j->first ? -1 : 1;
      if (i->second != j->second) return i->second > j->second ? -1 : 1;
    }
    if (i == a.factors_.end() && j == b.factors_.end()) return 0;
    return i != a.factors_.end() ? -1 : 1;
  }

  friend bool operator==(const VarMonomial&, const VarMonomial&) = default;
  friend bool operator<(const VarMonomial& a, const VarMonomial& b) { return compare(a, b) < 0; }

 private:
  std::vector<Factor> factors_;
};

/// Polynomial with terms kept sorted by VarMonomial::compare (leading first)
/// and no zero coefficients.
class Polynomial {
 public:
  struct Term {
    VarMonomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit scalars are convenient
    if (c != 0) terms_.push_back({VarMonomial(), c});
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(Var v) {
    Polynomial p;
    p.terms_.push_back({VarMonomial(v), Rational(1)});
    return p;
  }
  static Polynomial monomial(const Rational& c, VarMonomial m) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({std::move(m), c});
    return p;
  }
  /// Builds from arbitrary terms, combining duplicates.
  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const {
    for (const auto& t : terms_)
      if (t.mono.is_one()) return t.coeff;
    return Rational(0);
  }
  const Term& leading() const { return terms_.front(); }

  bool contains(Var v) const {
    for (const auto& t : terms_)
      if (t.mono.contains(v)) return true;
    return false;
  }
  std::uint32_t degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
  }
  std::set<Var> variables() const {
    std::set<Var> out;
    for (const auto& t : terms_)
      for (const auto& f : t.mono.factors()) out.insert(f.first);
    return out;
  }
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.total_degree(); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, -1); }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
    if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(std::move(acc));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial pow(std::uint32_t e) const {
    Polynomial result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Replaces every occurrence of v by q.
  Polynomial substitute(Var v, const Polynomial& q) const {
    if (!contains(v)) return *this;
    std::vector<Polynomial> powers{Polynomial(1)};
    std::vector<Term> acc;
    for (const auto& t : terms_) {
      auto e = t.mono.exponent(v);
      if (e == 0) {
        acc.push_back(t);
        continue;
      }
      while (powers.size() <= e) powers.push_back(powers.back() * q);
      VarMonomial rest = t.mono.without(v);
      for (const auto& s : powers[e].terms_) acc.push_back({rest * s.mono, t.coeff * s.coeff});
    }
    return from_terms(std::move(acc));
  }

  Rational evaluate(const std::function<Rational(Var)>& value) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational prod = t.coeff;
      for (const auto& [v, e] : t.mono.factors()) {
        Rational x = value(v);
        Rational p = 1;
        for (std::uint32_t k = 0; k < e; ++k) p *= x;
        prod *= p;
      }
      sum += prod;
    }
    return sum;
  }

  /// Largest monomial in the given variables dividing every term.
  VarMonomial monomial_content(const std::function<bool(Var)>& eligible) const {
    if (terms_.empty()) return {};
    std::map<Var, std::uint32_t> common;
    for (const auto& [v, e] : terms_[0].mono.factors())
      if (eligible(v)) common[v] = e;
    for (std::size_t i = 1; i < terms_.size() && !common.empty(); ++i) {
      for (auto it = common.begin(); it != common.end();) {
        auto e = terms_[i].mono.exponent(it->first);
        if (e == 0) {
          it = common.erase(it);
        } else {
          it->second = std::min(it->second, e);
          ++it;
        }
      }
    }
    return VarMonomial::from_factors({common.begin(), common.end()});
  }

  Polynomial divided_by_monomial(const VarMonomial& m) const {
    if (m.is_one()) return *this;
    Polynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.divided_by(m), t.coeff});
    r.canonicalize();
    return r;
  }

  /// Scales so the leading coefficient is 1.
  Polynomial monic() const {
    if (terms_.empty() || terms_[0].coeff == 1) return *this;
    return scaled(Rational(1) / terms_[0].coeff);
  }

  static int compare(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = VarMonomial::compare(a.terms_[i].mono, b.terms_[i].mono);
      if (c != 0) return c;
      int k = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
      if (k != 0) return k < 0 ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() > b.size() ? -1 : 1;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return compare(a, b) == 0; }
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return compare(a, b) < 0; }

  std::string to_string(const std::function<std::string(Var)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      bool unit = (c == 1);
      if (!unit || t.mono.is_one()) out += c.get_str();
      bool star = !unit;
      for (const auto& [v, e] : t.mono.factors()) {
        if (star) out += "*";
        out += name(v);
        if (e > 1) out += "^" + std::to_string(e);
        star = true;
      }
    }
    return out;
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return VarMonomial::compare(a.mono, b.mono) < 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, int sign) {
    Polynomial r;
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int c = (i == a.terms_.end()) ? 1 : (j == b.terms_.end()) ? -1 : VarMonomial::compare(i->mono, j->mono);
      if (c < 0) {
        r.terms_.push_back(*i++);
      } else if (c > 0) {
        r.terms_.push_back({j->mono, sign > 0 ? j->coeff : Rational(-j->coeff)});
        ++j;
      } else {
        Rational s = sign > 0 ? Rational(i->coeff + j->coeff) : Rational(i->coeff - j->coeff);
        if (s != 0) r.terms_.push_back({i->mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// Coefficient-ring glue used by Element<C>.
inline bool is_zero(const Rational& c) { return c == 0; }
inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

}  // namespace sullivan
