#pragma once

// Free graded-commutative algebra on a finite generator set: generators,
// monomials in canonical (index-sorted) form, and elements with coefficients
// in Q or in a polynomial ring of unknowns.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/polynomial.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

struct Generator {
  std::string name;
  int degree = 0;
  bool odd() const { return degree % 2 != 0; }
};

/// Ordered generator roster shared by every element built over it.
class GeneratorSet {
 public:
  /// min_degree is 2 for simply connected algebras; tilde extensions of
  /// low-dimensional models may need degree-1 generators.
  explicit GeneratorSet(std::vector<Generator> gens, int min_degree = 2) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      if (g.name.empty()) throw ValidationError("generator with empty name");
      if (g.degree < min_degree) {
        throw ValidationError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                              " (minimum " + std::to_string(min_degree) + ")");
      }
      if (!index_.emplace(g.name, static_cast<int>(i)).second) {
        throw ValidationError("duplicate generator name '" + g.name + "'");
      }
    }
  }

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw ValidationError("unknown generator '" + name + "'");
    return *i;
  }
  bool same_as(const GeneratorSet& other) const {
    if (gens_.size() != other.gens_.size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree) return false;
    return true;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> index_;
};

using Universe = std::shared_ptr<const GeneratorSet>;

inline void require_same(const Universe& a, const Universe& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw DomainMismatch("elements live over different generator sets");
}

/// Canonical monomial: factors sorted by generator index; odd generators have
/// exponent 1. Carries its total degree.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;

  static Monomial generator(const GeneratorSet& gs, std::uint32_t index, std::uint32_t exp = 1) {
    Monomial m;
    if (exp == 0) return m;
    if (gs[index].odd() && exp > 1) throw ValidationError("odd generator raised to a power > 1");
    m.factors_.emplace_back(index, exp);
    m.degree_ = gs[index].degree * static_cast<int>(exp);
    return m;
  }

  /// Builds a monomial from sorted, duplicate-free factors.
  static Monomial from_sorted(const GeneratorSet& gs, std::vector<Factor> f) {
    Monomial m;
    m.factors_ = std::move(f);
    for (const auto& [g, e] : m.factors_) m.degree_ += gs[g].degree * static_cast<int>(e);
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(std::uint32_t g) const {
    for (const auto& [i, e] : factors_)
      if (i == g) return e;
    return 0;
  }

  /// Degree first (ascending); then exponent vectors in generator-index order,
  /// larger exponent first.
  static int compare(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
      if (i->first != j->first) return i->first < j->first ? -1 : 1;
      if (i->second != j->second) return i->second > j->second ? -1 : 1;
    }
    if (i == a.factors_.end() && j == b.factors_.end()) return 0;
    return i != a.factors_.end() ? -1 : 1;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

  /// Graded-commutative product. Returns the Koszul sign and the canonical
  /// product, or nullopt when an odd generator would repeat.
  static std::optional<std::pair<int, Monomial>> multiply(const GeneratorSet& gs, const Monomial& a,
                                                          const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    r.degree_ = a.degree_ + b.degree_;
    // Moving an odd factor of b leftwards past each odd factor of a with a
    // larger index costs one sign.
    int odd_a_remaining = 0;
    for (const auto& [g, e] : a.factors_)
      if (gs[g].odd()) ++odd_a_remaining;
    int transpositions = 0;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
        if (gs[i->first].odd()) --odd_a_remaining;
        r.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->first < i->first) {
        if (gs[j->first].odd()) transpositions += odd_a_remaining;
        r.factors_.push_back(*j++);
      } else {
        if (gs[i->first].odd()) return std::nullopt;
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return std::make_pair(transpositions % 2 == 0 ? 1 : -1, std::move(r));
  }

  std::string to_string(const GeneratorSet& gs) const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (k) out += "*";
      out += gs[factors_[k].first].name;
      if (factors_[k].second > 1) out += "^" + std::to_string(factors_[k].second);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) < 0; }
};

/// Finite sum of monomials with nonzero coefficients in C (Rational or
/// Polynomial).
template <class C>
class Element {
 public:
  using Terms = std::map<Monomial, C, MonomialLess>;

  Element() = default;
  explicit Element(Universe u) : universe_(std::move(u)) {}
  Element(Universe u, const Monomial& m, C c) : universe_(std::move(u)) { add_term(m, std::move(c)); }

  static Element one(Universe u) { return Element(std::move(u), Monomial(), C(1)); }
  static Element generator(Universe u, std::uint32_t index, std::uint32_t exp = 1) {
    auto m = Monomial::generator(*u, index, exp);
    return Element(std::move(u), m, C(1));
  }
  static Element generator(Universe u, const std::string& name, std::uint32_t exp = 1) {
    auto i = u->index_of(name);
    return generator(std::move(u), static_cast<std::uint32_t>(i), exp);
  }

  const Universe& universe() const { return universe_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (sullivan::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sullivan::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Zero counts as homogeneous of every degree.
  bool has_degree(int k) const {
    for (const auto& [m, c] : terms_)
      if (m.degree() != k) return false;
    return true;
  }
  bool is_homogeneous() const { return terms_.empty() || has_degree(terms_.begin()->first.degree()); }
  /// Degree shared by all monomials; nullopt for zero or mixed degrees.
  std::optional<int> degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.begin()->first.degree();
  }

  Element operator-() const {
    Element r(universe_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Element& operator+=(const Element& b) {
    adopt(b);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  Element& operator-=(const Element& b) {
    adopt(b);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }

  Element scaled(const C& s) const {
    Element r(universe_);
    if (sullivan::is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  friend Element operator*(const Element& a, const Element& b) {
    if (!a.universe_ || !b.universe_) {
      if (a.is_zero() || b.is_zero()) return Element(a.universe_ ? a.universe_ : b.universe_);
    }
    require_same(a.universe_, b.universe_);
    Element r(a.universe_);
    const GeneratorSet& gs = *a.universe_;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto prod = Monomial::multiply(gs, ma, mb);
        if (!prod) continue;
        C c = ca * cb;
        if (prod->first < 0) c = -c;
        r.add_term(prod->second, c);
      }
    }
    return r;
  }
  Element& operator*=(const Element& b) { return *this = *this * b; }

  Element pow(std::uint32_t e) const {
    Element result = one(universe_);
    for (std::uint32_t k = 0; k < e; ++k) result *= *this;
    return result;
  }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.universe_ != b.universe_ && (!a.universe_ || !b.universe_ || !a.universe_->same_as(*b.universe_)))
      return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if constexpr (std::is_same_v<C, Rational>) {
        Rational a = abs(c);
        bool neg = c < 0;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        if (a != 1 || m.is_one()) os << a.get_str() << (m.is_one() ? "" : "*");
      } else {
        os << (first ? "" : " + ") << "(" << c.to_string([](Var v) { return "u" + std::to_string(v); })
           << ")" << (m.is_one() ? "" : "*");
      }
      if (!m.is_one()) os << m.to_string(*universe_);
      first = false;
    }
    return os.str();
  }

 private:
  void adopt(const Element& b) {
    if (!universe_) {
      universe_ = b.universe_;
      return;
    }
    if (b.universe_) require_same(universe_, b.universe_);
  }

  Universe universe_;
  Terms terms_;
};

using RElement = Element<Rational>;
using PElement = Element<Polynomial>;

inline PElement lift(const RElement& e) {
  PElement r(e.universe());
  for (const auto& [m, c] : e.terms()) r.add_term(m, Polynomial(c));
  return r;
}

/// Monomial by name/exponent pairs, e.g. {{"x1",3},{"x2",1}}.
inline Monomial make_monomial(const GeneratorSet& gs, const std::vector<std::pair<std::string, std::uint32_t>>& f,
                              int* sign = nullptr) {
  Monomial m;
  int s = 1;
  for (const auto& [name, e] : f) {
    auto g = Monomial::generator(gs, static_cast<std::uint32_t>(gs.index_of(name)), e);
    auto p = Monomial::multiply(gs, m, g);
    if (!p) {
      if (sign) *sign = 0;
      return Monomial();
    }
    s *= p->first;
    m = p->second;
  }
  if (sign) *sign = s;
  return m;
}

}  // namespace sullivan
