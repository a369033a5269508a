#pragma once

// Text and JSON forms of elements and algebras.
//
// Element text: terms joined by + or -, each an optional rational coefficient
// followed by '*'-separated factors name or name^k, e.g. "x1^3*x2 - 1/2*y1*y2".
//
// Algebra JSON:
//   {"generators": [{"name": "x1", "degree": 8}, ...],
//    "differential": {"y1": [["1", "1", [["x1", 3], ["x2", 1]]]], ...}}
// Each term is [numerator, denominator, factors]; factors use generator names.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sullivan/algebra.hpp"

namespace sullivan {

using Json = nlohmann::ordered_json;

namespace detail {

class ElementParser {
 public:
  ElementParser(const Universe& u, std::string_view text) : u_(u), s_(text) {}

  RElement parse() {
    RElement out(u_);
    skip();
    if (pos_ == s_.size()) throw ParseError("empty element");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      out += term().scaled(Rational(sign));
    }
    return out;
  }

 private:
  RElement term() {
    Rational coeff = 1;
    RElement acc = RElement::one(u_);
    bool expect_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      coeff = parse_rational(s_.substr(start, pos_ - start));
      skip();
      if (peek() == '*') {
        ++pos_;
      } else {
        expect_factor = false;
      }
    }
    while (expect_factor) {
      skip();
      acc = acc * factor();
      skip();
      if (peek() == '*') {
        ++pos_;
      } else {
        break;
      }
    }
    return acc.scaled(coeff);
  }

  RElement factor() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
      if (pos_ == s_.size()) fail("unterminated '['");
      ++pos_;
    }
    if (pos_ == start) fail("expected a generator name");
    std::string name(s_.substr(start, pos_ - start));
    auto idx = u_->find(name);
    if (!idx) throw ParseError("unknown generator '" + name + "'");
    std::uint32_t exp = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t es = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (es == pos_) fail("expected an exponent");
      exp = static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(es, pos_ - es))));
    }
    if ((*u_)[static_cast<std::size_t>(*idx)].odd() && exp > 1) return RElement(u_);
    return RElement::generator(u_, static_cast<std::uint32_t>(*idx), exp);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  const Universe& u_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RElement parse_element(const Universe& u, std::string_view text) {
  return detail::ElementParser(u, text).parse();
}

inline Json element_to_json(const RElement& e) {
  Json terms = Json::array();
  const auto& gs = *e.universe();
  for (const auto& [m, c] : e.terms()) {
    Json factors = Json::array();
    for (const auto& [g, k] : m.factors()) factors.push_back(Json::array({gs[g].name, k}));
    terms.push_back(Json::array({c.get_num().get_str(), c.get_den().get_str(), factors}));
  }
  return terms;
}

inline RElement element_from_json(const Universe& u, const Json& j) {
  if (!j.is_array()) throw ParseError("element must be an array of terms");
  RElement out(u);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_array()) {
      throw ParseError("term must be [numerator, denominator, factors]");
    }
    Rational c(Integer(t[0].get<std::string>()), Integer(t[1].get<std::string>()));
    if (c.get_den() == 0) throw ParseError("zero denominator in term");
    c.canonicalize();
    RElement term = RElement::one(u);
    for (const auto& f : t[2]) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer()) {
        throw ParseError("factor must be [name, exponent]");
      }
      auto idx = u->find(f[0].get<std::string>());
      if (!idx) throw ParseError("unknown generator '" + f[0].get<std::string>() + "'");
      auto k = f[1].get<long>();
      if (k < 1) throw ParseError("exponents must be positive");
      if ((*u)[static_cast<std::size_t>(*idx)].odd() && k > 1) {
        term = RElement(u);
        break;
      }
      term = term * RElement::generator(u, static_cast<std::uint32_t>(*idx), static_cast<std::uint32_t>(k));
    }
    out += term.scaled(c);
  }
  return out;
}

inline Json algebra_to_json(const SullivanAlgebra& alg) {
  Json gens = Json::array();
  for (const auto& g : alg.generators().generators()) gens.push_back(Json{{"name", g.name}, {"degree", g.degree}});
  Json d = Json::object();
  for (std::size_t i = 0; i < alg.size(); ++i) d[alg.generators()[i].name] = element_to_json(alg.d(i));
  return Json{{"generators", gens}, {"differential", d}};
}

inline SullivanAlgebra algebra_from_json(const Json& j, int min_degree = 2) {
  try {
    if (!j.is_object() || !j.contains("generators") || !j.contains("differential")) {
      throw ParseError("algebra JSON needs 'generators' and 'differential'");
    }
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
    auto u = std::make_shared<const GeneratorSet>(std::move(gens), min_degree);
    std::vector<RElement> d(u->size(), RElement(u));
    for (const auto& [name, terms] : j.at("differential").items()) {
      auto idx = u->find(name);
      if (!idx) throw ParseError("differential given on unknown generator '" + name + "'");
      d[static_cast<std::size_t>(*idx)] = element_from_json(u, terms);
    }
    return SullivanAlgebra(u, std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed algebra JSON: ") + e.what());
  }
}

inline SullivanAlgebra algebra_from_string(const std::string& text, int min_degree = 2) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return algebra_from_json(j, min_degree);
}

/// Small algebras from literals: gens = {{"a",2},{"b",3}}, d = {{"b","a^2"}}.
inline AlgebraPtr make_algebra(const std::vector<Generator>& gens,
                               const std::vector<std::pair<std::string, std::string>>& d, int min_degree = 2) {
  auto u = std::make_shared<const GeneratorSet>(gens, min_degree);
  std::vector<RElement> diff(u->size(), RElement(u));
  for (const auto& [name, text] : d) diff[static_cast<std::size_t>(u->index_of(name))] = parse_element(u, text);
  return std::make_shared<const SullivanAlgebra>(u, std::move(diff));
}

}  // namespace sullivan
