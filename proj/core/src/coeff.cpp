#include "wakimoto/coeff.hpp"

#include <algorithm>
#include <sstream>

#include "wakimoto/errors.hpp"

namespace wakimoto {
namespace {

bool term_less(const Coeff::Term& a, int ld, int wd) {
  return a.level_degree < ld || (a.level_degree == ld && a.weight_degree < wd);
}

Rational power(const Rational& base, int exp) {
  Rational r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Coeff::Coeff(const Rational& value) {
  if (value != 0) terms_.push_back({0, 0, value});
}

Coeff::Coeff(long value) : Coeff(Rational(value)) {}

Coeff Coeff::level() {
  Coeff c;
  c.terms_.push_back({1, 0, Rational(1)});
  return c;
}

Coeff Coeff::weight() {
  Coeff c;
  c.terms_.push_back({0, 1, Rational(1)});
  return c;
}

bool Coeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].level_degree == 0 &&
                            terms_[0].weight_degree == 0);
}

Rational Coeff::constant() const {
  if (!is_constant()) throw ValidationError("coefficient " + str() + " is not a constant");
  return terms_.empty() ? Rational(0) : terms_[0].value;
}

int Coeff::level_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.level_degree);
  return d;
}

int Coeff::weight_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.weight_degree);
  return d;
}

void Coeff::add_term(int ld, int wd, const Rational& value) {
  if (value == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), 0,
                             [&](const Term& t, int) { return term_less(t, ld, wd); });
  if (it != terms_.end() && it->level_degree == ld && it->weight_degree == wd) {
    it->value += value;
    if (it->value == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{ld, wd, value});
  }
}

Coeff Coeff::substitute(const std::optional<Rational>& level,
                        const std::optional<Rational>& weight) const {
  Coeff out;
  for (const auto& t : terms_) {
    Rational v = t.value;
    int ld = t.level_degree;
    int wd = t.weight_degree;
    if (level) {
      v *= power(*level, ld);
      ld = 0;
    }
    if (weight) {
      v *= power(*weight, wd);
      wd = 0;
    }
    out.add_term(ld, wd, v);
  }
  return out;
}

Coeff& Coeff::operator+=(const Coeff& other) {
  for (const auto& t : other.terms_) add_term(t.level_degree, t.weight_degree, t.value);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& other) {
  for (const auto& t : other.terms_) add_term(t.level_degree, t.weight_degree, -t.value);
  return *this;
}

Coeff& Coeff::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.value *= scalar;
  return *this;
}

Coeff& Coeff::operator*=(const Coeff& other) {
  if (other.is_constant()) return *this *= other.constant();
  if (is_constant()) {
    Rational s = constant();
    *this = other;
    return *this *= s;
  }
  Coeff out;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      out.add_term(a.level_degree + b.level_degree, a.weight_degree + b.weight_degree,
                   a.value * b.value);
    }
  }
  *this = std::move(out);
  return *this;
}

Coeff Coeff::operator-() const {
  Coeff out = *this;
  for (auto& t : out.terms_) t.value = -t.value;
  return out;
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.level_degree != y.level_degree || x.weight_degree != y.weight_degree ||
        x.value != y.value) {
      return false;
    }
  }
  return true;
}

std::string Coeff::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational v = t.value;
    const bool symbolic = t.level_degree > 0 || t.weight_degree > 0;
    if (first) {
      if (v < 0) {
        os << "-";
        v = -v;
      }
    } else {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    first = false;
    if (!symbolic || v != 1) os << v.get_str();
    auto var = [&](char name, int deg) {
      if (deg == 0) return;
      os << name;
      if (deg > 1) os << '^' << deg;
    };
    var('k', t.level_degree);
    var('c', t.weight_degree);
  }
  return os.str();
}

}  // namespace wakimoto
