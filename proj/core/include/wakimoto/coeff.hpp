#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wakimoto/rational.hpp"

namespace wakimoto {

/// Polynomial with rational coefficients in two indeterminates: the level k
/// and the highest-weight coordinate c. Plain rationals are constants.
class Coeff {
public:
  struct Term {
    int level_degree = 0;
    int weight_degree = 0;
    Rational value;
  };

  Coeff() = default;
  Coeff(const Rational& value);  // NOLINT(google-explicit-constructor)
  Coeff(long value);             // NOLINT(google-explicit-constructor)

  static Coeff level();
  static Coeff weight();

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term; throws ValidationError if the polynomial is not constant.
  Rational constant() const;

  int level_degree() const;
  int weight_degree() const;
  const std::vector<Term>& terms() const { return terms_; }

  Coeff substitute(const std::optional<Rational>& level,
                   const std::optional<Rational>& weight) const;

  Coeff& operator+=(const Coeff& other);
  Coeff& operator-=(const Coeff& other);
  Coeff& operator*=(const Coeff& other);
  Coeff& operator*=(const Rational& scalar);

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend Coeff operator*(Coeff a, const Rational& b) { return a *= b; }
  friend Coeff operator*(const Rational& b, Coeff a) { return a *= b; }
  Coeff operator-() const;

  friend bool operator==(const Coeff& a, const Coeff& b);
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  /// Human rendering, e.g. "-1 - 2k", "1/2", "c + 3".
  std::string str() const;

private:
  void add_term(int level_degree, int weight_degree, const Rational& value);

  // Sorted by (level_degree, weight_degree); no zero values stored.
  std::vector<Term> terms_;
};

}  // namespace wakimoto
