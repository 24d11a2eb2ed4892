#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/fock.hpp"
#include "wakimoto/lie.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

/// (λ̄, k, d): λ̄ = value on H_{0,1}, level k, and the coefficient of δ.
struct Weight {
  Rational finite = 0;
  Rational level = 0;
  Rational delta = 0;

  Weight operator+(const Weight& o) const {
    return {finite + o.finite, level + o.level, delta + o.delta};
  }
  Weight operator-(const Weight& o) const {
    return {finite - o.finite, level - o.level, delta - o.delta};
  }
  Weight operator*(const Rational& s) const { return {finite * s, level * s, delta * s}; }
  bool operator==(const Weight&) const = default;
  std::string str() const;
};

/// s·α + n·δ with n = ticks/N. Imaginary roots have s = 0.
struct AffineRoot {
  int alpha = 0;
  int ticks = 0;
  int multiplicity = 1;
  bool imaginary = false;
  bool operator==(const AffineRoot&) const = default;
};

/// Root data of ĝ^σ for rank-1 g₀. Positive roots: n > 0, or n = 0 and s > 0.
class RootDatum {
public:
  RootDatum(const LieAlgebra& g, const Automorphism& sigma);

  int order() const { return order_; }
  /// (α, α) with α the simple root of g₀.
  const Rational& alpha_norm() const { return alpha_norm_; }
  /// α(H_{0,1}).
  const Rational& alpha_value() const { return alpha_value_; }

  Weight weight(const AffineRoot& r) const;
  /// (λ̄₁, k₁, d₁)·(λ̄₂, k₂, d₂) = (λ̄₁, λ̄₂) + k₁d₂ + k₂d₁.
  Rational pair(const Weight& x, const Weight& y) const;

  /// Positive roots with n ≤ max_ticks/N, real and imaginary.
  std::vector<AffineRoot> positive_roots(int max_ticks) const;
  std::vector<AffineRoot> positive_real_roots(int max_ticks) const;
  /// Indecomposable positive roots.
  std::vector<AffineRoot> simple_roots() const;
  /// ⟨ρ, α_i^∨⟩ = 1 on the simple coroots, δ-coefficient 0.
  Weight rho() const;

private:
  int order_;
  Rational alpha_norm_;
  Rational alpha_value_;
  Rational h0_gram_;
  std::vector<std::pair<int, int>> real_families_;  // (s, residue of n·N)
  std::vector<std::pair<int, int>> imaginary_;      // (residue, multiplicity)
};

/// Truncated formal character: (α-shift s, degree d in ticks) ↦ dim of the
/// weight space χ + sα − (d/N)δ. Only d ≤ max_ticks and s ≥ alpha_floor are kept.
struct CharacterSeries {
  int order = 1;
  int max_ticks = 0;
  std::optional<int> alpha_floor;
  std::map<std::pair<int, int>, Integer> coeffs;

  Integer at(int alpha, int ticks) const;
  Integer total_at_degree(int ticks) const;
  bool operator==(const CharacterSeries& o) const { return coeffs == o.coeffs; }

  /// Entries where the two series differ: (key, lhs, rhs).
  std::vector<std::tuple<std::pair<int, int>, Integer, Integer>> diff(
      const CharacterSeries& other) const;
  std::string to_json(int indent = 2) const;
};

/// Bucket basis_up_to_degree(space, t) by weight.
CharacterSeries fock_character(const FockSpace& space, const Truncation& t);

/// e^χ Π_{β>0} (1 − e^{−β})^{−mult β}.
CharacterSeries verma_character(const RootDatum& datum, int max_ticks, int alpha_floor);
/// e^χ Π_{β>0 real} (1 − e^{−β})^{−1}.
CharacterSeries kk_character(const RootDatum& datum, int max_ticks, int alpha_floor);

/// 2(χ + ρ, β) = n (β, β).
bool kk_equation_check(const RootDatum& datum, const Weight& chi, const AffineRoot& beta, int n);

struct GenericityCertificate {
  bool generic = true;
  bool vacuous = false;  // bound 0: nothing was scanned
  int bound = 0;
  std::size_t roots_scanned = 0;
  std::optional<std::pair<AffineRoot, int>> witness;
};

/// Bounded scan: every positive real root with n-part ≤ bound and every
/// n = 1..bound. A bounded certificate, not a proof of genericity.
GenericityCertificate is_generic(const RootDatum& datum, const Weight& chi, int bound);

std::string root_name(const AffineRoot& r, int order);

}  // namespace wakimoto
