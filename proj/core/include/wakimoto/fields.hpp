#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wakimoto/coeff.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/lie.hpp"

namespace wakimoto {

/// ∂_z^derivs x(z) for a basic field x of the given family and label.
struct FieldFactor {
  Family family = Family::A;
  int label = 0;
  int derivs = 0;
  auto operator<=>(const FieldFactor&) const = default;
};

/// coeff · z^{-z_power} · :Π factors:
struct FieldTerm {
  Coeff coeff;
  std::vector<FieldFactor> factors;
  int z_power = 0;
};

/// a* has conformal weight 0, a and b weight 1.
int field_weight(Family family);

/// Normal-ordered polynomial in basic fields. Factors are kept sorted inside a
/// term and like terms are merged, so two equal expressions compare equal.
class FieldExpr {
public:
  explicit FieldExpr(int j = 0) : j_(j) {}

  int j() const { return j_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldExpr& add(const Coeff& c, std::vector<FieldFactor> factors, int z_power = 0);
  FieldExpr& add(const FieldExpr& other, const Coeff& scale = Coeff(1));
  FieldExpr substitute(const std::optional<Rational>& level,
                       const std::optional<Rational>& weight) const;
  /// Coefficient of the term with exactly these factors and z power.
  Coeff coefficient(std::vector<FieldFactor> factors, int z_power = 0) const;

  bool operator==(const FieldExpr& o) const;

  /// Text in the usual notation, e.g. "-a_{(0,α)}(z) - 1/2 :a*_{(1,α)}(z)a_{(1,2α)}(z):".
  std::string render(const OscillatorSystem& sys) const;

private:
  int j_;
  std::vector<FieldTerm> terms_;
};

/// n-th Fourier mode of a field, f(z) = Σ f_n z^{-n-1}, acting on a Fock space.
/// On M̃^σ the operator is T(f_n). Results on monomials are memoized, so a
/// ModeOperator must not be shared between threads.
class ModeOperator {
public:
  ModeOperator(const FieldExpr& f, const Rational& n, const FockSpace& space);

  const Rational& mode() const { return n_; }
  int mode_ticks() const { return n_ticks_; }
  const FockSpace& space() const { return space_; }

  const FockVector& apply(const FockMonomial& m) const;
  FockVector apply(const FockVector& v) const;

private:
  std::shared_ptr<const FieldExpr> f_;
  Rational n_;
  int n_ticks_;
  FockSpace space_;
  mutable std::unordered_map<FockMonomial, FockVector, FockMonomialHash> cache_;
};

ModeOperator mode(const FieldExpr& f, const Rational& n, const FockSpace& space);

/// Basic-field shorthands.
FieldFactor a_field(int label, int derivs = 0);
FieldFactor astar_field(int label, int derivs = 0);
FieldFactor b_field(int label);

using CurrentMap = std::map<GeneratorLabel, FieldExpr>;

/// The six explicit A₂⁽²⁾ currents with symbolic level k (no E_{1,±2α}).
CurrentMap explicit_currents_a22(const OscillatorSystem& sys);

struct DerivedCurrent {
  GeneratorLabel label;
  FieldExpr field;
  GeneratorLabel x, y;    // [x_0, y_n] = c · label_n
  Rational bracket_constant;
  std::size_t ansatz_size = 0;
  std::size_t equations = 0;
};

struct DerivationOptions {
  Rational chi = frac(1, 3);
  std::vector<Rational> fit_levels = {Rational(0), Rational(1), frac(7, 3)};
  Truncation slice{3, 2, std::nullopt};
  int mode_bound_ticks = 3;   // target modes |n| ≤ bound/N
  int max_astar_degree = 4;   // ansatz: (a*)^p × {a, b, ∂a*, z^{-1}}
};

/// Fits E_{1,2α} and E_{1,−2α} to the commutators [E_{0,α,0}, E_{1,α,n}] and
/// [E_{0,−α,0}, E_{1,−α,n}] over a weight/parity-compatible ansatz. The level
/// dependence is interpolated linearly and re-checked at a third level.
/// Throws ConsistencyError if no unique expression matches.
std::pair<DerivedCurrent, DerivedCurrent> derive_missing_currents(const A22& a22,
                                                                  const OscillatorSystem& sys,
                                                                  const CurrentMap& currents,
                                                                  const DerivationOptions& opts = {});

/// All eight currents: explicit ones plus the derived E_{1,±2α}.
CurrentMap wakimoto_currents_a22(const A22& a22, const OscillatorSystem& sys);

/// "E_{(0,α)}", "H_{(1,1)}".
std::string current_name(const GeneratorLabel& label);

/// Multi-line dump, one "NAME(z) = ..." line per current, in basis order.
std::string dump_currents(const A22& a22, const OscillatorSystem& sys, const CurrentMap& currents);

}  // namespace wakimoto
