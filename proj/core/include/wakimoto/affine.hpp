#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/coeff.hpp"
#include "wakimoto/fields.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/lie.hpp"

namespace wakimoto {

/// Σ x_i ⊗ t^{n_i} + central·K + degree·d.
struct AffineElement {
  std::vector<std::pair<LieElement, Rational>> loop;
  Rational central = 0;
  Rational degree = 0;
};

/// σ-eigenvalue index of a homogeneous element; throws ValidationError otherwise.
int eigen_index(const Automorphism& sigma, const LieElement& x);

/// [x⊗t^m, y⊗t^n] = [x,y]⊗t^{m+n} + m (x,y) δ_{m,−n} K.
AffineElement expected_bracket(const LieAlgebra& g, const Automorphism& sigma, const LieElement& x,
                               const Rational& m, const LieElement& y, const Rational& n);

/// ĝ^σ acting on a Fock space through a current map. On M̃^σ the generator
/// x⊗t^m acts by T(ω(x)_{−m}).
class Realization {
public:
  Realization(const A22& a22, CurrentMap currents, FockSpace space);

  const A22& algebra() const { return *a22_; }
  const FockSpace& space() const { return space_; }
  const CurrentMap& currents() const { return currents_; }
  /// Constants of the Chevalley anti-involution, ω(b_i) in coordinates.
  const std::vector<SparseVector>& omega() const { return omega_; }

  /// Mode operator of basis generator `index` at mode m = ticks/N.
  const ModeOperator& op(int index, int ticks) const;
  FockVector apply(int index, int ticks, const FockVector& v) const;
  FockVector apply(const LieElement& x, int ticks, const FockVector& v) const;

private:
  std::shared_ptr<const A22> a22_;
  CurrentMap currents_;
  FockSpace space_;
  std::vector<SparseVector> omega_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<ModeOperator>> ops_;
};

struct RelationResult {
  GeneratorLabel x;
  Rational m;
  GeneratorLabel y;
  Rational n;
  bool pass = true;
  Coeff central;          // m (x,y) δ_{m,−n} · k
  std::size_t vectors = 0;
  std::string witness;    // first failing basis vector
  FockVector discrepancy;
};

struct VerificationReport {
  std::string level;  // "7/3" or "symbolic"
  std::string chi;
  std::string space;
  Truncation truncation;
  Rational mode_bound = 0;
  std::vector<RelationResult> results;

  bool all_pass() const;
  std::size_t failures() const;
  std::string to_json(const OscillatorSystem& sys, int indent = 2) const;
};

/// Checks [X_m, Y_n] v = expected v for every basis vector v of the slice.
/// `level` is the scalar by which K acts (possibly symbolic).
RelationResult verify_relation(const Realization& rho, int x, const Rational& m, int y,
                               const Rational& n, const Truncation& slice, const Coeff& level);

/// Lattice-compatible modes of generator `index` with |m| ≤ bound, ascending.
std::vector<Rational> compatible_modes(const A22& a22, int index, const Rational& bound);

struct VerifyConfig {
  SpaceKind kind = SpaceKind::Tensor;
  Rational chi = frac(1, 3);
  Truncation slice{4, 1, std::nullopt};
  Rational mode_bound = 1;
};

/// Runs verify_relation over all ordered generator pairs and compatible modes,
/// once per level (std::nullopt = symbolic k). Restricted and contragredient
/// spaces only exist at the critical level.
std::vector<VerificationReport> verify_all(const A22& a22,
                                           std::shared_ptr<const OscillatorSystem> sys,
                                           const CurrentMap& currents, const VerifyConfig& config,
                                           const std::vector<std::optional<Rational>>& levels);

/// Space for a given level: W^σ_{k,χ} (r = k + ȟ), W̄^σ_χ or M̃^σ ⊗ C_{0,χ}.
FockSpace make_space(const A22& a22, std::shared_ptr<const OscillatorSystem> sys, SpaceKind kind,
                     const std::optional<Rational>& level, const Rational& chi);

}  // namespace wakimoto
