#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/coeff.hpp"
#include "wakimoto/lie.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

enum class Family : std::uint8_t { AStar = 0, A = 1, B = 2 };

/// Label (j, α) of an a/a* oscillator, α ∈ Δ⁺ⱼ stored as a multiple of the
/// simple root of g₀.
struct ALabel {
  int j = 0;
  int root = 0;
  int generator = -1;  // index of E_{j,α} in the Lie algebra basis
};

/// Label (i, a) of a b oscillator with gram entry (H_{i,a}, H_{i,a}).
struct BLabel {
  int i = 0;
  int cartan = 1;
  Rational gram;
  int generator = -1;
};

/// The oscillator content of M^σ ⊗ π^σ, read off from the eigenspace
/// decomposition of (g, σ). Modes are stored in ticks of 1/N.
class OscillatorSystem {
public:
  OscillatorSystem(const LieAlgebra& g, const Automorphism& sigma);

  int order() const { return order_; }
  const std::vector<ALabel>& a_labels() const { return a_labels_; }
  const std::vector<BLabel>& b_labels() const { return b_labels_; }
  int a_index(int j, int root) const;  // throws ValidationError
  int b_index(int i, int cartan) const;

  /// Residue mod N of the mode lattice of a family/label.
  int residue(Family family, int label) const;
  /// Label of the same family with eigenvalue index −j (used by transpose).
  int conjugate_label(Family family, int label) const;

  std::string label_name(Family family, int label) const;  // "(1,2α)", "(0,1)"

private:
  int order_ = 1;
  std::vector<ALabel> a_labels_;
  std::vector<BLabel> b_labels_;
};

/// One oscillator a_n, a*_n or b_n with n = ticks / N.
struct Osc {
  Family family = Family::A;
  int label = 0;
  int ticks = 0;

  Rational mode(int order) const { return frac(ticks, order); }
  bool operator==(const Osc&) const = default;
  // family, then label, then mode descending
  bool operator<(const Osc& o) const {
    if (family != o.family) return family < o.family;
    if (label != o.label) return label < o.label;
    return ticks > o.ticks;
  }
};

/// Canonical product of commuting creation oscillators.
class FockMonomial {
public:
  struct Factor {
    Osc osc;
    int power = 1;
    bool operator==(const Factor&) const = default;
  };

  FockMonomial() = default;
  static FockMonomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_vacuum() const { return factors_.empty(); }
  int power_of(const Osc& osc) const;
  /// −Σ ticks·power: degree in units of 1/N.
  int degree_ticks() const;
  /// Σ α-shift·power as a monomial of M^σ ⊗ π^σ.
  int alpha_shift(const OscillatorSystem& sys) const;

  void multiply(const Osc& osc, int power = 1);
  /// Lowers the power of osc by one; returns the power before removal (0 if absent).
  int remove_one(const Osc& osc);

  std::string str(const OscillatorSystem& sys) const;
  std::size_t hash() const;

  bool operator==(const FockMonomial&) const = default;
  bool operator<(const FockMonomial& o) const;

private:
  std::vector<Factor> factors_;
};

struct FockMonomialHash {
  std::size_t operator()(const FockMonomial& m) const { return m.hash(); }
};

/// Finite combination of monomials; no zero coefficients are stored.
class FockVector {
public:
  using Map = std::map<FockMonomial, Coeff>;

  FockVector() = default;
  explicit FockVector(const FockMonomial& m, Coeff c = Coeff(1));

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Coeff coefficient(const FockMonomial& m) const;

  void add(const FockMonomial& m, const Coeff& c);
  void add(const FockVector& v, const Coeff& scale = Coeff(1));
  FockVector scaled(const Coeff& c) const;
  FockVector substitute(const std::optional<Rational>& level,
                        const std::optional<Rational>& weight) const;

  FockVector operator+(const FockVector& o) const;
  FockVector operator-(const FockVector& o) const;
  bool operator==(const FockVector&) const = default;

  /// {"monomial": "coefficient"} rendering used in reports.
  std::map<std::string, std::string> to_strings(const OscillatorSystem& sys) const;

private:
  Map terms_;
};

enum class SpaceKind { MSigma, PiSigma, Tensor, MTilde, Restricted };

std::string to_string(SpaceKind kind);

/// Immutable description of one of the Fock modules. r is the scalar by which
/// the central element of the Heisenberg algebra acts; c[a] = χ(H_{0,a}).
class FockSpace {
public:
  static FockSpace m_sigma(std::shared_ptr<const OscillatorSystem> sys);
  static FockSpace pi_sigma(std::shared_ptr<const OscillatorSystem> sys, Coeff r,
                            std::vector<Coeff> c);
  /// W^σ_{k,χ} = M^σ ⊗ π^{r,σ}_χ.
  static FockSpace tensor(std::shared_ptr<const OscillatorSystem> sys, Coeff r,
                          std::vector<Coeff> c);
  /// W̄^σ_χ = M^σ ⊗ C_{0,χ}.
  static FockSpace restricted(std::shared_ptr<const OscillatorSystem> sys, std::vector<Coeff> c);
  /// M̃^σ ⊗ C_{0,χ}; only T-transposed field modes act here.
  static FockSpace m_tilde(std::shared_ptr<const OscillatorSystem> sys, std::vector<Coeff> c);

  SpaceKind kind() const { return kind_; }
  const OscillatorSystem& system() const { return *sys_; }
  std::shared_ptr<const OscillatorSystem> system_ptr() const { return sys_; }
  std::uint64_t id() const { return id_; }
  const Coeff& r() const { return r_; }
  /// χ(H_{0,a}) for a b-label with i = 0; throws otherwise.
  const Coeff& zero_mode(int b_label) const;

  bool has_a() const { return kind_ != SpaceKind::PiSigma; }
  /// b_n with n ≠ 0 act nontrivially.
  bool has_b_oscillators() const {
    return kind_ == SpaceKind::PiSigma || kind_ == SpaceKind::Tensor;
  }
  /// b_{0,(0,a)} acts by c_a.
  bool has_b_zero_modes() const { return kind_ != SpaceKind::MSigma; }
  bool transposed() const { return kind_ == SpaceKind::MTilde; }

  bool is_creator(const Osc& osc) const;
  /// Throws ValidationError if osc is off its mode lattice or not present here.
  void check(const Osc& osc) const;

private:
  FockSpace() = default;
  SpaceKind kind_ = SpaceKind::MSigma;
  std::shared_ptr<const OscillatorSystem> sys_;
  std::uint64_t id_ = 0;
  Coeff r_;
  std::vector<Coeff> c_;
};

/// [A, C] for annihilator A and creator C, as the scalar multiple of 1.
Coeff contraction(const Osc& annihilator, const Osc& creator, const FockSpace& space);

/// Degree slice used to pick test vectors and enumerate bases. The zero-mode
/// creator a*_{0,(0,α)} has degree 0, so one of zero_mode_cap / alpha_floor is
/// needed to make a slice finite.
struct Truncation {
  int degree_ticks = 0;
  std::optional<int> zero_mode_cap;  // total power of degree-0 creators
  std::optional<int> alpha_floor;    // keep only α-shift ≥ floor

  bool admits(const FockMonomial& m, const FockSpace& space) const;
};

FockVector apply_oscillator(const Osc& g, const FockVector& v, const FockSpace& space);
/// As above, dropping monomials outside `t`; *overflow is set if any were dropped.
FockVector apply_oscillator(const Osc& g, const FockVector& v, const FockSpace& space,
                            const Truncation& t, bool* overflow);

/// All creation oscillators of the space with degree ≤ max_ticks, in canonical order.
std::vector<Osc> creators_up_to(const FockSpace& space, int max_ticks);

/// Complete, duplicate-free list of monomials admitted by t, sorted by degree
/// and then canonically.
std::vector<FockMonomial> basis_up_to_degree(const FockSpace& space, const Truncation& t);

/// Weight of a monomial relative to χ: (α-shift, δ-coefficient in ticks).
struct WeightShift {
  int alpha = 0;
  int ticks = 0;
  auto operator<=>(const WeightShift&) const = default;
};
WeightShift weight_of(const FockMonomial& m, const FockSpace& space);

/// T on a single a/a* oscillator: T(a_n) = a_{−n}, T(a*_n) = −a*_{−n}.
std::pair<int, Osc> transpose(const Osc& g, const OscillatorSystem& sys);

/// ⟨v, w⟩ for v ∈ M̃^σ, w ∈ M^σ: Πλ!Πμ! on matched monomials.
Coeff pairing(const FockVector& v, const FockSpace& tilde, const FockVector& w,
              const FockSpace& sigma);

/// Monomial of M^σ matched with a monomial of M̃^σ (a_n ↔ a*_n).
FockMonomial dual_monomial(const FockMonomial& m);

std::string osc_name(const Osc& osc, const OscillatorSystem& sys);

}  // namespace wakimoto
