#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/affine.hpp"
#include "wakimoto/characters.hpp"
#include "wakimoto/fock.hpp"

namespace wakimoto {

/// Monomials of one weight χ + sα − (d/N)δ, with the raising modes tested on it.
struct WeightBlock {
  int alpha = 0;
  int ticks = 0;
  std::vector<FockMonomial> basis;
  std::vector<std::pair<int, int>> raising;  // (generator, mode ticks)
};

enum class RaisingSet {
  Full,      // x_m, m > 0 for every generator, plus E_{0,α} at m = 0
  Nilpotent  // E_{m,(j,α)} with α ∈ Δ⁺ⱼ, m ≥ 0
};

/// Raising modes up to mode_bound_ticks: the full positive part is generated
/// by E_{0,α,0} and the modes of degree ≤ 1, so bound N suffices for kernels.
std::vector<std::pair<int, int>> raising_modes(const A22& a22, RaisingSet set, int mode_bound_ticks);

/// Weight blocks of degree ≤ deg_ticks with α-shift ≥ alpha_floor, excluding
/// the vacuum, in (degree, α-shift) order.
std::vector<WeightBlock> weight_blocks(const FockSpace& space, int deg_ticks, int alpha_floor,
                                       const std::vector<std::pair<int, int>>& raising);

/// Rows: coordinates of the images under each raising mode (stacked);
/// columns: block basis. Entries may be polynomials in k and c.
struct RaisingMatrix {
  std::vector<FockMonomial> row_monomials;
  std::vector<std::size_t> row_generator;  // index into block.raising
  std::vector<std::vector<Coeff>> entries;
  std::size_t cols = 0;
};

RaisingMatrix raising_matrix(const WeightBlock& block, const Realization& rho);

struct BlockResult {
  int alpha = 0;
  int ticks = 0;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::vector<FockVector> kernel;
};

struct SingularReport {
  std::string space;
  std::string level;
  std::string chi;
  int order = 2;
  int deg_ticks = 0;
  int alpha_floor = 0;
  std::string raising;
  std::optional<GenericityCertificate> certificate;
  std::vector<BlockResult> blocks;  // every scanned block, including empty kernels

  /// Only the vacuum is singular in the scanned range.
  bool vacuum_only() const;
  std::vector<const BlockResult*> singular_blocks() const;
  std::string to_json(const OscillatorSystem& sys, int indent = 2) const;
};

struct ScanConfig {
  int deg_ticks = 4;
  std::optional<int> alpha_floor;  // default −2·deg_ticks
  RaisingSet raising = RaisingSet::Full;
  int genericity_bound = 10;
};

/// Exact kernel scan of the raising operators on every block. The realization
/// must have constant coefficients (concrete k and χ).
SingularReport singular_scan(const Realization& rho, const ScanConfig& config);

/// W̄^σ_χ at the critical level (or W^σ_{k,χ} at any level).
SingularReport find_singular(const A22& a22, std::shared_ptr<const OscillatorSystem> sys,
                             const CurrentMap& currents, SpaceKind kind, const Rational& level,
                             const Rational& chi, const ScanConfig& config);

/// Same scan on M̃^σ ⊗ C_{0,χ} with the action x ↦ T(ω(x)).
SingularReport contragredient_scan(const A22& a22, std::shared_ptr<const OscillatorSystem> sys,
                                   const CurrentMap& currents, const Rational& chi,
                                   const ScanConfig& config);

}  // namespace wakimoto
