#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wakimoto/characters.hpp"
#include "wakimoto/singular.hpp"

using namespace wakimoto;
using namespace testing;

namespace {

CurrentMap critical_currents() {
  CurrentMap out;
  for (const auto& [l, f] : world().currents) out.emplace(l, f.substitute(Rational(-3), std::nullopt));
  return out;
}

Realization restricted(const Coeff& chi) {
  return Realization(world().a22, critical_currents(), FockSpace::restricted(world().sys, {chi}));
}

ScanConfig scan(int deg_ticks) {
  ScanConfig c;
  c.deg_ticks = deg_ticks;
  return c;
}

}  // namespace

TEST_CASE("raising modes") {
  const auto& w = world().a22;
  const auto full = raising_modes(w, RaisingSet::Full, 2);
  CHECK(full.size() == 3 + 5 + 1);
  CHECK(std::count(full.begin(), full.end(), std::pair<int, int>{w.e0_alpha, 0}) == 1);
  for (const auto& [g, t] : full) CHECK((t > 0 || g == w.e0_alpha));
  const auto nil = raising_modes(w, RaisingSet::Nilpotent, 2);
  CHECK_FALSE(nil.empty());
}

TEST_CASE("raising matrix on tiny blocks") {
  const auto rho = restricted(Coeff(frac(7, 5)));
  const auto modes = raising_modes(world().a22, RaisingSet::Full, 2);

  const WeightBlock vacuum{0, 0, {FockMonomial()}, modes};
  const auto mv = raising_matrix(vacuum, rho);
  for (const auto& row : mv.entries)
    for (const auto& x : row) CHECK(x.is_zero());

  const FockMonomial m = mono({astar(1, -1)});
  const WeightBlock one{-1, 1, {m}, modes};
  const auto mat = raising_matrix(one, rho);
  CHECK(mat.cols == 1);
  bool nonzero = false;
  for (const auto& row : mat.entries) nonzero = nonzero || !row[0].is_zero();
  CHECK(nonzero);
  // each entry is the coefficient of the row monomial in the applied generator
  for (std::size_t r = 0; r < mat.entries.size(); ++r) {
    const auto [g, t] = modes[mat.row_generator[r]];
    CHECK(rho.apply(g, t, FockVector(m)).coefficient(mat.row_monomials[r]) == mat.entries[r][0]);
  }
}

TEST_CASE("raising matrices are linear in the weight") {
  const auto rho = restricted(Coeff::weight());
  const auto modes = raising_modes(world().a22, RaisingSet::Full, 2);
  for (const auto& block : weight_blocks(rho.space(), 2, -4, modes)) {
    const auto mat = raising_matrix(block, rho);
    for (const auto& row : mat.entries)
      for (const auto& x : row) {
        CHECK(x.weight_degree() <= 1);
        CHECK(x.level_degree() == 0);
      }
  }
}

TEST_CASE("weight blocks exclude the vacuum and partition the window") {
  const auto rho = restricted(Coeff(frac(7, 5)));
  const auto modes = raising_modes(world().a22, RaisingSet::Full, 2);
  std::size_t total = 0;
  for (const auto& b : weight_blocks(rho.space(), 3, -4, modes)) {
    CHECK_FALSE(b.basis.empty());
    for (const auto& m : b.basis) {
      CHECK_FALSE(m.is_vacuum());
      const auto w = weight_of(m, rho.space());
      CHECK(w.alpha == b.alpha);
      CHECK(-w.ticks == b.ticks);
    }
    total += b.basis.size();
  }
  const auto all = basis_up_to_degree(rho.space(), Truncation{3, std::nullopt, -4});
  CHECK(total + 1 == all.size());
}

TEST_CASE("degree zero scans report only the vacuum") {
  const auto& w = world();
  const auto r = find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, frac(7, 5), scan(0));
  CHECK(r.vacuum_only());
  const auto c = contragredient_scan(w.a22, w.sys, w.currents, frac(7, 5), scan(0));
  CHECK(c.vacuum_only());
}

TEST_CASE("generic critical weight: vacuum only, both modules") {
  const auto& w = world();
  const auto r = find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, frac(7, 5), scan(4));
  CHECK(r.vacuum_only());
  CHECK(r.blocks.size() > 10);
  REQUIRE(r.certificate);
  CHECK(r.certificate->generic);
  const auto c = contragredient_scan(w.a22, w.sys, w.currents, frac(7, 5), scan(4));
  CHECK(c.vacuum_only());
  CHECK(r.to_json(*w.sys).find("bounded scan, not a proof") != std::string::npos);
}

TEST_CASE("non-generic critical weight: singular vector at the predicted weight") {
  const auto& w = world();
  const RootDatum datum(w.a22.algebra, w.a22.sigma);
  // c1 = -1 solves the KK equation for β = -α + δ/2 with n = 1
  const AffineRoot beta{-1, 1, 1, false};
  REQUIRE(kk_equation_check(datum, Weight{-1, -3, 0}, beta, 1));
  const auto r = find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, -1, scan(4));
  CHECK_FALSE(r.vacuum_only());
  const auto found = r.singular_blocks();
  REQUIRE(found.size() >= 1);
  // χ - nβ = χ + α - δ/2
  CHECK(found[0]->alpha == 1);
  CHECK(found[0]->ticks == 1);

  // the kernel vector is annihilated by every raising operator
  const auto rho = restricted(Coeff(-1));
  for (const auto& v : found[0]->kernel) {
    CHECK_FALSE(v.is_zero());
    for (const auto& [g, t] : raising_modes(w.a22, RaisingSet::Full, 2)) CHECK(rho.apply(g, t, v).is_zero());
  }
}
