#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "wakimoto/errors.hpp"

using namespace wakimoto;
using namespace testing;

namespace {

FockSpace tensor_space(Coeff r = Coeff::level() + Coeff(3)) {
  return FockSpace::tensor(world().sys, std::move(r), {Coeff::weight()});
}

const FockMonomial vac;

}  // namespace

TEST_CASE("oscillator system labels") {
  const auto& sys = *world().sys;
  REQUIRE(sys.a_labels().size() == 3);
  REQUIRE(sys.b_labels().size() == 2);
  CHECK(sys.label_name(Family::A, 0) == "(0,α)");
  CHECK(sys.label_name(Family::A, 2) == "(1,2α)");
  CHECK(sys.label_name(Family::B, 1) == "(1,1)");
  CHECK(sys.a_index(1, 2) == 2);
  CHECK(sys.b_labels()[0].gram == 2);
  CHECK(sys.b_labels()[1].gram == 6);
  CHECK(osc_name(astar(1, -1), sys) == "a*_{-1/2,(1,α)}");
  CHECK_THROWS_AS(sys.a_index(0, 2), ValidationError);
}

TEST_CASE("single oscillator actions") {
  const auto sigma = FockSpace::m_sigma(world().sys);
  CHECK(apply_oscillator(a(1, 1), vec({astar(1, -1)}), sigma) == FockVector(vac));
  CHECK(apply_oscillator(a(0, 0), FockVector(vac), sigma).is_zero());
  CHECK(apply_oscillator(astar(0, 2), FockVector(vac), sigma).is_zero());
  // a*_m a_n - a_n a*_m = -δ
  const auto v = vec({a(1, -1)});
  CHECK(apply_oscillator(astar(1, 1), v, sigma) == FockVector(vac, Coeff(-1)));
  // creation is commutative and accumulates powers
  const auto sq = apply_oscillator(astar(0, 0), apply_oscillator(astar(0, 0), FockVector(vac), sigma), sigma);
  CHECK(sq == vec({astar(0, 0), astar(0, 0)}));
  CHECK_THROWS_AS(apply_oscillator(a(1, 0), FockVector(vac), sigma), ValidationError);
  CHECK_THROWS_AS(apply_oscillator(b(1, -1), FockVector(vac), sigma), ValidationError);
}

TEST_CASE("b oscillators carry the Heisenberg form") {
  const Coeff r = Coeff::level();
  const auto pi = FockSpace::pi_sigma(world().sys, r, {Coeff::weight()});
  const Rational h11 = normalized_form(world().a22.algebra,
                                       LieElement::basis(world().a22.algebra, world().a22.h1),
                                       LieElement::basis(world().a22.algebra, world().a22.h1));
  const auto out = apply_oscillator(b(1, 1), vec({b(1, -1)}), pi);
  CHECK(out == FockVector(vac, r * (frac(1, 2) * h11)));
  // zero mode of b_{(0,1)} is the weight
  CHECK(apply_oscillator(b(0, 0), FockVector(vac), pi) == FockVector(vac, Coeff::weight()));
  CHECK_THROWS_AS(apply_oscillator(a(0, -2), FockVector(vac), pi), ValidationError);
}

TEST_CASE("truncating application flags overflow") {
  const auto sigma = FockSpace::m_sigma(world().sys);
  bool overflow = false;
  const auto out = apply_oscillator(astar(1, -1), vec({astar(1, -1)}), sigma, Truncation{1, 0, std::nullopt},
                                    &overflow);
  CHECK(out.is_zero());
  CHECK(overflow);
}

TEST_CASE("basis enumeration") {
  const auto space = tensor_space();
  const auto d0 = basis_up_to_degree(space, Truncation{0, 0, std::nullopt});
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].is_vacuum());

  const auto half = basis_up_to_degree(space, Truncation{1, 0, std::nullopt});
  std::set<std::string> names;
  for (const auto& m : half) names.insert(m.str(*world().sys));
  CHECK(names == std::set<std::string>{"vac", "a*_{-1/2,(1,α)}", "a*_{-1/2,(1,2α)}", "a_{-1/2,(1,α)}",
                                       "a_{-1/2,(1,2α)}", "b_{-1/2,(1,1)}"});

  CHECK_THROWS_AS(basis_up_to_degree(space, Truncation{1, std::nullopt, std::nullopt}), TruncationError);
}

TEST_CASE("basis counts match the generating function") {
  const auto space = tensor_space();
  const int max_ticks = 6;
  const auto oracle = tensor_counts_without_zero_modes(max_ticks);
  for (int z = 0; z <= 2; ++z) {
    const auto basis = basis_up_to_degree(space, Truncation{max_ticks, z, std::nullopt});
    std::vector<long> by_degree(max_ticks + 1, 0);
    for (const auto& m : basis) by_degree[m.degree_ticks()]++;
    for (int d = 0; d <= max_ticks; ++d) {
      CAPTURE(z);
      CAPTURE(d);
      // the only zero-mode creator is a*_{0,(0,α)}
      CHECK(by_degree[d] == oracle[d] * (z + 1));
    }
  }
  // degree 1: pairs of the five half-integer creators, plus the three at degree 1
  CHECK(oracle[2] == 15 + 3);
}

TEST_CASE("weights of monomials") {
  const auto space = tensor_space();
  CHECK(weight_of(vac, space) == WeightShift{0, 0});
  CHECK(weight_of(mono({astar(1, -1)}), space) == WeightShift{-1, -1});
  CHECK(weight_of(mono({b(0, -2)}), space) == WeightShift{0, -2});
  CHECK(weight_of(mono({a(2, -1), astar(0, 0)}), space) == WeightShift{1, -1});
}

TEST_CASE("pairing between the contragredient and M^σ") {
  const auto sigma = FockSpace::m_sigma(world().sys);
  const auto tilde = FockSpace::m_tilde(world().sys, {Coeff::weight()});
  CHECK(pairing(FockVector(vac), tilde, FockVector(vac), sigma) == Coeff(1));
  const auto zz = vec({astar(0, 0), astar(0, 0)});
  CHECK(pairing(FockVector(dual_monomial(zz.terms().begin()->first)), tilde, zz, sigma) == Coeff(2));
  CHECK(pairing(vec({a(0, 0)}), tilde, vec({astar(1, -1)}), sigma).is_zero());
  CHECK_THROWS_AS(pairing(FockVector(vac), sigma, FockVector(vac), sigma), ValidationError);
}

TEST_CASE("transpose of single oscillators") {
  const auto& sys = *world().sys;
  CHECK(transpose(a(1, 1), sys) == std::pair<int, Osc>{1, a(1, -1)});
  CHECK(transpose(astar(0, 0), sys) == std::pair<int, Osc>{-1, astar(0, 0)});
  for (const auto& g : a_sector_oscillators(sys, 3)) {
    const auto [s1, t1] = transpose(g, sys);
    const auto [s2, t2] = transpose(t1, sys);
    CHECK(t2 == g);
    CHECK(s1 * s2 == 1);
  }
  CHECK_THROWS_AS(transpose(b(1, 1), sys), ValidationError);
}

TEST_CASE("adjoint relation for single oscillators on a small slice") {
  const auto sigma = FockSpace::m_sigma(world().sys);
  const auto tilde = FockSpace::m_tilde(world().sys, {Coeff::weight()});
  const Truncation t{2, 1, std::nullopt};
  const auto left = basis_up_to_degree(tilde, t);
  const auto right = basis_up_to_degree(sigma, t);
  for (const auto& g : a_sector_oscillators(*world().sys, 2))
    for (const auto& v : left)
      for (const auto& w : right) CHECK(adjoint_defect({g}, FockVector(v), FockVector(w), tilde, sigma).is_zero());
}
