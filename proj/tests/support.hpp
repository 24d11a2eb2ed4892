#pragma once

#include <memory>

#include "wakimoto/affine.hpp"
#include "wakimoto/fields.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/lie.hpp"

namespace testing {

using namespace wakimoto;

// The current derivation takes a couple of seconds, so every test shares one copy.
struct World {
  A22 a22 = build_a2_2();
  std::shared_ptr<const OscillatorSystem> sys =
      std::make_shared<const OscillatorSystem>(a22.algebra, a22.sigma);
  CurrentMap currents = wakimoto_currents_a22(a22, *sys);
};

inline const World& world() {
  static const World w;
  return w;
}

// a-labels: 0 = (0,α), 1 = (1,α), 2 = (1,2α); b-labels: 0 = (0,1), 1 = (1,1). Modes in ticks of 1/2.
inline Osc astar(int label, int ticks) { return {Family::AStar, label, ticks}; }
inline Osc a(int label, int ticks) { return {Family::A, label, ticks}; }
inline Osc b(int label, int ticks) { return {Family::B, label, ticks}; }

inline FockMonomial mono(std::initializer_list<Osc> oscs) {
  FockMonomial m;
  for (const auto& o : oscs) m.multiply(o);
  return m;
}

inline FockVector vec(std::initializer_list<Osc> oscs) { return FockVector(mono(oscs)); }

}  // namespace testing
