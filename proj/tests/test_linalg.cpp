#include <doctest.h>

#include <algorithm>
#include <random>

#include "wakimoto/linalg.hpp"

using namespace wakimoto;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

bool annihilates(const RationalMatrix& m, const std::vector<Rational>& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rank and nullspace on a small matrix") {
  const auto m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(annihilates(m, ns[0]));
  CHECK(nullspace(RationalMatrix::identity(4)).empty());
  CHECK(nullspace(RationalMatrix(0, 3)).size() == 3);
}

TEST_CASE("solve finds exact solutions and reports inconsistency") {
  const auto m = from_rows({{2, 1}, {1, 3}});
  std::vector<Rational> x;
  REQUIRE(solve(m, {Rational(3), Rational(4)}, x));
  CHECK(x[0] == 1);
  CHECK(x[1] == 1);
  CHECK_FALSE(solve(from_rows({{1, 1}, {2, 2}}), {Rational(1), Rational(3)}, x));
}

TEST_CASE("kernel dimension is invariant under column permutations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m(5, 7);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 7; ++c) m(r, c) = frac(d(rng), 1 + (trial % 3));
    // duplicate a row so the rank drops sometimes
    for (std::size_t c = 0; c < 7; ++c) m(4, c) = m(0, c) * 2 - m(1, c);
    std::vector<std::size_t> perm(7);
    for (std::size_t i = 0; i < 7; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RationalMatrix p(5, 7);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 7; ++c) p(r, c) = m(r, perm[c]);
    const auto k1 = nullspace(m);
    const auto k2 = nullspace(p);
    CHECK(k1.size() == k2.size());
    CHECK(k1.size() + rank(m) == 7);
    for (const auto& v : k2) {
      CHECK(annihilates(p, v));
      std::vector<Rational> back(7);
      for (std::size_t c = 0; c < 7; ++c) back[perm[c]] = v[c];
      CHECK(annihilates(m, back));
    }
  }
}
