#include "wakimoto/characters.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>

#include "wakimoto/errors.hpp"

namespace wakimoto {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

using Series = std::map<std::pair<int, int>, Integer>;

/// series · (1 − x)^{−1}, x = e^{(ds, dt)}, keeping keys that can still reach the window.
Series geometric(const Series& in, int ds, int dt, int max_ticks,
                 const std::function<bool(int, int)>& keep) {
  Series out;
  for (const auto& [key, c] : in) {
    for (int p = 0;; ++p) {
      const int s = key.first + p * ds, t = key.second + p * dt;
      if (t > max_ticks || !keep(s, t)) break;
      out[{s, t}] += c;
      if (ds == 0 && dt == 0) throw ConsistencyError("trivial factor in a character product");
    }
  }
  return out;
}

CharacterSeries product(const std::vector<AffineRoot>& roots, int order, int max_ticks,
                        int alpha_floor) {
  // fastest possible rise of the α-shift per tick over the remaining factors
  Rational rate = 0;
  for (const auto& r : roots) {
    if (r.ticks > 0 && -r.alpha > 0) rate = std::max(rate, frac(-r.alpha, r.ticks));
  }
  auto reachable = [&](int s, int t) {
    return Rational(s) + rate * (max_ticks - t) >= alpha_floor;
  };
  // positive-degree factors first, degree-0 ones (which only lower s) last
  std::vector<AffineRoot> ordered = roots;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const AffineRoot& a, const AffineRoot& b) { return (a.ticks == 0) < (b.ticks == 0); });
  Series s{{{0, 0}, Integer(1)}};
  for (const auto& r : ordered) {
    for (int m = 0; m < r.multiplicity; ++m) s = geometric(s, -r.alpha, r.ticks, max_ticks, reachable);
  }
  CharacterSeries out;
  out.order = order;
  out.max_ticks = max_ticks;
  out.alpha_floor = alpha_floor;
  for (const auto& [k, c] : s) {
    if (k.first >= alpha_floor && c != 0) out.coeffs[k] = c;
  }
  return out;
}

}  // namespace

std::string Weight::str() const {
  return "(" + to_string(finite) + ", " + to_string(level) + ", " + to_string(delta) + ")";
}

std::string root_name(const AffineRoot& r, int order) {
  std::string s;
  if (r.alpha != 0) {
    if (r.alpha == -1) s = "-";
    else if (r.alpha != 1) s = std::to_string(r.alpha);
    s += "α";
  }
  const Rational n = frac(r.ticks, order);
  if (n != 0 || s.empty()) {
    if (!s.empty()) s += n < 0 ? " - " : " + ";
    const Rational mag = (!s.empty() && n < 0) ? Rational(-n) : n;
    s += (mag == 1 ? std::string() : to_string(mag)) + "δ";
  }
  return s;
}

// ---- RootDatum --------------------------------------------------------------------------

RootDatum::RootDatum(const LieAlgebra& g, const Automorphism& sigma) : order_(sigma.order()) {
  const auto spaces = eigenspace_decompose(g, sigma);
  Rational unit = 0;
  int h0 = -1;
  for (const auto& s : spaces) {
    if (s.j == 0 && s.cartan.size() != 1) throw ValidationError("only rank-1 g₀ is supported");
    if (s.j == 0) h0 = s.cartan[0];
    for (const auto& w : s.weights) {
      if (s.j == 0 && w.positive && (unit == 0 || w.weight[0] < unit)) unit = w.weight[0];
    }
  }
  if (unit == 0 || h0 < 0) throw ValidationError("g₀ has no simple root");
  alpha_value_ = unit;
  h0_gram_ = g.form(h0, h0);
  alpha_norm_ = unit * unit / h0_gram_;
  for (const auto& s : spaces) {
    for (const auto& w : s.weights) {
      const Rational q = w.weight[0] / unit;
      if (q.get_den() != 1) throw ValidationError("weight outside the root lattice of g₀");
      real_families_.emplace_back(static_cast<int>(q.get_num().get_si()), s.j);
    }
    if (!s.cartan.empty()) imaginary_.emplace_back(s.j, static_cast<int>(s.cartan.size()));
  }
  std::sort(real_families_.begin(), real_families_.end());
}

Weight RootDatum::weight(const AffineRoot& r) const {
  return Weight{alpha_value_ * r.alpha, 0, frac(r.ticks, order_)};
}

Rational RootDatum::pair(const Weight& x, const Weight& y) const {
  return x.finite * y.finite / h0_gram_ + x.level * y.delta + y.level * x.delta;
}

std::vector<AffineRoot> RootDatum::positive_real_roots(int max_ticks) const {
  std::vector<AffineRoot> out;
  for (int t = 0; t <= max_ticks; ++t) {
    for (const auto& [s, res] : real_families_) {
      if (mod(t, order_) != mod(res, order_)) continue;
      if (t == 0 && s < 0) continue;
      out.push_back(AffineRoot{s, t, 1, false});
    }
  }
  return out;
}

std::vector<AffineRoot> RootDatum::positive_roots(int max_ticks) const {
  std::vector<AffineRoot> out = positive_real_roots(max_ticks);
  for (int t = 1; t <= max_ticks; ++t) {
    for (const auto& [res, mult] : imaginary_) {
      if (mod(t, order_) == mod(res, order_)) out.push_back(AffineRoot{0, t, mult, true});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const AffineRoot& a, const AffineRoot& b) {
    return a.ticks < b.ticks;
  });
  return out;
}

std::vector<AffineRoot> RootDatum::simple_roots() const {
  // δ = N ticks, so simple roots have n ≤ 1 (in δ units)
  const auto roots = positive_roots(order_);
  std::vector<AffineRoot> out;
  for (const auto& r : roots) {
    if (r.imaginary) continue;
    bool decomposable = false;
    for (const auto& a : roots) {
      for (const auto& b : roots) {
        if (a.alpha + b.alpha == r.alpha && a.ticks + b.ticks == r.ticks) decomposable = true;
      }
    }
    if (!decomposable) out.push_back(r);
  }
  return out;
}

Weight RootDatum::rho() const {
  // unknowns (λ̄, k): 2(ρ, α_i) = (α_i, α_i)
  const auto simple = simple_roots();
  if (simple.size() != 2) throw ConsistencyError("expected two simple roots");
  RationalMatrix m(2, 2);
  std::vector<Rational> b(2), x;
  for (int i = 0; i < 2; ++i) {
    const Weight w = weight(simple[i]);
    m(i, 0) = 2 * w.finite / h0_gram_;
    m(i, 1) = 2 * w.delta;
    b[i] = pair(w, w);
  }
  if (!solve(m, b, x) || rank(m) != 2) throw ConsistencyError("ρ is not determined");
  return Weight{x[0], x[1], 0};
}

// ---- series -----------------------------------------------------------------------------

Integer CharacterSeries::at(int alpha, int ticks) const {
  auto it = coeffs.find({alpha, ticks});
  return it == coeffs.end() ? Integer(0) : it->second;
}

Integer CharacterSeries::total_at_degree(int ticks) const {
  Integer s = 0;
  for (const auto& [k, c] : coeffs) {
    if (k.second == ticks) s += c;
  }
  return s;
}

std::vector<std::tuple<std::pair<int, int>, Integer, Integer>> CharacterSeries::diff(
    const CharacterSeries& other) const {
  std::vector<std::tuple<std::pair<int, int>, Integer, Integer>> out;
  std::map<std::pair<int, int>, std::pair<Integer, Integer>> both;
  for (const auto& [k, c] : coeffs) both[k].first = c;
  for (const auto& [k, c] : other.coeffs) both[k].second = c;
  for (const auto& [k, v] : both) {
    if (v.first != v.second) out.emplace_back(k, v.first, v.second);
  }
  return out;
}

std::string CharacterSeries::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["degree"] = to_string(frac(max_ticks, order));
  if (alpha_floor) j["alpha_floor"] = *alpha_floor;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [k, c] : coeffs) {
    rows.push_back({{"alpha", k.first}, {"degree", to_string(frac(k.second, order))},
                    {"dim", c.get_str()}});
  }
  j["entries"] = std::move(rows);
  return j.dump(indent);
}

CharacterSeries fock_character(const FockSpace& space, const Truncation& t) {
  CharacterSeries out;
  out.order = space.system().order();
  out.max_ticks = t.degree_ticks;
  out.alpha_floor = t.alpha_floor;
  for (const auto& m : basis_up_to_degree(space, t)) {
    const WeightShift w = weight_of(m, space);
    out.coeffs[{w.alpha, -w.ticks}] += 1;
  }
  return out;
}

CharacterSeries verma_character(const RootDatum& datum, int max_ticks, int alpha_floor) {
  return product(datum.positive_roots(max_ticks), datum.order(), max_ticks, alpha_floor);
}

CharacterSeries kk_character(const RootDatum& datum, int max_ticks, int alpha_floor) {
  return product(datum.positive_real_roots(max_ticks), datum.order(), max_ticks, alpha_floor);
}

// ---- Kac-Kazhdan ------------------------------------------------------------------------

bool kk_equation_check(const RootDatum& datum, const Weight& chi, const AffineRoot& beta, int n) {
  const Weight b = datum.weight(beta);
  return 2 * datum.pair(chi + datum.rho(), b) == n * datum.pair(b, b);
}

GenericityCertificate is_generic(const RootDatum& datum, const Weight& chi, int bound) {
  GenericityCertificate cert;
  cert.bound = bound;
  if (bound <= 0) {
    cert.vacuous = true;
    return cert;
  }
  const Weight shifted = chi + datum.rho();
  for (const auto& r : datum.positive_real_roots(bound * datum.order())) {
    ++cert.roots_scanned;
    const Weight b = datum.weight(r);
    const Rational lhs = 2 * datum.pair(shifted, b);
    const Rational norm = datum.pair(b, b);
    for (int n = 1; n <= bound; ++n) {
      if (lhs == n * norm) {
        cert.generic = false;
        cert.witness = std::pair(r, n);
        return cert;
      }
    }
  }
  return cert;
}

}  // namespace wakimoto
