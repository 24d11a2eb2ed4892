#include "wakimoto/fields.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "wakimoto/errors.hpp"
#include "wakimoto/linalg.hpp"

namespace wakimoto {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

bool same_shape(const FieldTerm& t, const std::vector<FieldFactor>& factors, int z_power) {
  return t.z_power == z_power && t.factors == factors;
}

}  // namespace

int field_weight(Family family) { return family == Family::AStar ? 0 : 1; }

FieldFactor a_field(int label, int derivs) { return {Family::A, label, derivs}; }
FieldFactor astar_field(int label, int derivs) { return {Family::AStar, label, derivs}; }
FieldFactor b_field(int label) { return {Family::B, label, 0}; }

// ---- FieldExpr -------------------------------------------------------------------

FieldExpr& FieldExpr::add(const Coeff& c, std::vector<FieldFactor> factors, int z_power) {
  if (c.is_zero()) return *this;
  std::sort(factors.begin(), factors.end());
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (!same_shape(*it, factors, z_power)) continue;
    it->coeff += c;
    if (it->coeff.is_zero()) terms_.erase(it);
    return *this;
  }
  terms_.push_back(FieldTerm{c, std::move(factors), z_power});
  return *this;
}

FieldExpr& FieldExpr::add(const FieldExpr& other, const Coeff& scale) {
  for (const auto& t : other.terms_) add(t.coeff * scale, t.factors, t.z_power);
  return *this;
}

FieldExpr FieldExpr::substitute(const std::optional<Rational>& level,
                                const std::optional<Rational>& weight) const {
  FieldExpr out(j_);
  for (const auto& t : terms_) out.add(t.coeff.substitute(level, weight), t.factors, t.z_power);
  return out;
}

Coeff FieldExpr::coefficient(std::vector<FieldFactor> factors, int z_power) const {
  std::sort(factors.begin(), factors.end());
  for (const auto& t : terms_) {
    if (same_shape(t, factors, z_power)) return t.coeff;
  }
  return Coeff();
}

bool FieldExpr::operator==(const FieldExpr& o) const {
  if (j_ != o.j_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& t : terms_) {
    if (o.coefficient(t.factors, t.z_power) != t.coeff) return false;
  }
  return true;
}

std::string FieldExpr::render(const OscillatorSystem& sys) const {
  if (terms_.empty()) return "0";
  static const char* names[] = {"a*", "a", "b"};
  std::string out;
  for (const auto& t : terms_) {
    std::string body;
    if (t.z_power != 0) body += "z^{" + std::to_string(-t.z_power) + "} ";
    const bool wrap = t.factors.size() > 1;
    if (wrap) body += ':';
    for (const auto& f : t.factors) {
      if (f.derivs == 1) body += "∂_z ";
      if (f.derivs > 1) body += "∂_z^" + std::to_string(f.derivs) + ' ';
      body += std::string(names[static_cast<int>(f.family)]) + "_{" +
              sys.label_name(f.family, f.label) + "}(z)";
    }
    if (wrap) body += ':';

    std::string coeff;
    bool negative = false;
    if (t.coeff.is_constant()) {
      Rational v = t.coeff.constant();
      negative = v < 0;
      if (negative) v = -v;
      if (v != 1) coeff = to_string(v) + ' ';
    } else if (t.coeff.terms().size() == 1) {
      coeff = t.coeff.str();
      negative = coeff.front() == '-';
      if (negative) coeff.erase(0, 1);
      coeff += ' ';
    } else {
      coeff = '(' + t.coeff.str() + ") ";
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + coeff + body;
    } else {
      out += (negative ? " - " : " + ") + coeff + body;
    }
  }
  return out;
}

// ---- mode extraction ------------------------------------------------------------------

namespace {

struct Slot {
  Family family;
  int label;      // label of the oscillator that actually acts
  int residue;    // its mode lattice
  int sign;       // −1 for transposed a*
  int weight;
  int derivs;
};

struct Choice {
  enum Kind { Creator, Partner, Scalar } kind = Creator;
  Osc partner;  // for Partner
};

int creator_top(const FockSpace& space, Family fam, int label, int residue) {
  const int n = space.system().order();
  if (residue == 0 && space.is_creator(Osc{fam, label, 0})) return 0;
  return residue == 0 ? -n : residue - n;
}

void apply_term(const FieldTerm& term, int n_ticks, const FockMonomial& v, const FockSpace& space,
                FockVector& out) {
  const auto& sys = space.system();
  const int N = sys.order();
  const bool tr = space.transposed();

  std::vector<Slot> slots;
  int weight_sum = 0;
  for (const auto& f : term.factors) {
    Slot s{f.family, f.label, 0, 1, field_weight(f.family), f.derivs};
    if (f.family == Family::B) {
      if (!space.has_b_zero_modes()) throw ValidationError("field uses b but the space has none");
    } else {
      if (!space.has_a()) throw ValidationError("field uses a/a* but the space has none");
      if (tr) {
        s.label = sys.conjugate_label(f.family, f.label);
        if (f.family == Family::AStar) s.sign = -1;
      }
    }
    s.residue = sys.residue(s.family, s.label);
    weight_sum += s.weight + s.derivs;
    slots.push_back(s);
  }
  // Σ (original modes) in ticks
  const int total = n_ticks + N * (1 - term.z_power - weight_sum);
  const int target = tr ? -total : total;

  const std::size_t q = slots.size();
  std::vector<std::vector<Choice>> options(q);
  for (std::size_t i = 0; i < q; ++i) {
    const Slot& s = slots[i];
    if (s.family == Family::B) {
      if (sys.b_labels()[s.label].i == 0) options[i].push_back({Choice::Scalar, {}});
      if (!space.has_b_oscillators()) continue;
    }
    const Family pf = s.family == Family::A   ? Family::AStar
                      : s.family == Family::AStar ? Family::A
                                                  : Family::B;
    for (const auto& f : v.factors()) {
      if (f.osc.family == pf && f.osc.label == s.label) {
        options[i].push_back({Choice::Partner, f.osc});
      }
    }
    options[i].push_back({Choice::Creator, {}});
  }

  std::vector<int> pick(q, 0);
  std::vector<int> actual(q, 0);
  std::vector<std::size_t> creators;

  auto emit = [&]() {
    Coeff c = term.coeff;
    Rational scalar = 1;
    for (std::size_t i = 0; i < q; ++i) {
      const Slot& s = slots[i];
      scalar *= s.sign;
      if (s.derivs > 0) {
        const int m = tr ? -actual[i] : actual[i];
        const Rational e = frac(-m, N) - s.weight;
        for (int t = 0; t < s.derivs; ++t) scalar *= e - t;
        if (scalar == 0) return;
      }
    }
    FockMonomial mono = v;
    for (std::size_t i = 0; i < q; ++i) {
      const Choice& ch = options[i][pick[i]];
      if (ch.kind == Choice::Scalar) {
        c *= space.zero_mode(slots[i].label);
      } else if (ch.kind == Choice::Partner) {
        const Osc ann{slots[i].family, slots[i].label, actual[i]};
        const int p = mono.remove_one(ch.partner);
        if (p == 0) return;
        c *= contraction(ann, ch.partner, space);
        scalar *= p;
      }
      if (c.is_zero()) return;
    }
    for (std::size_t i : creators) mono.multiply(Osc{slots[i].family, slots[i].label, actual[i]});
    out.add(mono, c * scalar);
  };

  // distribute the remaining ticks over creator slots
  std::function<void(std::size_t, int)> spread = [&](std::size_t idx, int remaining) {
    if (idx == creators.size()) {
      if (remaining == 0) emit();
      return;
    }
    const std::size_t i = creators[idx];
    const Slot& s = slots[i];
    const int top = creator_top(space, s.family, s.label, s.residue);
    int rest_top = 0;
    for (std::size_t r = idx + 1; r < creators.size(); ++r) {
      const Slot& o = slots[creators[r]];
      rest_top += creator_top(space, o.family, o.label, o.residue);
    }
    if (idx + 1 == creators.size()) {
      if (remaining <= top && mod(remaining, N) == s.residue) {
        actual[i] = remaining;
        emit();
      }
      return;
    }
    for (int t = top; t + rest_top >= remaining; t -= N) {
      actual[i] = t;
      spread(idx + 1, remaining - t);
    }
  };

  std::function<void(std::size_t, int)> choose = [&](std::size_t i, int ann_sum) {
    if (i == q) {
      int top = 0;
      for (std::size_t c : creators) {
        top += creator_top(space, slots[c].family, slots[c].label, slots[c].residue);
      }
      const int remaining = target - ann_sum;
      if (creators.empty() ? remaining != 0 : remaining > top) return;
      spread(0, remaining);
      return;
    }
    for (std::size_t o = 0; o < options[i].size(); ++o) {
      pick[i] = static_cast<int>(o);
      const Choice& ch = options[i][o];
      if (ch.kind == Choice::Creator) {
        if (slots[i].family == Family::B && !space.has_b_oscillators()) continue;
        creators.push_back(i);
        choose(i + 1, ann_sum);
        creators.pop_back();
      } else {
        actual[i] = ch.kind == Choice::Scalar ? 0 : -ch.partner.ticks;
        choose(i + 1, ann_sum + actual[i]);
      }
    }
  };
  choose(0, 0);
}

}  // namespace

ModeOperator::ModeOperator(const FieldExpr& f, const Rational& n, const FockSpace& space)
    : f_(std::make_shared<const FieldExpr>(f)), n_(n), n_ticks_(0), space_(space) {
  const int N = space.system().order();
  const Rational t = n * N;
  if (t.get_den() != 1) throw ValidationError("mode " + to_string(n) + " is not in (1/N)ℤ");
  n_ticks_ = static_cast<int>(t.get_num().get_si());
  if (mod(n_ticks_, N) != mod(f.j(), N)) {
    throw ValidationError("mode " + to_string(n) + " is off the lattice of a j=" +
                          std::to_string(f.j()) + " field");
  }
}

const FockVector& ModeOperator::apply(const FockMonomial& m) const {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  FockVector out;
  for (const auto& t : f_->terms()) apply_term(t, n_ticks_, m, space_, out);
  return cache_.emplace(m, std::move(out)).first->second;
}

FockVector ModeOperator::apply(const FockVector& v) const {
  FockVector out;
  for (const auto& [m, c] : v.terms()) out.add(apply(m), c);
  return out;
}

ModeOperator mode(const FieldExpr& f, const Rational& n, const FockSpace& space) {
  return ModeOperator(f, n, space);
}

// ---- A₂⁽²⁾ currents ------------------------------------------------------------------------

CurrentMap explicit_currents_a22(const OscillatorSystem& sys) {
  const int a0 = sys.a_index(0, 1), a1 = sys.a_index(1, 1), a2 = sys.a_index(1, 2);
  const int b0 = sys.b_index(0, 1), b1 = sys.b_index(1, 1);
  auto A = [](int l) { return a_field(l); };
  auto S = [](int l) { return astar_field(l); };
  auto B = [](int l) { return b_field(l); };
  const Rational h = frac(1, 2), q = frac(1, 4);
  const Coeff lam = Coeff(-1) - Coeff::level() * Rational(2);  // (−1 − 2k)
  using L = GeneratorLabel;

  CurrentMap c;
  FieldExpr e0a(0);
  e0a.add(-1, {A(a0)}).add(Rational(-h), {S(a1), A(a2)});
  c.emplace(L::e(0, 1), e0a);

  FieldExpr e1a(1);
  e1a.add(-1, {A(a1)}).add(h, {S(a0), A(a2)});
  c.emplace(L::e(1, 1), e1a);

  FieldExpr h0(0);
  h0.add(-1, {S(a0), A(a0)}).add(-1, {S(a1), A(a1)}).add(-2, {S(a2), A(a2)}).add(1, {B(b0)});
  c.emplace(L::h(0, 1), h0);

  FieldExpr h1(1);
  h1.add(-3, {S(a0), A(a1)}).add(-3, {S(a1), A(a0)}).add(1, {B(b1)});
  c.emplace(L::h(1, 1), h1);

  FieldExpr e0m(0);
  e0m.add(h, {S(a0), S(a0), A(a0)})
      .add(frac(3, 2), {S(a1), S(a1), A(a0)})
      .add(2, {S(a0), S(a1), A(a1)})
      .add(-2, {S(a2), A(a1)})
      .add(q, {S(a1), S(a0), S(a0), A(a2)})
      .add(Rational(-q), {S(a1), S(a1), S(a1), A(a2)})
      .add(1, {S(a0), S(a2), A(a2)})
      .add(lam, {astar_field(a0, 1)})
      .add(-1, {S(a0), B(b0)})
      .add(-1, {S(a1), B(b1)});
  c.emplace(L::e(0, -1), e0m);

  FieldExpr e1m(1);
  e1m.add(2, {S(a2), A(a0)})
      .add(2, {S(a0), S(a1), A(a0)})
      .add(frac(3, 2), {S(a0), S(a0), A(a1)})
      .add(h, {S(a1), S(a1), A(a1)})
      .add(q, {S(a0), S(a0), S(a0), A(a2)})
      .add(Rational(-q), {S(a0), S(a1), S(a1), A(a2)})
      .add(1, {S(a1), S(a2), A(a2)})
      .add(lam, {astar_field(a1, 1)})
      .add(-1, {S(a0), B(b1)})
      .add(-1, {S(a1), B(b0)})
      .add(h, {S(a1)}, 1);
  c.emplace(L::e(1, -1), e1m);
  return c;
}

namespace {

int root_of(const OscillatorSystem& sys, const FieldFactor& f) {
  if (f.family == Family::B) return 0;
  const int r = sys.a_labels()[f.label].root;
  return f.family == Family::A ? r : -r;
}

int parity_of(const OscillatorSystem& sys, const FieldFactor& f) {
  return f.family == Family::B ? sys.b_labels()[f.label].i : sys.a_labels()[f.label].j;
}

/// Field monomials of conformal weight 1 with the given root and parity.
std::vector<FieldTerm> ansatz(const OscillatorSystem& sys, int root, int j, int max_degree) {
  const int N = sys.order();
  const int na = static_cast<int>(sys.a_labels().size());
  const int nb = static_cast<int>(sys.b_labels().size());
  std::vector<FieldTerm> heads;  // the weight-1 factor
  for (int l = 0; l < na; ++l) {
    heads.push_back({Coeff(1), {a_field(l)}, 0});
    heads.push_back({Coeff(1), {astar_field(l, 1)}, 0});
  }
  for (int l = 0; l < nb; ++l) heads.push_back({Coeff(1), {b_field(l)}, 0});
  heads.push_back({Coeff(1), {}, 1});

  std::vector<std::vector<int>> monos{{}};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& m : monos) {
      if (static_cast<int>(m.size()) != d - 1) continue;
      for (int l = m.empty() ? 0 : m.back(); l < na; ++l) {
        auto mm = m;
        mm.push_back(l);
        next.push_back(mm);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
  }

  std::vector<FieldTerm> out;
  for (const auto& m : monos) {
    for (const auto& h : heads) {
      FieldTerm t = h;
      for (int l : m) t.factors.push_back(astar_field(l));
      if (t.factors.empty()) continue;
      int r = 0, p = 0;
      for (const auto& f : t.factors) {
        r += root_of(sys, f);
        p += parity_of(sys, f);
      }
      if (r != root || mod(p, N) != mod(j, N)) continue;
      std::sort(t.factors.begin(), t.factors.end());
      out.push_back(std::move(t));
    }
  }
  return out;
}

struct FitResult {
  std::vector<Rational> x;
  std::size_t equations = 0;
};

FitResult fit_at_level(const OscillatorSystem& sys, const std::vector<FieldTerm>& terms, int j,
                       const FieldExpr& fx, const FieldExpr& fy, const Rational& c,
                       const FockSpace& space, const DerivationOptions& opts) {
  const int N = sys.order();
  const auto basis = basis_up_to_degree(space, opts.slice);
  std::vector<ModeOperator> unknown_ops;
  std::map<std::tuple<int, std::size_t, FockMonomial>, std::map<int, Rational>> rows;
  ModeOperator x0(fx, 0, space);
  const int cols = static_cast<int>(terms.size());
  for (int t = -opts.mode_bound_ticks; t <= opts.mode_bound_ticks; ++t) {
    if (mod(t, N) != mod(j, N)) continue;
    const Rational n = frac(t, N);
    ModeOperator yn(fy, n, space);
    std::vector<ModeOperator> ops;
    for (const auto& term : terms) {
      FieldExpr e(j);
      e.add(term.coeff, term.factors, term.z_power);
      ops.emplace_back(e, n, space);
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const FockVector v(basis[b]);
      FockVector rhs = x0.apply(yn.apply(v)) - yn.apply(x0.apply(v));
      for (const auto& [m, val] : rhs.terms()) {
        rows[{t, b, m}][cols] = val.constant() / c;
      }
      for (int u = 0; u < cols; ++u) {
        for (const auto& [m, val] : ops[u].apply(basis[b]).terms()) {
          rows[{t, b, m}][u] = val.constant();
        }
      }
    }
  }
  RationalMatrix a(rows.size(), cols);
  std::vector<Rational> rhs(rows.size());
  std::size_t r = 0;
  for (const auto& [key, row] : rows) {
    for (const auto& [col, val] : row) {
      if (col == cols) {
        rhs[r] = val;
      } else {
        a(r, col) = val;
      }
    }
    ++r;
  }
  FitResult out;
  out.equations = rows.size();
  if (!solve(a, rhs, out.x)) {
    throw ConsistencyError("commutators do not assemble into a field of the expected shape");
  }
  if (rank(a) != static_cast<std::size_t>(cols)) {
    throw ConsistencyError("ansatz is not determined by the commutators on this slice");
  }
  return out;
}

DerivedCurrent derive_one(const A22& a22, const OscillatorSystem& sys, const CurrentMap& currents,
                          int x_idx, int y_idx, int z_idx, const DerivationOptions& opts) {
  const auto& g = a22.algebra;
  const GeneratorLabel xl = g.label(x_idx), yl = g.label(y_idx), zl = g.label(z_idx);
  const auto br = g.structure_constants(x_idx, y_idx);
  if (br.size() != 1 || br.begin()->first != z_idx) {
    throw ConsistencyError("[" + xl.name() + ", " + yl.name() + "] is not a multiple of " +
                           zl.name());
  }
  const Rational c = br.begin()->second;
  const auto terms = ansatz(sys, zl.root / 1, zl.j, opts.max_astar_degree);
  if (opts.fit_levels.size() < 2) throw ValidationError("need at least two fit levels");

  auto sys_ptr = std::make_shared<const OscillatorSystem>(sys);
  std::vector<std::vector<Rational>> sols;
  std::size_t equations = 0;
  for (const auto& k : opts.fit_levels) {
    auto space = FockSpace::tensor(sys_ptr, Coeff(k + g.dual_coxeter()), {Coeff(opts.chi)});
    const auto fx = currents.at(xl).substitute(k, opts.chi);
    const auto fy = currents.at(yl).substitute(k, opts.chi);
    auto fit = fit_at_level(sys, terms, zl.j, fx, fy, c, space, opts);
    equations += fit.equations;
    sols.push_back(std::move(fit.x));
  }
  // linear interpolation in k through the first two levels
  const Rational& k0 = opts.fit_levels[0];
  const Rational& k1 = opts.fit_levels[1];
  FieldExpr out(zl.j);
  for (std::size_t u = 0; u < terms.size(); ++u) {
    const Rational slope = (sols[1][u] - sols[0][u]) / (k1 - k0);
    const Rational intercept = sols[0][u] - slope * k0;
    for (std::size_t s = 2; s < sols.size(); ++s) {
      if (intercept + slope * opts.fit_levels[s] != sols[s][u]) {
        throw ConsistencyError("derived current is not linear in the level");
      }
    }
    out.add(Coeff(intercept) + Coeff::level() * slope, terms[u].factors, terms[u].z_power);
  }
  return DerivedCurrent{zl, out, xl, yl, c, terms.size(), equations};
}

}  // namespace

std::pair<DerivedCurrent, DerivedCurrent> derive_missing_currents(const A22& a22,
                                                                  const OscillatorSystem& sys,
                                                                  const CurrentMap& currents,
                                                                  const DerivationOptions& opts) {
  return {derive_one(a22, sys, currents, a22.e0_alpha, a22.e1_alpha, a22.e1_2alpha, opts),
          derive_one(a22, sys, currents, a22.e0_malpha, a22.e1_malpha, a22.e1_m2alpha, opts)};
}

CurrentMap wakimoto_currents_a22(const A22& a22, const OscillatorSystem& sys) {
  CurrentMap c = explicit_currents_a22(sys);
  auto [plus, minus] = derive_missing_currents(a22, sys, c);
  c.emplace(plus.label, plus.field);
  c.emplace(minus.label, minus.field);
  return c;
}

std::string current_name(const GeneratorLabel& l) {
  std::string s = l.name();  // E_{j,γ} → E_{(j,γ)}
  const auto open = s.find('{');
  s.insert(open + 1, "(");
  s.insert(s.size() - 1, ")");
  return s;
}

std::string dump_currents(const A22& a22, const OscillatorSystem& sys, const CurrentMap& currents) {
  std::string out;
  for (const auto& l : a22.algebra.labels()) {
    auto it = currents.find(l);
    if (it == currents.end()) continue;
    out += current_name(l) + "(z) = " + it->second.render(sys) + "\n";
  }
  return out;
}

}  // namespace wakimoto
