#include "wakimoto/fock.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>

#include "wakimoto/errors.hpp"

namespace wakimoto {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

std::string root_name(int root) {
  std::string s = root < 0 ? "-" : "";
  const int mag = root < 0 ? -root : root;
  if (mag != 1) s += std::to_string(mag);
  return s + "α";
}

}  // namespace

// ---- OscillatorSystem --------------------------------------------------------

OscillatorSystem::OscillatorSystem(const LieAlgebra& g, const Automorphism& sigma)
    : order_(sigma.order()) {
  const auto spaces = eigenspace_decompose(g, sigma);
  // Rank-1 g₀: the simple root is the smallest positive h₀-weight in g₀.
  Rational unit = 0;
  for (const auto& s : spaces) {
    for (const auto& w : s.weights) {
      if (w.weight.size() != 1) throw ValidationError("only rank-1 g₀ is supported");
      if (s.j == 0 && w.positive && (unit == 0 || w.weight[0] < unit)) unit = w.weight[0];
    }
  }
  if (unit == 0) throw ValidationError("g₀ has no positive root");
  for (const auto& s : spaces) {
    for (const auto& w : s.weights) {
      if (!w.positive) continue;
      const Rational q = w.weight[0] / unit;
      if (q.get_den() != 1 || w.basis.size() != 1) {
        throw ValidationError("root space is not one-dimensional on the root lattice");
      }
      a_labels_.push_back(ALabel{s.j, static_cast<int>(q.get_num().get_si()), w.basis[0]});
    }
    for (std::size_t x = 0; x < s.cartan.size(); ++x) {
      for (std::size_t y = 0; y < s.cartan.size(); ++y) {
        if (x != y && g.form(s.cartan[x], s.cartan[y]) != 0) {
          throw ValidationError("Cartan basis of g_j is not orthogonal");
        }
      }
      const int h = s.cartan[x];
      b_labels_.push_back(BLabel{s.j, g.label(h).cartan, g.form(h, h), h});
    }
  }
  std::sort(a_labels_.begin(), a_labels_.end(), [](const ALabel& x, const ALabel& y) {
    return std::pair(x.j, x.root) < std::pair(y.j, y.root);
  });
  std::sort(b_labels_.begin(), b_labels_.end(), [](const BLabel& x, const BLabel& y) {
    return std::pair(x.i, x.cartan) < std::pair(y.i, y.cartan);
  });
}

int OscillatorSystem::a_index(int j, int root) const {
  for (std::size_t i = 0; i < a_labels_.size(); ++i) {
    if (a_labels_[i].j == j && a_labels_[i].root == root) return static_cast<int>(i);
  }
  throw ValidationError("no oscillator label (" + std::to_string(j) + "," + root_name(root) + ")");
}

int OscillatorSystem::b_index(int i, int cartan) const {
  for (std::size_t x = 0; x < b_labels_.size(); ++x) {
    if (b_labels_[x].i == i && b_labels_[x].cartan == cartan) return static_cast<int>(x);
  }
  throw ValidationError("no boson label (" + std::to_string(i) + "," + std::to_string(cartan) +
                        ")");
}

int OscillatorSystem::residue(Family family, int label) const {
  switch (family) {
    case Family::AStar:
      return mod(-a_labels_.at(label).j, order_);
    case Family::A:
      return mod(a_labels_.at(label).j, order_);
    case Family::B:
      return mod(b_labels_.at(label).i, order_);
  }
  return 0;
}

int OscillatorSystem::conjugate_label(Family family, int label) const {
  if (family == Family::B) throw ValidationError("transpose is defined on a-oscillators only");
  const auto& l = a_labels_.at(label);
  return a_index(mod(-l.j, order_), l.root);
}

std::string OscillatorSystem::label_name(Family family, int label) const {
  if (family == Family::B) {
    const auto& l = b_labels_.at(label);
    return "(" + std::to_string(l.i) + "," + std::to_string(l.cartan) + ")";
  }
  const auto& l = a_labels_.at(label);
  return "(" + std::to_string(l.j) + "," + root_name(l.root) + ")";
}

std::string osc_name(const Osc& osc, const OscillatorSystem& sys) {
  static const char* names[] = {"a*", "a", "b"};
  return std::string(names[static_cast<int>(osc.family)]) + "_{" +
         to_string(osc.mode(sys.order())) + "," + sys.label_name(osc.family, osc.label) + "}";
}

// ---- FockMonomial ---------------------------------------------------------------

FockMonomial FockMonomial::from_factors(std::vector<Factor> factors) {
  FockMonomial m;
  for (const auto& f : factors) m.multiply(f.osc, f.power);
  return m;
}

int FockMonomial::power_of(const Osc& osc) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), osc,
                             [](const Factor& f, const Osc& o) { return f.osc < o; });
  return it != factors_.end() && it->osc == osc ? it->power : 0;
}

int FockMonomial::degree_ticks() const {
  int d = 0;
  for (const auto& f : factors_) d -= f.osc.ticks * f.power;
  return d;
}

int FockMonomial::alpha_shift(const OscillatorSystem& sys) const {
  int s = 0;
  for (const auto& f : factors_) {
    if (f.osc.family == Family::B) continue;
    const int root = sys.a_labels()[f.osc.label].root;
    s += (f.osc.family == Family::A ? root : -root) * f.power;
  }
  return s;
}

void FockMonomial::multiply(const Osc& osc, int power) {
  if (power <= 0) return;
  auto it = std::lower_bound(factors_.begin(), factors_.end(), osc,
                             [](const Factor& f, const Osc& o) { return f.osc < o; });
  if (it != factors_.end() && it->osc == osc) {
    it->power += power;
  } else {
    factors_.insert(it, Factor{osc, power});
  }
}

int FockMonomial::remove_one(const Osc& osc) {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), osc,
                             [](const Factor& f, const Osc& o) { return f.osc < o; });
  if (it == factors_.end() || !(it->osc == osc)) return 0;
  const int p = it->power;
  if (p == 1) {
    factors_.erase(it);
  } else {
    --it->power;
  }
  return p;
}

std::string FockMonomial::str(const OscillatorSystem& sys) const {
  if (factors_.empty()) return "vac";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += ' ';
    s += osc_name(f.osc, sys);
    if (f.power != 1) s += "^" + std::to_string(f.power);
  }
  return s;
}

std::size_t FockMonomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : factors_) {
    const std::size_t x = (static_cast<std::size_t>(f.osc.family) << 56) ^
                          (static_cast<std::size_t>(f.osc.label) << 48) ^
                          (static_cast<std::size_t>(static_cast<std::uint32_t>(f.osc.ticks)) << 16) ^
                          static_cast<std::size_t>(f.power);
    h = (h ^ x) * 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

bool FockMonomial::operator<(const FockMonomial& o) const {
  return std::lexicographical_compare(
      factors_.begin(), factors_.end(), o.factors_.begin(), o.factors_.end(),
      [](const Factor& a, const Factor& b) {
        if (!(a.osc == b.osc)) return a.osc < b.osc;
        return a.power < b.power;
      });
}

// ---- FockVector -------------------------------------------------------------------

FockVector::FockVector(const FockMonomial& m, Coeff c) { add(m, c); }

Coeff FockVector::coefficient(const FockMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff() : it->second;
}

void FockVector::add(const FockMonomial& m, const Coeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FockVector::add(const FockVector& v, const Coeff& scale) {
  if (scale.is_zero()) return;
  const bool unit = scale == Coeff(1);
  for (const auto& [m, c] : v.terms_) add(m, unit ? c : c * scale);
}

FockVector FockVector::scaled(const Coeff& c) const {
  FockVector out;
  out.add(*this, c);
  return out;
}

FockVector FockVector::substitute(const std::optional<Rational>& level,
                                  const std::optional<Rational>& weight) const {
  FockVector out;
  for (const auto& [m, c] : terms_) out.add(m, c.substitute(level, weight));
  return out;
}

FockVector FockVector::operator+(const FockVector& o) const {
  FockVector out = *this;
  out.add(o);
  return out;
}

FockVector FockVector::operator-(const FockVector& o) const {
  FockVector out = *this;
  out.add(o, Coeff(-1));
  return out;
}

std::map<std::string, std::string> FockVector::to_strings(const OscillatorSystem& sys) const {
  std::map<std::string, std::string> out;
  for (const auto& [m, c] : terms_) out[m.str(sys)] = c.str();
  return out;
}

// ---- FockSpace ------------------------------------------------------------------------

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::MSigma:
      return "M_sigma";
    case SpaceKind::PiSigma:
      return "pi_sigma";
    case SpaceKind::Tensor:
      return "tensor";
    case SpaceKind::MTilde:
      return "M_tilde";
    case SpaceKind::Restricted:
      return "restricted";
  }
  return "?";
}

namespace {

std::vector<Coeff> checked_zero_modes(const OscillatorSystem& sys, std::vector<Coeff> c) {
  std::size_t needed = 0;
  for (const auto& l : sys.b_labels()) needed += l.i == 0 ? 1 : 0;
  if (c.size() != needed) {
    throw ValidationError("expected " + std::to_string(needed) + " highest-weight coordinates");
  }
  return c;
}

}  // namespace

FockSpace FockSpace::m_sigma(std::shared_ptr<const OscillatorSystem> sys) {
  FockSpace s;
  s.kind_ = SpaceKind::MSigma;
  s.sys_ = std::move(sys);
  s.id_ = next_space_id();
  return s;
}

FockSpace FockSpace::pi_sigma(std::shared_ptr<const OscillatorSystem> sys, Coeff r,
                              std::vector<Coeff> c) {
  FockSpace s;
  s.kind_ = SpaceKind::PiSigma;
  s.c_ = checked_zero_modes(*sys, std::move(c));
  s.sys_ = std::move(sys);
  s.r_ = std::move(r);
  s.id_ = next_space_id();
  return s;
}

FockSpace FockSpace::tensor(std::shared_ptr<const OscillatorSystem> sys, Coeff r,
                            std::vector<Coeff> c) {
  FockSpace s = pi_sigma(std::move(sys), std::move(r), std::move(c));
  s.kind_ = SpaceKind::Tensor;
  return s;
}

FockSpace FockSpace::restricted(std::shared_ptr<const OscillatorSystem> sys,
                                std::vector<Coeff> c) {
  FockSpace s = pi_sigma(std::move(sys), Coeff(0), std::move(c));
  s.kind_ = SpaceKind::Restricted;
  return s;
}

FockSpace FockSpace::m_tilde(std::shared_ptr<const OscillatorSystem> sys, std::vector<Coeff> c) {
  FockSpace s = restricted(std::move(sys), std::move(c));
  s.kind_ = SpaceKind::MTilde;
  return s;
}

const Coeff& FockSpace::zero_mode(int b_label) const {
  const auto& labels = sys_->b_labels();
  if (labels.at(b_label).i != 0) throw ValidationError("only b_{0,(0,a)} has a zero mode");
  int slot = 0;
  for (int x = 0; x < b_label; ++x) slot += labels[x].i == 0 ? 1 : 0;
  return c_.at(slot);
}

bool FockSpace::is_creator(const Osc& osc) const {
  switch (osc.family) {
    case Family::AStar:
      return transposed() ? osc.ticks < 0 : osc.ticks <= 0;
    case Family::A:
      return transposed() ? osc.ticks <= 0 : osc.ticks < 0;
    case Family::B:
      return osc.ticks < 0;
  }
  return false;
}

void FockSpace::check(const Osc& osc) const {
  const int n = osc.family == Family::B ? static_cast<int>(sys_->b_labels().size())
                                        : static_cast<int>(sys_->a_labels().size());
  if (osc.label < 0 || osc.label >= n) throw ValidationError("oscillator label out of range");
  if (mod(osc.ticks, sys_->order()) != sys_->residue(osc.family, osc.label)) {
    throw ValidationError(osc_name(osc, *sys_) + " is off its mode lattice");
  }
  if (osc.family == Family::B) {
    if (kind_ == SpaceKind::MSigma) throw ValidationError("M^σ has no b oscillators");
  } else if (!has_a()) {
    throw ValidationError("π^σ has no a oscillators");
  }
}

Coeff contraction(const Osc& ann, const Osc& cre, const FockSpace& space) {
  if (ann.label != cre.label || ann.ticks + cre.ticks != 0) return Coeff();
  if (ann.family == Family::A && cre.family == Family::AStar) return Coeff(1);
  if (ann.family == Family::AStar && cre.family == Family::A) return Coeff(-1);
  if (ann.family == Family::B && cre.family == Family::B) {
    const auto& sys = space.system();
    return space.r() * (frac(ann.ticks, sys.order()) * sys.b_labels()[ann.label].gram);
  }
  return Coeff();
}

// ---- truncation, action ---------------------------------------------------------------

bool Truncation::admits(const FockMonomial& m, const FockSpace& space) const {
  if (m.degree_ticks() > degree_ticks) return false;
  if (zero_mode_cap) {
    int z = 0;
    for (const auto& f : m.factors()) z += f.osc.ticks == 0 ? f.power : 0;
    if (z > *zero_mode_cap) return false;
  }
  if (alpha_floor && weight_of(m, space).alpha < *alpha_floor) return false;
  return true;
}

FockVector apply_oscillator(const Osc& g, const FockVector& v, const FockSpace& space) {
  space.check(g);
  FockVector out;
  if (g.family == Family::B) {
    if (g.ticks == 0) {
      if (space.system().b_labels()[g.label].i == 0) return v.scaled(space.zero_mode(g.label));
      return out;
    }
    if (!space.has_b_oscillators()) return out;
  }
  if (space.is_creator(g)) {
    for (const auto& [m, c] : v.terms()) {
      FockMonomial mm = m;
      mm.multiply(g);
      out.add(mm, c);
    }
    return out;
  }
  const Family partner_family = g.family == Family::A   ? Family::AStar
                                : g.family == Family::AStar ? Family::A
                                                            : Family::B;
  const Osc partner{partner_family, g.label, -g.ticks};
  const Coeff s = contraction(g, partner, space);
  for (const auto& [m, c] : v.terms()) {
    FockMonomial mm = m;
    const int p = mm.remove_one(partner);
    if (p == 0) continue;
    out.add(mm, c * s * Rational(p));
  }
  return out;
}

FockVector apply_oscillator(const Osc& g, const FockVector& v, const FockSpace& space,
                            const Truncation& t, bool* overflow) {
  FockVector full = apply_oscillator(g, v, space);
  FockVector out;
  for (const auto& [m, c] : full.terms()) {
    if (t.admits(m, space)) {
      out.add(m, c);
    } else if (overflow) {
      *overflow = true;
    }
  }
  return out;
}

// ---- enumeration --------------------------------------------------------------------------

std::vector<Osc> creators_up_to(const FockSpace& space, int max_ticks) {
  const auto& sys = space.system();
  const int n = sys.order();
  std::vector<Osc> out;
  auto add_family = [&](Family fam, int count) {
    for (int label = 0; label < count; ++label) {
      const int res = sys.residue(fam, label);
      // creation modes are ≤ 0; walk down the lattice from the top
      int top = res == 0 ? 0 : res - n;
      for (int t = top; -t <= max_ticks; t -= n) {
        Osc o{fam, label, t};
        if (space.is_creator(o)) out.push_back(o);
      }
    }
  };
  if (space.has_a()) {
    add_family(Family::AStar, static_cast<int>(sys.a_labels().size()));
    add_family(Family::A, static_cast<int>(sys.a_labels().size()));
  }
  if (space.has_b_oscillators()) add_family(Family::B, static_cast<int>(sys.b_labels().size()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FockMonomial> basis_up_to_degree(const FockSpace& space, const Truncation& t) {
  if (t.degree_ticks < 0) return {};
  const auto& sys = space.system();
  const auto gens = creators_up_to(space, t.degree_ticks);
  std::vector<Osc> positive, zero;
  for (const auto& g : gens) (g.ticks == 0 ? zero : positive).push_back(g);
  if (!zero.empty() && !t.zero_mode_cap && !t.alpha_floor) {
    throw TruncationError("degree-0 creators make the slice infinite; set a zero-mode cap or an α floor");
  }
  auto shift = [&](const Osc& o) {
    if (o.family == Family::B) return 0;
    const int root = sys.a_labels()[o.label].root;
    // in M̃ an a_n carries the weight of the matching a*_n of M^σ
    return (o.family == Family::A) != space.transposed() ? root : -root;
  };

  std::vector<FockMonomial> out;
  FockMonomial current;
  std::function<void(std::size_t, int, int)> zero_rec = [&](std::size_t i, int z, int s) {
    if (i == zero.size()) {
      if (t.admits(current, space)) out.push_back(current);
      return;
    }
    zero_rec(i + 1, z, s);
    const int step = shift(zero[i]);
    for (int p = 1;; ++p) {
      if (t.zero_mode_cap && z + p > *t.zero_mode_cap) break;
      // degree-0 creators of this system lower the α-shift; stop once below the floor
      if (t.alpha_floor && step < 0 && s + p * step < *t.alpha_floor) break;
      if (!t.zero_mode_cap && step >= 0) {
        throw TruncationError("a degree-0 creator does not lower the weight; set a zero-mode cap");
      }
      current.multiply(zero[i], 1);
      zero_rec(i + 1, z + p, s + p * step);
    }
    for (int p = current.power_of(zero[i]); p > 0; --p) current.remove_one(zero[i]);
  };
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int deg, int s) {
    if (i == positive.size()) {
      zero_rec(0, 0, s);
      return;
    }
    rec(i + 1, deg, s);
    const int d = -positive[i].ticks;
    int p = 0;
    while (deg + (p + 1) * d <= t.degree_ticks) {
      ++p;
      current.multiply(positive[i], 1);
      rec(i + 1, deg + p * d, s + p * shift(positive[i]));
    }
    for (; p > 0; --p) current.remove_one(positive[i]);
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const FockMonomial& a, const FockMonomial& b) {
    const int da = a.degree_ticks(), db = b.degree_ticks();
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

WeightShift weight_of(const FockMonomial& m, const FockSpace& space) {
  int ticks = 0;
  for (const auto& f : m.factors()) ticks += f.osc.ticks * f.power;
  const int s = m.alpha_shift(space.system());
  return WeightShift{space.transposed() ? -s : s, ticks};
}

// ---- contragredient ------------------------------------------------------------------------

std::pair<int, Osc> transpose(const Osc& g, const OscillatorSystem& sys) {
  if (g.family == Family::B) throw ValidationError("transpose is defined on a-oscillators only");
  Osc t{g.family, sys.conjugate_label(g.family, g.label), -g.ticks};
  return {g.family == Family::AStar ? -1 : 1, t};
}

FockMonomial dual_monomial(const FockMonomial& m) {
  FockMonomial out;
  for (const auto& f : m.factors()) {
    if (f.osc.family == Family::B) throw ValidationError("pairing is defined on a-oscillators only");
    Osc o = f.osc;
    o.family = o.family == Family::A ? Family::AStar : Family::A;
    out.multiply(o, f.power);
  }
  return out;
}

Coeff pairing(const FockVector& v, const FockSpace& tilde, const FockVector& w,
              const FockSpace& sigma) {
  if (tilde.kind() != SpaceKind::MTilde || sigma.kind() != SpaceKind::MSigma) {
    throw ValidationError("pairing needs (M̃^σ, M^σ)");
  }
  Coeff out;
  for (const auto& [m, c] : v.terms()) {
    const FockMonomial d = dual_monomial(m);
    auto it = w.terms().find(d);
    if (it == w.terms().end()) continue;
    Rational norm = 1;
    for (const auto& f : m.factors()) norm *= factorial(f.power);
    out += c * it->second * norm;
  }
  return out;
}

}  // namespace wakimoto
