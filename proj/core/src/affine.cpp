#include "wakimoto/affine.hpp"

#include <json.hpp>

#include "wakimoto/errors.hpp"

namespace wakimoto {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

int to_ticks(const Rational& m, int order) {
  const Rational t = m * order;
  if (t.get_den() != 1) throw ValidationError("mode " + to_string(m) + " is not in (1/N)ℤ");
  return static_cast<int>(t.get_num().get_si());
}

}  // namespace

int eigen_index(const Automorphism& sigma, const LieElement& x) {
  int j = -1;
  for (const auto& [i, v] : x.coords()) {
    int ji = -1;
    for (int p = 0; p < sigma.order(); ++p) {
      if (sigma.entry(i, i) == CyclotomicNumber::root_power(sigma.order(), p)) ji = p;
    }
    if (ji < 0) throw ValidationError("σ is not diagonal on the element");
    if (j >= 0 && ji != j) throw ValidationError("element is not σ-homogeneous");
    j = ji;
  }
  return j < 0 ? 0 : j;
}

AffineElement expected_bracket(const LieAlgebra& g, const Automorphism& sigma, const LieElement& x,
                               const Rational& m, const LieElement& y, const Rational& n) {
  const int N = sigma.order();
  if (mod(to_ticks(m, N), N) != eigen_index(sigma, x) ||
      mod(to_ticks(n, N), N) != eigen_index(sigma, y)) {
    throw ValidationError("mode off the lattice of its generator");
  }
  AffineElement out;
  const LieElement z = bracket(g, x, y);
  if (!z.is_zero()) out.loop.emplace_back(z, m + n);
  if (m + n == 0) out.central = m * normalized_form(g, x, y);
  return out;
}

// ---- Realization ------------------------------------------------------------------------

Realization::Realization(const A22& a22, CurrentMap currents, FockSpace space)
    : a22_(std::make_shared<const A22>(a22)),
      currents_(std::move(currents)),
      space_(std::move(space)),
      omega_(chevalley_involution(a22.algebra)) {
  for (const auto& l : a22.algebra.labels()) {
    if (!currents_.count(l)) throw ValidationError("no current for " + l.name());
  }
}

const ModeOperator& Realization::op(int index, int ticks) const {
  auto key = std::pair(index, ticks);
  auto it = ops_.find(key);
  if (it != ops_.end()) return *it->second;
  const auto& g = a22_->algebra;
  const int N = space_.system().order();
  std::unique_ptr<ModeOperator> p;
  if (space_.transposed()) {
    FieldExpr f(g.label(index).j);
    for (const auto& [k, c] : omega_[index]) f.add(currents_.at(g.label(k)), Coeff(c));
    p = std::make_unique<ModeOperator>(f, frac(-ticks, N), space_);
  } else {
    p = std::make_unique<ModeOperator>(currents_.at(g.label(index)), frac(ticks, N), space_);
  }
  return *ops_.emplace(key, std::move(p)).first->second;
}

FockVector Realization::apply(int index, int ticks, const FockVector& v) const {
  return op(index, ticks).apply(v);
}

FockVector Realization::apply(const LieElement& x, int ticks, const FockVector& v) const {
  FockVector out;
  for (const auto& [i, c] : x.coords()) out.add(apply(i, ticks, v), Coeff(c));
  return out;
}

// ---- verification ----------------------------------------------------------------------------

RelationResult verify_relation(const Realization& rho, int x, const Rational& m, int y,
                               const Rational& n, const Truncation& slice, const Coeff& level) {
  const auto& a22 = rho.algebra();
  const auto& g = a22.algebra;
  const auto& space = rho.space();
  const int N = space.system().order();
  const int mt = to_ticks(m, N), nt = to_ticks(n, N);
  const auto ex = LieElement::basis(g, x), ey = LieElement::basis(g, y);
  const AffineElement expected = expected_bracket(g, a22.sigma, ex, m, ey, n);

  RelationResult r;
  r.x = g.label(x);
  r.m = m;
  r.y = g.label(y);
  r.n = n;
  r.central = level * expected.central;
  const auto basis = basis_up_to_degree(space, slice);
  for (const auto& mono : basis) {
    const FockVector v(mono);
    FockVector lhs = rho.apply(x, mt, rho.apply(y, nt, v)) - rho.apply(y, nt, rho.apply(x, mt, v));
    const int expected_degree = mono.degree_ticks() - mt - nt;
    for (const auto& [q, c] : lhs.terms()) {
      if (q.degree_ticks() != expected_degree) {
        throw ConsistencyError("commutator broke the degree grading on " + mono.str(space.system()));
      }
    }
    FockVector rhs = v.scaled(r.central);
    for (const auto& [z, zm] : expected.loop) rhs.add(rho.apply(z, to_ticks(zm, N), v));
    ++r.vectors;
    FockVector diff = lhs - rhs;
    if (!diff.is_zero()) {
      r.pass = false;
      r.witness = mono.str(space.system());
      r.discrepancy = std::move(diff);
      break;
    }
  }
  return r;
}

std::vector<Rational> compatible_modes(const A22& a22, int index, const Rational& bound) {
  const int N = a22.sigma.order();
  const int j = a22.algebra.label(index).j;
  const Rational scaled = bound * N;
  const long top = mpz_class(scaled.get_num() / scaled.get_den()).get_si();
  std::vector<Rational> out;
  for (long t = -top; t <= top; ++t) {
    if (mod(static_cast<int>(t), N) == mod(j, N)) out.push_back(frac(t, N));
  }
  return out;
}

FockSpace make_space(const A22& a22, std::shared_ptr<const OscillatorSystem> sys, SpaceKind kind,
                     const std::optional<Rational>& level, const Rational& chi) {
  const int hv = a22.algebra.dual_coxeter();
  const Coeff k = level ? Coeff(*level) : Coeff::level();
  switch (kind) {
    case SpaceKind::Tensor:
      return FockSpace::tensor(std::move(sys), k + Coeff(hv), {Coeff(chi)});
    case SpaceKind::Restricted:
    case SpaceKind::MTilde:
      if (!level || *level != -hv) {
        throw ValidationError(to_string(kind) + " exists only at the critical level k = " +
                              std::to_string(-hv));
      }
      return kind == SpaceKind::Restricted ? FockSpace::restricted(std::move(sys), {Coeff(chi)})
                                           : FockSpace::m_tilde(std::move(sys), {Coeff(chi)});
    default:
      throw ValidationError("currents act on tensor, restricted or contragredient spaces only");
  }
}

std::vector<VerificationReport> verify_all(const A22& a22,
                                           std::shared_ptr<const OscillatorSystem> sys,
                                           const CurrentMap& currents, const VerifyConfig& config,
                                           const std::vector<std::optional<Rational>>& levels) {
  std::vector<VerificationReport> out;
  const int dim = a22.algebra.dim();
  for (const auto& level : levels) {
    CurrentMap cur;
    for (const auto& [l, f] : currents) cur.emplace(l, f.substitute(level, std::nullopt));
    Realization rho(a22, std::move(cur), make_space(a22, sys, config.kind, level, config.chi));
    VerificationReport rep;
    rep.level = level ? to_string(*level) : "symbolic";
    rep.chi = to_string(config.chi);
    rep.space = to_string(config.kind);
    rep.truncation = config.slice;
    rep.mode_bound = config.mode_bound;
    const Coeff k = level ? Coeff(*level) : Coeff::level();
    for (int x = 0; x < dim; ++x) {
      for (int y = 0; y < dim; ++y) {
        for (const auto& m : compatible_modes(a22, x, config.mode_bound)) {
          for (const auto& n : compatible_modes(a22, y, config.mode_bound)) {
            rep.results.push_back(verify_relation(rho, x, m, y, n, config.slice, k));
          }
        }
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

bool VerificationReport::all_pass() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  std::size_t f = 0;
  for (const auto& r : results) f += r.pass ? 0 : 1;
  return f;
}

std::string VerificationReport::to_json(const OscillatorSystem& sys, int indent) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["level"] = level;
  j["chi"] = chi;
  j["space"] = space;
  j["truncation"] = {{"degree", to_string(frac(truncation.degree_ticks, sys.order()))}};
  if (truncation.zero_mode_cap) j["truncation"]["zero_mode_cap"] = *truncation.zero_mode_cap;
  if (truncation.alpha_floor) j["truncation"]["alpha_floor"] = *truncation.alpha_floor;
  j["mode_bound"] = to_string(mode_bound);
  j["checked"] = results.size();
  j["failures"] = failures();
  ordered_json rows = ordered_json::array();
  for (const auto& r : results) {
    ordered_json e;
    e["pair"] = {r.x.name(), r.y.name()};
    e["modes"] = {to_string(r.m), to_string(r.n)};
    e["level"] = level;
    e["status"] = r.pass ? "pass" : "fail";
    e["central_term"] = r.central.str();
    e["vectors"] = r.vectors;
    if (!r.pass) {
      e["witness"] = r.witness;
      e["discrepancy"] = r.discrepancy.to_strings(sys);
    }
    rows.push_back(std::move(e));
  }
  j["results"] = std::move(rows);
  return j.dump(indent);
}

}  // namespace wakimoto
