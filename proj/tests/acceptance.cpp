// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact (tolerance 0).

#include <array>
#include <cstdlib>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wakimoto/characters.hpp"
#include "wakimoto/singular.hpp"

#ifndef WAKIMOTO_CLI_PATH
#error "WAKIMOTO_CLI_PATH must point at the wakimoto executable"
#endif

using namespace wakimoto;
using namespace testing;

namespace {

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int id, std::string name, bool pass, std::string detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << name << "): " << detail << std::endl;
  lines.push_back({id, std::move(name), pass, std::move(detail)});
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << x;
  return os.str();
}

const RootDatum& datum() {
  static const RootDatum d(world().a22.algebra, world().a22.sigma);
  return d;
}

// ---- 1, 2, 7 ------------------------------------------------------------------------

std::vector<VerificationReport> tensor_reports;
std::vector<VerificationReport> critical_reports;

void relations(bool print) {
  const auto& w = world();
  VerifyConfig cfg;
  cfg.kind = SpaceKind::Tensor;
  cfg.chi = frac(1, 3);
  cfg.slice = Truncation{4, 1, std::nullopt};  // D = 2
  cfg.mode_bound = 1;
  const std::vector<std::optional<Rational>> levels = {Rational(0), Rational(1), frac(7, 3), Rational(-3),
                                                       std::nullopt};
  const double t = seconds([&] {
    tensor_reports = verify_all(w.a22, w.sys, w.currents, cfg, levels);
    for (auto kind : {SpaceKind::Restricted, SpaceKind::MTilde}) {
      cfg.kind = kind;
      auto r = verify_all(w.a22, w.sys, w.currents, cfg, {Rational(-3)});
      critical_reports.insert(critical_reports.end(), r.begin(), r.end());
    }
  });
  bool ok = tensor_reports.size() == levels.size();
  std::size_t checked = 0, failures = 0;
  std::ostringstream levels_seen;
  for (const auto& r : tensor_reports) {
    ok = ok && r.all_pass() && r.results.size() == 361;
    checked += r.results.size();
    failures += r.failures();
    levels_seen << (levels_seen.tellp() > 0 ? "," : "") << r.level;
  }
  std::size_t crit_failures = 0;
  for (const auto& r : critical_reports) {
    ok = ok && r.all_pass();
    crit_failures += r.failures();
  }
  if (!print) return;
  report(1, "relation verification", ok,
         "W^σ, D=2, |m|,|n|<=1, k in {" + levels_seen.str() + "}: " + std::to_string(checked) +
             " relations, " + std::to_string(failures) + " failures; critical restricted and contragredient: " +
             std::to_string(crit_failures) + " failures; tol=0; " + fixed(t) + "s");
}

void central_term() {
  const auto& w = world().a22;
  // (H_{0,1}, H_{0,1}) from the trace of diag(1,0,-1)^2
  const Rational form_oracle = 1 + 0 + 1;
  bool ok = normalized_form(w.algebra, LieElement::basis(w.algebra, w.h0), LieElement::basis(w.algebra, w.h0)) ==
            form_oracle;
  std::size_t vectors = 0;
  int found = 0;
  for (const auto& r : tensor_reports) {
    const Coeff k = r.level == "symbolic" ? Coeff::level() : Coeff(parse_rational(r.level));
    for (const auto& x : r.results) {
      if (x.x == w.algebra.label(w.h0) && x.y == w.algebra.label(w.h0) && x.m == 1 && x.n == -1) {
        ++found;
        ok = ok && x.pass && x.central == k * form_oracle;
        vectors += x.vectors;
      }
    }
  }
  ok = ok && found == static_cast<int>(tensor_reports.size());
  report(2, "central extension", ok,
         "[H_{0,1}(1), H_{0,1}(-1)] = 2k on " + std::to_string(vectors) + " slice vectors over " +
             std::to_string(found) + " levels (incl. symbolic); (H_{0,1},H_{0,1}) = 2; tol=0");
}

void derived_currents() {
  const auto& w = world().a22;
  const auto& g = w.algebra;
  std::size_t involved = 0;
  bool ok = true;
  for (const auto& r : tensor_reports)
    for (const auto& x : r.results) {
      const bool derived = x.x == g.label(w.e1_2alpha) || x.x == g.label(w.e1_m2alpha) ||
                           x.y == g.label(w.e1_2alpha) || x.y == g.label(w.e1_m2alpha);
      if (!derived) continue;
      ++involved;
      ok = ok && x.pass;
    }
  ok = ok && involved > 0;
  const auto& cur = world().currents;
  ok = ok && !cur.at(g.label(w.e1_2alpha)).is_zero() && !cur.at(g.label(w.e1_m2alpha)).is_zero();
  report(7, "derived currents", ok,
         "E_{1,±2α} from commutators: " + std::to_string(involved) +
             " relations involving them pass inside criterion 1's suite; tol=0");
}

// ---- 3, 4 ---------------------------------------------------------------------------

void characters() {
  const int ticks = 6;  // degree 3
  bool ok = true;
  std::size_t weights = 0, monomials = 0;
  for (int floor : {0, -2}) {
    const auto space = make_space(world().a22, world().sys, SpaceKind::Tensor, frac(7, 3), frac(1, 3));
    const Truncation t{ticks, std::nullopt, floor};
    const auto fock = fock_character(space, t);
    const auto verma = verma_character(datum(), ticks, floor);
    ok = ok && fock.diff(verma).empty();
    std::map<std::pair<int, int>, long> brute;
    for (const auto& m : basis_up_to_degree(space, t)) {
      const auto w = weight_of(m, space);
      brute[{w.alpha, -w.ticks}]++;
      ++monomials;
    }
    for (const auto& [key, n] : fock.coeffs) ok = ok && brute[key] == n;
    ok = ok && brute.size() == fock.coeffs.size();
    weights += fock.coeffs.size();
  }
  report(3, "character identity", ok,
         "fock = verma at degree <= 3, alpha floors 0 and -2: " + std::to_string(weights) +
             " weights, block dimensions match enumeration of " + std::to_string(monomials) + " monomials; tol=0");
}

void critical_characters() {
  const int ticks = 6;
  bool ok = true;
  std::size_t weights = 0;
  for (const Rational& chi : {frac(7, 5), frac(1, 3)}) {
    const auto space = make_space(world().a22, world().sys, SpaceKind::Restricted, Rational(-3), chi);
    for (int floor : {0, -2}) {
      const auto fock = fock_character(space, Truncation{ticks, std::nullopt, floor});
      ok = ok && fock.diff(kk_character(datum(), ticks, floor)).empty();
      weights += fock.coeffs.size();
    }
  }
  report(4, "critical restricted character", ok,
         "fock(W̄^σ) = kk at degree <= 3 for two χ and two alpha floors: " + std::to_string(weights) +
             " weights; tol=0");
}

// ---- 5 --------------------------------------------------------------------------------

void kac_kazhdan() {
  const auto& w = world();
  ScanConfig cfg;
  cfg.deg_ticks = 4;  // degree 2
  cfg.genericity_bound = 10;

  const auto cert = is_generic(datum(), Weight{frac(7, 5), -3, 0}, 10);
  const auto generic = find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, frac(7, 5), cfg);
  const auto generic_dual = contragredient_scan(w.a22, w.sys, w.currents, frac(7, 5), cfg);

  // Solve 2(χ+ρ, β) = n(β, β) for c_1 with β = -α + δ/2, n = 1 (linear in c_1).
  const AffineRoot beta{-1, 1, 1, false};
  const int n = 1;
  const auto b = datum().weight(beta);
  auto f = [&](const Rational& c) -> Rational {
    return 2 * datum().pair(Weight{c, -3, 0} + datum().rho(), b) - n * datum().pair(b, b);
  };
  const Rational c1 = Rational(-f(0) / (f(1) - f(0)));
  const auto special = find_singular(w.a22, w.sys, w.currents, SpaceKind::Restricted, -3, c1, cfg);
  // predicted weight χ - nβ
  const int alpha = -n * beta.alpha;
  const int ticks = n * beta.ticks;
  bool at_prediction = false;
  for (const auto* blk : special.singular_blocks()) at_prediction = at_prediction || (blk->alpha == alpha && blk->ticks == ticks);

  const bool ok = cert.generic && !cert.vacuous && generic.vacuum_only() && generic_dual.vacuum_only() &&
                  !special.vacuum_only() && at_prediction && f(c1) == 0;
  report(5, "Kac-Kazhdan at desk scale", ok,
         "c1=7/5 certified generic (bound 10, " + std::to_string(cert.roots_scanned) +
             " roots), W̄ and M̃ vacuum-only over " + std::to_string(generic.blocks.size()) +
             " blocks of degree <= 2; c1=" + to_string(c1) + " solves the equation for " + root_name(beta, 2) +
             ", kernel found at χ+α-δ/2: " + (at_prediction ? "yes" : "no"));
}

// ---- 6 --------------------------------------------------------------------------------

void adjoint() {
  const auto sigma = FockSpace::m_sigma(world().sys);
  const auto tilde = FockSpace::m_tilde(world().sys, {Coeff(frac(1, 3))});
  const Truncation t{4, 2, std::nullopt};  // degree 2, zero-mode power <= 2
  const auto left = basis_up_to_degree(tilde, t);
  const auto right = basis_up_to_degree(sigma, t);
  const auto oscillators = a_sector_oscillators(*world().sys, 4);
  bool ok = true;
  std::size_t pairs = 0;
  for (const auto& g : oscillators) {
    const auto [sign, tg] = transpose(g, *world().sys);
    std::vector<FockVector> gw, tv;
    for (const auto& w : right) gw.push_back(apply_oscillator(g, FockVector(w), sigma));
    for (const auto& v : left) tv.push_back(apply_oscillator(tg, FockVector(v), tilde));
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) {
        const Coeff lhs = pairing(FockVector(left[i]), tilde, gw[j], sigma);
        const Coeff rhs = pairing(tv[i], tilde, FockVector(right[j]), sigma) * Rational(sign);
        ok = ok && lhs == rhs;
        ++pairs;
      }
  }

  // Random words. v is built from duals of terms of A·w, so every pairing is nonzero.
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<std::size_t> pick_osc(0, oscillators.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_left(0, left.size() - 1), pick_right(0, right.size() - 1);
  std::uniform_int_distribution<int> len(2, 5), terms(1, 3), num(1, 5);
  int words = 0, attempts = 0;
  while (words < 100 && attempts < 100000) {
    ++attempts;
    std::vector<Osc> word;
    for (int i = len(rng); i > 0; --i) word.push_back(oscillators[pick_osc(rng)]);
    FockVector w;
    for (int i = terms(rng); i > 0; --i) w.add(right[pick_right(rng)], Coeff(frac(num(rng), 1 + words % 3)));
    FockVector image = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) image = apply_oscillator(*it, image, sigma);
    if (image.is_zero()) continue;
    FockVector v;
    int used = 0;
    for (const auto& [m, c] : image.terms()) {
      if (used++ == 2) break;
      v.add(dual_monomial(m), Coeff(frac(num(rng), 1 + used)));
    }
    v.add(left[pick_left(rng)], Coeff(frac(num(rng), 7)));
    if (pairing(v, tilde, image, sigma).is_zero()) continue;
    ok = ok && adjoint_defect(word, v, w, tilde, sigma).is_zero();
    ++words;
  }
  ok = ok && words == 100;
  report(6, "adjoint pairing", ok,
         std::to_string(oscillators.size()) + " oscillators x " + std::to_string(left.size()) + "x" +
             std::to_string(right.size()) + " monomial pairs (degree <= 2) = " + std::to_string(pairs) +
             " identities; " + std::to_string(words) + " seeded random words of length 2-5 with nonzero pairing; tol=0");
}

// ---- 8 --------------------------------------------------------------------------------

std::string capture(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

void determinism() {
  const std::string exe = WAKIMOTO_CLI_PATH;
  const std::vector<std::string> commands = {
      "verify --k 7/3,symbolic --D 1 --mode-bound 1/2",
      "char --k 1 --chi 2/7 --D 3",
      "char --critical --restricted --D 2",
      "kk --k -3 --chi 7/5 --bound 10",
      "singular --k -3 --chi -1 --deg 1",
      "dump-currents",
  };
  bool ok = true;
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    const std::string line = exe + " " + c + " --output json";
    const auto a = capture(line);
    const auto b = capture(line);
    ok = ok && !a.empty() && a == b && a.find("\"schema\": 1") != std::string::npos;
    bytes += a.size();
  }
  report(8, "determinism", ok,
         std::to_string(commands.size()) + " cli commands run twice with --output json: byte-identical (" +
             std::to_string(bytes) + " bytes each pass)");
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments select criteria; 2 and 7 reuse the reports of 1
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int id) { return only.empty() || only.count(id) > 0; };
  if (want(1) || want(2) || want(7)) relations(want(1));
  if (want(2)) central_term();
  if (want(3)) characters();
  if (want(4)) critical_characters();
  if (want(5)) kac_kazhdan();
  if (want(6)) adjoint();
  if (want(7)) derived_currents();
  if (want(8)) determinism();
  int failed = 0;
  for (const auto& l : lines) failed += l.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all " + std::to_string(lines.size()) + " criteria pass"
                            : std::to_string(failed) + " criteria FAILED")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
