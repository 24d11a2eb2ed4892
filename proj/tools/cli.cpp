#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wakimoto/affine.hpp"
#include "wakimoto/characters.hpp"
#include "wakimoto/errors.hpp"
#include "wakimoto/fields.hpp"
#include "wakimoto/singular.hpp"

namespace wakimoto::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flag values as given on the command line; unset ones fall back to the config file.
struct Flags {
  std::optional<std::string> config, k, chi, D, mode_bound, deg, output, space;
  std::optional<int> bound, seed, zero_cap, alpha_floor;
  bool critical = false, restricted = false;
};

struct RunConfig {
  std::string algebra = "A2_2";
  std::vector<std::optional<Rational>> levels;  // nullopt = symbolic
  Rational chi = frac(1, 3);
  Rational D = 2;
  Rational mode_bound = 1;
  Rational deg = 2;
  int genericity_bound = 10;
  int zero_cap = 1;
  std::optional<int> alpha_floor;
  bool json = false;
  int seed = 0;
  SpaceKind space = SpaceKind::Tensor;
  bool critical = false;
  bool restricted = false;
};

Rational rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

std::vector<std::optional<Rational>> level_list(const std::string& text) {
  std::vector<std::optional<Rational>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "symbolic") {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(rational_arg("k", item));
    }
  }
  if (out.empty()) throw UsageError("--k: empty level list");
  return out;
}

SpaceKind space_arg(const std::string& s) {
  if (s == "tensor") return SpaceKind::Tensor;
  if (s == "restricted") return SpaceKind::Restricted;
  if (s == "contragredient") return SpaceKind::MTilde;
  throw UsageError("--space must be tensor, restricted or contragredient");
}

std::string json_string(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw UsageError(std::string("config: '") + key + "' must be a string or integer");
}

RunConfig resolve(const Flags& f) {
  ordered_json file = ordered_json::object();
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw UsageError("cannot read config file " + *f.config);
    try {
      file = ordered_json::parse(in);
    } catch (const std::exception& e) {
      throw UsageError(std::string("config file: ") + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
  }
  auto pick = [&](const std::optional<std::string>& flag, const char* key) -> std::optional<std::string> {
    if (flag) return flag;
    if (file.contains(key)) return json_string(file, key);
    return std::nullopt;
  };
  auto pick_int = [&](const std::optional<int>& flag, const char* key) -> std::optional<int> {
    if (flag) return flag;
    if (file.contains(key)) {
      if (!file[key].is_number_integer()) throw UsageError(std::string("config: '") + key + "' must be an integer");
      return file[key].get<int>();
    }
    return std::nullopt;
  };
  auto pick_bool = [&](bool flag, const char* key) {
    if (flag) return true;
    return file.contains(key) && file[key].is_boolean() && file[key].get<bool>();
  };

  RunConfig c;
  if (file.contains("algebra") && file["algebra"] != "A2_2") {
    throw UsageError("only the A2_2 algebra is available");
  }
  c.critical = pick_bool(f.critical, "critical");
  c.restricted = pick_bool(f.restricted, "restricted");
  if (auto v = pick(f.k, "k")) {
    c.levels = level_list(*v);
  } else {
    c.levels = {c.critical ? std::optional<Rational>(-3) : std::optional<Rational>(frac(7, 3))};
  }
  if (auto v = pick(f.chi, "chi")) c.chi = rational_arg("chi", *v);
  if (auto v = pick(f.D, "D")) c.D = rational_arg("D", *v);
  if (auto v = pick(f.mode_bound, "mode_bound")) c.mode_bound = rational_arg("mode-bound", *v);
  if (auto v = pick(f.deg, "deg")) c.deg = rational_arg("deg", *v);
  if (auto v = pick(f.space, "space")) c.space = space_arg(*v);
  if (auto v = pick(f.output, "output")) {
    if (*v != "text" && *v != "json") throw UsageError("--output must be text or json");
    c.json = *v == "json";
  }
  if (auto v = pick_int(f.bound, "bound")) c.genericity_bound = *v;
  if (auto v = pick_int(f.seed, "seed")) c.seed = *v;
  if (auto v = pick_int(f.zero_cap, "zero_cap")) c.zero_cap = *v;
  c.alpha_floor = pick_int(f.alpha_floor, "alpha_floor");
  if (c.D < 0 || c.deg < 0 || c.mode_bound < 0) throw UsageError("degrees must be nonnegative");
  if (c.zero_cap < 0) throw UsageError("--zero-cap must be nonnegative");
  return c;
}

int ticks_of(const Rational& x, const char* name) {
  const Rational t = x * 2;
  if (t.get_den() != 1) throw UsageError(std::string("--") + name + " must lie in (1/2)Z");
  return static_cast<int>(t.get_num().get_si());
}

struct Engine {
  A22 a22 = build_a2_2();
  std::shared_ptr<const OscillatorSystem> sys =
      std::make_shared<const OscillatorSystem>(a22.algebra, a22.sigma);
  CurrentMap currents = wakimoto_currents_a22(a22, *sys);
};

const Engine& engine() {
  static const Engine e;
  return e;
}

// ---- commands ----------------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.D < 2 * c.mode_bound) throw UsageError("verify needs D >= 2 * mode-bound");
  const Engine& e = engine();
  VerifyConfig vc;
  vc.kind = c.space;
  vc.chi = c.chi;
  vc.slice = Truncation{ticks_of(c.D, "D"), c.zero_cap, std::nullopt};
  vc.mode_bound = c.mode_bound;
  for (const auto& l : c.levels) {
    if (c.space != SpaceKind::Tensor && (!l || *l != -3)) {
      throw UsageError("restricted and contragredient spaces need --k -3");
    }
  }
  const auto reports = verify_all(e.a22, e.sys, e.currents, vc, c.levels);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.all_pass();
  if (c.json) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["status"] = ok ? "pass" : "fail";
    auto arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(ordered_json::parse(r.to_json(*e.sys, -1)));
    j["reports"] = std::move(arr);
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << "level " << r.level << " on " << r.space << " (chi = " << r.chi << ", D = " << to_string(c.D)
          << ", mode bound " << to_string(r.mode_bound) << "): " << r.results.size() << " relations, "
          << r.failures() << " failures\n";
      for (const auto& x : r.results) {
        if (x.pass) continue;
        out << "  FAIL [" << x.x.name() << " " << to_string(x.m) << ", " << x.y.name() << " "
            << to_string(x.n) << "] on " << x.witness << "\n";
      }
    }
    out << (ok ? "all relations hold\n" : "relations FAILED\n");
  }
  return ok ? 0 : 1;
}

void print_table(std::ostream& out, const char* title, const CharacterSeries& s) {
  out << title << "\n";
  out << std::setw(8) << "alpha" << std::setw(10) << "degree" << std::setw(12) << "dim" << "\n";
  for (const auto& [k, v] : s.coeffs) {
    out << std::setw(8) << k.first << std::setw(10) << to_string(frac(k.second, s.order))
        << std::setw(12) << v.get_str() << "\n";
  }
}

int cmd_char(const RunConfig& c, std::ostream& out) {
  const Engine& e = engine();
  const RootDatum datum(e.a22.algebra, e.a22.sigma);
  const int ticks = ticks_of(c.D, "D");
  const int floor = c.alpha_floor.value_or(0);
  const Rational level = c.levels.front().value_or(Rational(0));
  if (!c.levels.front() || c.levels.size() != 1) throw UsageError("char needs one rational --k");
  const bool restricted = c.restricted;
  if (restricted && level != -3) throw UsageError("--restricted needs the critical level");
  const SpaceKind kind = restricted ? SpaceKind::Restricted : SpaceKind::Tensor;
  const FockSpace space = make_space(e.a22, e.sys, kind, level, c.chi);
  const auto fock = fock_character(space, Truncation{ticks, std::nullopt, floor});
  const auto model = restricted ? kk_character(datum, ticks, floor) : verma_character(datum, ticks, floor);
  const auto diff = fock.diff(model);
  const char* model_name = restricted ? "kk" : "verma";
  if (c.json) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "char";
    j["space"] = to_string(kind);
    j["level"] = to_string(level);
    j["chi"] = to_string(c.chi);
    j["fock"] = ordered_json::parse(fock.to_json(-1));
    j[model_name] = ordered_json::parse(model.to_json(-1));
    auto d = ordered_json::array();
    for (const auto& [k, a, b] : diff) {
      d.push_back({{"alpha", k.first}, {"degree", to_string(frac(k.second, 2))}, {"fock", a.get_str()},
                   {model_name, b.get_str()}});
    }
    j["diff"] = std::move(d);
    out << j.dump(2) << '\n';
  } else {
    if (ticks == 0 && fock.coeffs.size() == 1 && diff.empty()) {
      out << "degree 0: dimension " << fock.at(0, 0).get_str() << "\n";
      return 0;
    }
    {
      print_table(out, "FOCK", fock);
      print_table(out, restricted ? "KK" : "VERMA", model);
    }
    out << "DIFF\n";
    for (const auto& [k, a, b] : diff) {
      out << "  alpha " << k.first << " degree " << to_string(frac(k.second, 2)) << ": " << a.get_str()
          << " vs " << b.get_str() << "\n";
    }
  }
  return diff.empty() ? 0 : 1;
}

int cmd_kk(const RunConfig& c, std::ostream& out) {
  if (!c.levels.front() || c.levels.size() != 1) throw UsageError("kk needs one rational --k");
  const A22 a22 = build_a2_2();
  const RootDatum datum(a22.algebra, a22.sigma);
  const Weight chi{c.chi, *c.levels.front(), 0};
  const auto cert = is_generic(datum, chi, c.genericity_bound);
  const bool imaginary = kk_equation_check(datum, chi, AffineRoot{0, 2, 1, true}, 1);
  if (c.json) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "kk";
    j["level"] = to_string(chi.level);
    j["chi"] = to_string(chi.finite);
    j["rho"] = datum.rho().str();
    j["bound"] = cert.bound;
    j["vacuous"] = cert.vacuous;
    j["roots_scanned"] = cert.roots_scanned;
    j["generic"] = cert.generic;
    j["imaginary_root_equation"] = imaginary;
    if (cert.witness) {
      j["witness_root"] = root_name(cert.witness->first, 2);
      j["witness_n"] = cert.witness->second;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "generic: " << (cert.generic ? "true" : "false") << "\n";
    out << "bound: " << cert.bound << " (" << cert.roots_scanned << " positive real roots scanned)"
        << (cert.vacuous ? " [vacuous: nothing scanned]" : "") << "\n";
    if (cert.witness) {
      out << "solves 2(chi + rho, beta) = n (beta, beta) for beta = "
          << root_name(cert.witness->first, 2) << ", n = " << cert.witness->second << "\n";
    }
    out << "imaginary-root equation (beta = delta): " << (imaginary ? "true" : "false") << "\n";
  }
  return cert.generic ? 0 : 1;
}

int cmd_singular(const RunConfig& c, std::ostream& out) {
  if (!c.levels.front() || c.levels.size() != 1) throw UsageError("singular needs one rational --k");
  const Rational level = *c.levels.front();
  SpaceKind kind = c.space;
  if (kind == SpaceKind::Tensor && level == -3) kind = SpaceKind::Restricted;
  if (kind != SpaceKind::Tensor && level != -3) {
    throw UsageError("restricted and contragredient spaces need --k -3");
  }
  const Engine& e = engine();
  ScanConfig sc;
  sc.deg_ticks = ticks_of(c.deg, "deg");
  sc.alpha_floor = c.alpha_floor;
  sc.genericity_bound = c.genericity_bound;
  const auto rep = find_singular(e.a22, e.sys, e.currents, kind, level, c.chi, sc);
  if (c.json) {
    ordered_json j = ordered_json::parse(rep.to_json(*e.sys, -1));
    ordered_json w;
    w["schema"] = 1;
    w["command"] = "singular";
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "schema") w[it.key()] = it.value();
    }
    out << w.dump(2) << '\n';
  } else {
    out << "space " << rep.space << ", level " << rep.level << ", chi " << rep.chi << ", degree <= "
        << to_string(c.deg) << ", alpha >= " << rep.alpha_floor << "\n";
    if (rep.certificate) {
      out << "genericity (bound " << rep.certificate->bound
          << "): " << (rep.certificate->generic ? "generic" : "not generic") << "\n";
    }
    out << std::setw(8) << "alpha" << std::setw(10) << "degree" << std::setw(8) << "dim"
        << std::setw(10) << "kernel" << "\n";
    out << std::setw(8) << 0 << std::setw(10) << "0" << std::setw(8) << 1 << std::setw(10) << 1
        << "  (vacuum)\n";
    for (const auto& b : rep.blocks) {
      if (b.kernel.empty()) continue;
      out << std::setw(8) << b.alpha << std::setw(10) << to_string(frac(b.ticks, 2)) << std::setw(8)
          << b.dim << std::setw(10) << b.kernel.size() << "\n";
      for (const auto& v : b.kernel) {
        out << "    ";
        bool first = true;
        for (const auto& [m, x] : v.terms()) {
          out << (first ? "" : " + ") << "(" << x.str() << ") " << m.str(*e.sys);
          first = false;
        }
        out << "\n";
      }
    }
    out << rep.blocks.size() << " blocks scanned; "
        << (rep.vacuum_only() ? "vacuum only" : "singular vectors found") << "\n";
  }
  return rep.vacuum_only() ? 0 : 1;
}

int cmd_dump(const RunConfig& c, std::ostream& out) {
  const Engine& e = engine();
  if (c.json) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "dump-currents";
    ordered_json cur;
    for (const auto& l : e.a22.algebra.labels()) cur[current_name(l)] = e.currents.at(l).render(*e.sys);
    j["currents"] = std::move(cur);
    out << j.dump(2) << '\n';
  } else {
    out << dump_currents(e.a22, *e.sys, e.currents);
  }
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--output", f.output, "text or json");
  sub->add_option("--seed", f.seed, "seed for randomized re-runs");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted Wakimoto modules for A2(2): relation checks, characters and singular vectors"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "check the affine relations on a truncated Fock space");
  add_common(verify, f);
  verify->add_option("--k", f.k, "level(s): p/q, 'symbolic', or a comma list");
  verify->add_option("--chi", f.chi, "chi(H_{0,1})");
  verify->add_option("--D", f.D, "truncation degree");
  verify->add_option("--mode-bound", f.mode_bound, "largest |mode| checked");
  verify->add_option("--zero-cap", f.zero_cap, "cap on the total power of degree-0 creators");
  verify->add_option("--space", f.space, "tensor, restricted or contragredient");

  auto* chr = app.add_subcommand("char", "compare Fock characters with Verma / KK characters");
  add_common(chr, f);
  chr->add_option("--k", f.k, "level");
  chr->add_option("--chi", f.chi, "chi(H_{0,1})");
  chr->add_option("--D", f.D, "truncation degree");
  chr->add_option("--alpha-floor", f.alpha_floor, "keep alpha-shifts >= this (default 0)");
  chr->add_flag("--critical", f.critical, "use k = -3");
  chr->add_flag("--restricted", f.restricted, "use the restricted module and the KK character");

  auto* kk = app.add_subcommand("kk", "Kac-Kazhdan genericity scan");
  add_common(kk, f);
  kk->add_option("--k", f.k, "level");
  kk->add_option("--chi", f.chi, "chi(H_{0,1})");
  kk->add_option("--bound", f.bound, "scan bound");

  auto* sing = app.add_subcommand("singular", "exact singular-vector scan");
  add_common(sing, f);
  sing->add_option("--k", f.k, "level");
  sing->add_option("--chi", f.chi, "chi(H_{0,1})");
  sing->add_option("--deg", f.deg, "degree bound");
  sing->add_option("--alpha-floor", f.alpha_floor, "keep alpha-shifts >= this (default -2 deg)");
  sing->add_option("--bound", f.bound, "genericity scan bound");
  sing->add_option("--space", f.space, "restricted, tensor or contragredient");

  auto* dump = app.add_subcommand("dump-currents", "print the A2(2) currents");
  add_common(dump, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const RunConfig c = resolve(f);
    if (verify->parsed()) return cmd_verify(c, out);
    if (chr->parsed()) return cmd_char(c, out);
    if (kk->parsed()) return cmd_kk(c, out);
    if (sing->parsed()) return cmd_singular(c, out);
    return cmd_dump(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wakimoto::cli
