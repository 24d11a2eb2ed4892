#include "wakimoto/singular.hpp"

#include <json.hpp>

#include "wakimoto/errors.hpp"
#include "wakimoto/linalg.hpp"

namespace wakimoto {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

std::vector<std::pair<int, int>> raising_modes(const A22& a22, RaisingSet set,
                                               int mode_bound_ticks) {
  const auto& g = a22.algebra;
  const int N = a22.sigma.order();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < g.dim(); ++i) {
    const auto& l = g.label(i);
    const bool positive_root = l.kind == GeneratorLabel::Kind::E && l.root > 0;
    if (set == RaisingSet::Nilpotent && !positive_root) continue;
    for (int t = 0; t <= mode_bound_ticks; ++t) {
      if (mod(t, N) != mod(l.j, N)) continue;
      if (t == 0 && !(positive_root && l.j == 0)) continue;
      out.emplace_back(i, t);
    }
  }
  return out;
}

std::vector<WeightBlock> weight_blocks(const FockSpace& space, int deg_ticks, int alpha_floor,
                                       const std::vector<std::pair<int, int>>& raising) {
  std::map<std::pair<int, int>, WeightBlock> blocks;  // key (degree, α)
  Truncation t{deg_ticks, std::nullopt, alpha_floor};
  for (const auto& m : basis_up_to_degree(space, t)) {
    if (m.is_vacuum()) continue;
    const WeightShift w = weight_of(m, space);
    auto& b = blocks[{-w.ticks, w.alpha}];
    b.alpha = w.alpha;
    b.ticks = -w.ticks;
    b.basis.push_back(m);
  }
  std::vector<WeightBlock> out;
  for (auto& [key, b] : blocks) {
    b.raising = raising;
    out.push_back(std::move(b));
  }
  return out;
}

RaisingMatrix raising_matrix(const WeightBlock& block, const Realization& rho) {
  RaisingMatrix out;
  out.cols = block.basis.size();
  for (std::size_t r = 0; r < block.raising.size(); ++r) {
    const auto [gen, ticks] = block.raising[r];
    std::map<FockMonomial, std::vector<Coeff>> rows;
    for (std::size_t c = 0; c < block.basis.size(); ++c) {
      for (const auto& [m, v] : rho.op(gen, ticks).apply(block.basis[c]).terms()) {
        auto& row = rows[m];
        if (row.empty()) row.resize(out.cols);
        row[c] = v;
      }
    }
    for (auto& [m, row] : rows) {
      out.row_monomials.push_back(m);
      out.row_generator.push_back(r);
      out.entries.push_back(std::move(row));
    }
  }
  return out;
}

bool SingularReport::vacuum_only() const { return singular_blocks().empty(); }

std::vector<const BlockResult*> SingularReport::singular_blocks() const {
  std::vector<const BlockResult*> out;
  for (const auto& b : blocks) {
    if (!b.kernel.empty()) out.push_back(&b);
  }
  return out;
}

std::string SingularReport::to_json(const OscillatorSystem& sys, int indent) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["space"] = space;
  j["level"] = level;
  j["chi"] = chi;
  j["degree_bound"] = to_string(frac(deg_ticks, order));
  j["alpha_floor"] = alpha_floor;
  j["raising"] = raising;
  if (certificate) {
    ordered_json c;
    c["generic"] = certificate->generic;
    c["bound"] = certificate->bound;
    c["vacuous"] = certificate->vacuous;
    c["roots_scanned"] = certificate->roots_scanned;
    c["note"] = "bounded scan, not a proof";
    if (certificate->witness) {
      c["witness_root"] = root_name(certificate->witness->first, order);
      c["witness_n"] = certificate->witness->second;
    }
    j["genericity"] = std::move(c);
  }
  j["vacuum"] = {{"alpha", 0}, {"degree", "0"}, {"kernel_dim", 1}};
  auto rows = ordered_json::array();
  for (const auto& b : blocks) {
    ordered_json e;
    e["alpha"] = b.alpha;
    e["degree"] = to_string(frac(b.ticks, order));
    e["dim"] = b.dim;
    e["kernel_dim"] = b.kernel.size();
    if (!b.kernel.empty()) {
      auto ks = ordered_json::array();
      for (const auto& v : b.kernel) ks.push_back(v.to_strings(sys));
      e["kernel"] = std::move(ks);
    }
    rows.push_back(std::move(e));
  }
  j["blocks"] = std::move(rows);
  j["vacuum_only"] = vacuum_only();
  return j.dump(indent);
}

SingularReport singular_scan(const Realization& rho, const ScanConfig& config) {
  const auto& a22 = rho.algebra();
  const auto& space = rho.space();
  const int N = space.system().order();
  SingularReport rep;
  rep.space = to_string(space.kind());
  rep.order = N;
  rep.deg_ticks = config.deg_ticks;
  rep.alpha_floor = config.alpha_floor.value_or(-2 * config.deg_ticks);
  rep.raising = config.raising == RaisingSet::Full ? "full" : "nilpotent";
  const auto raising = raising_modes(a22, config.raising, N);
  for (const auto& block : weight_blocks(space, config.deg_ticks, rep.alpha_floor, raising)) {
    const RaisingMatrix rm = raising_matrix(block, rho);
    RationalMatrix m(rm.entries.size(), rm.cols);
    for (std::size_t r = 0; r < rm.entries.size(); ++r) {
      for (std::size_t c = 0; c < rm.cols; ++c) {
        if (!rm.entries[r][c].is_constant()) {
          throw ValidationError("singular scan needs concrete k and χ");
        }
        m(r, c) = rm.entries[r][c].constant();
      }
    }
    BlockResult br;
    br.alpha = block.alpha;
    br.ticks = block.ticks;
    br.dim = block.basis.size();
    br.rows = rm.entries.size();
    for (const auto& x : nullspace(m)) {
      FockVector v;
      for (std::size_t c = 0; c < x.size(); ++c) v.add(block.basis[c], Coeff(x[c]));
      br.kernel.push_back(std::move(v));
    }
    rep.blocks.push_back(std::move(br));
  }
  return rep;
}

namespace {

Realization realize(const A22& a22, std::shared_ptr<const OscillatorSystem> sys,
                    const CurrentMap& currents, SpaceKind kind, const Rational& level,
                    const Rational& chi) {
  CurrentMap cur;
  for (const auto& [l, f] : currents) cur.emplace(l, f.substitute(level, chi));
  return Realization(a22, std::move(cur), make_space(a22, std::move(sys), kind, level, chi));
}

}  // namespace

SingularReport find_singular(const A22& a22, std::shared_ptr<const OscillatorSystem> sys,
                             const CurrentMap& currents, SpaceKind kind, const Rational& level,
                             const Rational& chi, const ScanConfig& config) {
  const RootDatum datum(a22.algebra, a22.sigma);
  auto rep = singular_scan(realize(a22, sys, currents, kind, level, chi), config);
  rep.level = to_string(level);
  rep.chi = to_string(chi);
  rep.certificate = is_generic(datum, Weight{chi, level, 0}, config.genericity_bound);
  return rep;
}

SingularReport contragredient_scan(const A22& a22, std::shared_ptr<const OscillatorSystem> sys,
                                   const CurrentMap& currents, const Rational& chi,
                                   const ScanConfig& config) {
  const Rational level = -a22.algebra.dual_coxeter();
  return find_singular(a22, std::move(sys), currents, SpaceKind::MTilde, level, chi, config);
}

}  // namespace wakimoto
