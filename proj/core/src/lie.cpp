#include "wakimoto/lie.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>
#include <sstream>

#include "wakimoto/errors.hpp"

namespace wakimoto {

// ---- CyclotomicNumber ------------------------------------------------------

CyclotomicNumber::CyclotomicNumber(int order, Rational a, Rational b)
    : order_(order), a_(std::move(a)), b_(std::move(b)) {
  if (order < 1 || order > 3) throw ValidationError("only N = 1, 2, 3 are supported");
  if (order < 3 && b_ != 0) throw ValidationError("ε-part requires N = 3");
}

CyclotomicNumber CyclotomicNumber::root_power(int order, int power) {
  const int p = ((power % order) + order) % order;
  switch (order) {
    case 1:
      return CyclotomicNumber(1, 1);
    case 2:
      return CyclotomicNumber(2, p == 0 ? 1 : -1);
    default:
      if (p == 0) return CyclotomicNumber(3, 1);
      if (p == 1) return CyclotomicNumber(3, 0, 1);
      return CyclotomicNumber(3, -1, -1);  // ε² = −1 − ε
  }
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  if (order_ != o.order_) throw StructuralError("mixing cyclotomic fields");
  return CyclotomicNumber(order_, a_ + o.a_, b_ + o.b_);
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
  if (order_ != o.order_) throw StructuralError("mixing cyclotomic fields");
  return CyclotomicNumber(order_, a_ - o.a_, b_ - o.b_);
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  if (order_ != o.order_) throw StructuralError("mixing cyclotomic fields");
  // (a + bε)(c + dε) = ac + (ad + bc)ε + bd ε², ε² = −1 − ε
  const Rational bd = b_ * o.b_;
  return CyclotomicNumber(order_, a_ * o.a_ - bd, a_ * o.b_ + b_ * o.a_ - bd);
}

// ---- labels and elements ---------------------------------------------------

std::string GeneratorLabel::name() const {
  std::ostringstream os;
  if (kind == Kind::H) {
    os << "H_{" << j << ',' << cartan << '}';
    return os.str();
  }
  os << "E_{" << j << ',';
  if (root < 0) os << '-';
  const int mag = root < 0 ? -root : root;
  if (mag != 1) os << mag;
  os << "α}";
  return os.str();
}

LieElement::LieElement(const LieAlgebra& algebra, SparseVector coords)
    : algebra_id_(algebra.id()) {
  for (auto& [i, v] : coords) {
    if (i < 0 || i >= algebra.dim()) throw StructuralError("basis index out of range");
    if (v != 0) coords_.emplace(i, v);
  }
}

LieElement LieElement::basis(const LieAlgebra& algebra, int index) {
  return LieElement(algebra, SparseVector{{index, Rational(1)}});
}

Rational LieElement::coefficient(int index) const {
  auto it = coords_.find(index);
  return it == coords_.end() ? Rational(0) : it->second;
}

LieElement LieElement::operator+(const LieElement& other) const {
  if (algebra_id_ != other.algebra_id_) throw StructuralError("elements of different algebras");
  LieElement out = *this;
  for (const auto& [i, v] : other.coords_) {
    Rational& slot = out.coords_[i];
    slot += v;
    if (slot == 0) out.coords_.erase(i);
  }
  return out;
}

LieElement LieElement::operator*(const Rational& scalar) const {
  LieElement out = *this;
  if (scalar == 0) {
    out.coords_.clear();
    return out;
  }
  for (auto& [i, v] : out.coords_) v *= scalar;
  return out;
}

// ---- LieAlgebra --------------------------------------------------------------

namespace {

std::uint64_t next_algebra_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) {
  return a * b - b * a;
}

}  // namespace

LieAlgebra LieAlgebra::from_matrices(std::string name, std::vector<GeneratorLabel> labels,
                                     std::vector<RationalMatrix> matrices, int dual_coxeter) {
  if (labels.size() != matrices.size() || matrices.empty()) {
    throw ValidationError("need one matrix per basis label");
  }
  LieAlgebra g;
  g.name_ = std::move(name);
  g.id_ = next_algebra_id();
  g.dual_coxeter_ = dual_coxeter;
  g.labels_ = std::move(labels);
  g.matrices_ = std::move(matrices);

  const std::size_t n = g.matrices_.front().rows();
  const int dim = g.dim();
  g.span_ = RationalMatrix(n * n, dim);
  for (int b = 0; b < dim; ++b) {
    const auto& m = g.matrices_[b];
    if (m.rows() != n || m.cols() != n) throw ValidationError("basis matrices differ in size");
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) g.span_(r * n + c, b) = m(r, c);
    }
  }
  if (rank(g.span_) != static_cast<std::size_t>(dim)) {
    throw ValidationError("basis matrices are linearly dependent");
  }

  g.constants_.resize(dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g.constants_[i * dim + j] = g.coordinates(commutator(g.matrices_[i], g.matrices_[j]));
    }
  }

  std::vector<RationalMatrix> ads;
  ads.reserve(dim);
  for (int i = 0; i < dim; ++i) ads.push_back(g.ad(i));
  g.form_.assign(dim * dim, Rational(0));
  const Rational scale = frac(1, 2 * dual_coxeter);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g.form_[i * dim + j] = (ads[i] * ads[j]).trace() * scale;
  }
  return g;
}

int LieAlgebra::index_of(const GeneratorLabel& label) const {
  for (int i = 0; i < dim(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw ValidationError("no basis vector labelled " + label.name());
}

RationalMatrix LieAlgebra::ad(int i) const {
  RationalMatrix m(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    for (const auto& [k, v] : structure_constants(i, j)) m(k, j) = v;
  }
  return m;
}

SparseVector LieAlgebra::coordinates(const RationalMatrix& m) const {
  const std::size_t n = m.rows();
  std::vector<Rational> flat(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = m(r, c);
  }
  std::vector<Rational> x;
  if (!solve(span_, flat, x)) throw ValidationError("matrix is not in the span of the basis");
  SparseVector out;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0) out.emplace(i, x[i]);
  }
  return out;
}

RationalMatrix LieAlgebra::to_matrix(const LieElement& x) const {
  if (x.algebra_id() != id_) throw StructuralError("element of a different algebra");
  const std::size_t n = matrices_.front().rows();
  RationalMatrix m(n, n);
  for (const auto& [i, v] : x.coords()) m = m + matrices_[i] * v;
  return m;
}

LieElement bracket(const LieAlgebra& g, const LieElement& x, const LieElement& y) {
  if (x.algebra_id() != g.id() || y.algebra_id() != g.id()) {
    throw StructuralError("bracket of elements from a different algebra");
  }
  SparseVector out;
  for (const auto& [i, a] : x.coords()) {
    for (const auto& [j, b] : y.coords()) {
      for (const auto& [k, c] : g.structure_constants(i, j)) out[k] += a * b * c;
    }
  }
  return LieElement(g, std::move(out));
}

Rational normalized_form(const LieAlgebra& g, const LieElement& x, const LieElement& y) {
  if (x.algebra_id() != g.id() || y.algebra_id() != g.id()) {
    throw StructuralError("form of elements from a different algebra");
  }
  Rational out = 0;
  for (const auto& [i, a] : x.coords()) {
    for (const auto& [j, b] : y.coords()) out += a * b * g.form(i, j);
  }
  return out;
}

// ---- Automorphism ------------------------------------------------------------

Automorphism::Automorphism(int order, std::vector<std::vector<CyclotomicNumber>> matrix)
    : order_(order), matrix_(std::move(matrix)) {
  for (const auto& row : matrix_) {
    if (row.size() != matrix_.size()) throw ValidationError("automorphism matrix not square");
    for (const auto& x : row) {
      if (x.order() != order_) throw ValidationError("entry from the wrong cyclotomic field");
    }
  }
}

Automorphism Automorphism::diagonal(int order, const std::vector<int>& exponents) {
  const std::size_t n = exponents.size();
  std::vector<std::vector<CyclotomicNumber>> m(
      n, std::vector<CyclotomicNumber>(n, CyclotomicNumber(order)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = CyclotomicNumber::root_power(order, exponents[i]);
  return Automorphism(order, std::move(m));
}

Automorphism Automorphism::identity(int dim) {
  return diagonal(1, std::vector<int>(dim, 0));
}

void Automorphism::validate(const LieAlgebra& g) const {
  const int n = dim();
  if (n != g.dim()) throw ValidationError("automorphism dimension mismatch");
  const CyclotomicNumber zero(order_);
  auto product = [&](const std::vector<std::vector<CyclotomicNumber>>& a,
                     const std::vector<std::vector<CyclotomicNumber>>& b) {
    std::vector<std::vector<CyclotomicNumber>> c(n, std::vector<CyclotomicNumber>(n, zero));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (a[i][k].is_zero()) continue;
        for (int j = 0; j < n; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
      }
    return c;
  };
  auto power = matrix_;
  for (int p = 1; p < order_; ++p) power = product(power, matrix_);
  const CyclotomicNumber one = CyclotomicNumber::root_power(order_, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(power[i][j] == (i == j ? one : zero))) throw ValidationError("σ^N is not the identity");
    }
  auto lift = [&](const SparseVector& v) {
    std::vector<CyclotomicNumber> out(n, zero);
    for (const auto& [i, x] : v) out[i] = CyclotomicNumber(order_, x);
    return out;
  };
  // σ[b_i, b_j] = [σ b_i, σ b_j]
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto bij = lift(g.structure_constants(i, j));
      std::vector<CyclotomicNumber> lhs(n, zero);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) lhs[r] = lhs[r] + matrix_[r][c] * bij[c];
      std::vector<CyclotomicNumber> rhs(n, zero);
      for (int p = 0; p < n; ++p) {
        if (matrix_[p][i].is_zero()) continue;
        for (int q = 0; q < n; ++q) {
          if (matrix_[q][j].is_zero()) continue;
          const auto s = matrix_[p][i] * matrix_[q][j];
          for (const auto& [r, x] : g.structure_constants(p, q)) {
            rhs[r] = rhs[r] + s * CyclotomicNumber(order_, x);
          }
        }
      }
      for (int r = 0; r < n; ++r) {
        if (!(lhs[r] == rhs[r])) {
          throw ValidationError("σ does not preserve the bracket on " + g.label(i).name() +
                                ", " + g.label(j).name());
        }
      }
    }
  }
}

// ---- decomposition -------------------------------------------------------------

namespace {

bool strictly_upper(const RationalMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c <= r && c < m.cols(); ++c) {
      if (m(r, c) != 0) return false;
    }
  return true;
}

}  // namespace

std::vector<Eigenspace> eigenspace_decompose(const LieAlgebra& g, const Automorphism& sigma) {
  sigma.validate(g);
  const int n = g.dim();
  const int order = sigma.order();
  std::vector<int> exponent(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) {
      if (c != i && !sigma.entry(c, i).is_zero()) {
        throw ValidationError("σ is not diagonal in the chosen basis");
      }
    }
    for (int j = 0; j < order; ++j) {
      if (sigma.entry(i, i) == CyclotomicNumber::root_power(order, j)) exponent[i] = j;
    }
    if (exponent[i] < 0) throw ValidationError("diagonal entry is not a power of ε");
  }

  // h₀: σ-fixed H-labelled vectors.
  std::vector<int> h0;
  for (int i = 0; i < n; ++i) {
    if (exponent[i] == 0 && g.label(i).kind == GeneratorLabel::Kind::H) h0.push_back(i);
  }

  std::vector<Eigenspace> out;
  for (int j = 0; j < order; ++j) {
    Eigenspace space;
    space.j = j;
    for (int i = 0; i < n; ++i) {
      if (exponent[i] != j) continue;
      space.basis.push_back(i);
      std::vector<Rational> weight;
      bool zero = true;
      for (int h : h0) {
        const auto& v = g.structure_constants(h, i);
        Rational w = 0;
        for (const auto& [k, x] : v) {
          if (k != i) throw ValidationError(g.label(i).name() + " is not an h₀ weight vector");
          w = x;
        }
        zero = zero && w == 0;
        weight.push_back(w);
      }
      if (zero) {
        space.cartan.push_back(i);
        continue;
      }
      auto it = std::find_if(space.weights.begin(), space.weights.end(),
                             [&](const WeightSpace& ws) { return ws.weight == weight; });
      if (it == space.weights.end()) {
        space.weights.push_back(WeightSpace{weight, {}, false});
        it = std::prev(space.weights.end());
      }
      it->basis.push_back(i);
      it->positive = it->positive || strictly_upper(g.matrix(i));
    }
    if (!space.basis.empty()) out.push_back(std::move(space));
  }
  return out;
}

std::vector<SparseVector> chevalley_involution(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<SparseVector> omega(n);
  for (int i = 0; i < n; ++i) omega[i] = g.coordinates(g.matrix(i).transpose());
  auto apply = [&](const SparseVector& v) {
    SparseVector out;
    for (const auto& [i, x] : v)
      for (const auto& [k, y] : omega[i]) {
        out[k] += x * y;
        if (out[k] == 0) out.erase(k);
      }
    return out;
  };
  for (int i = 0; i < n; ++i) {
    if (apply(omega[i]) != SparseVector{{i, Rational(1)}}) {
      throw ConsistencyError("ω is not an involution on " + g.label(i).name());
    }
    for (int j = 0; j < n; ++j) {
      // ω[x,y] = [ωy, ωx]
      SparseVector rhs;
      for (const auto& [p, a] : omega[j])
        for (const auto& [q, b] : omega[i])
          for (const auto& [r, c] : g.structure_constants(p, q)) {
            rhs[r] += a * b * c;
            if (rhs[r] == 0) rhs.erase(r);
          }
      if (apply(g.structure_constants(i, j)) != rhs) {
        throw ConsistencyError("ω is not an anti-automorphism");
      }
    }
  }
  return omega;
}

// ---- A₂⁽²⁾ -----------------------------------------------------------------------

RationalMatrix unit_matrix(int n, int i, int j) {
  RationalMatrix m(n, n);
  m(i - 1, j - 1) = 1;
  return m;
}

A22 build_a2_2() {
  auto R = [](int i, int j) { return unit_matrix(3, i, j); };
  using L = GeneratorLabel;
  // E_{0,α} and E_{1,α} use R_{(1,2)}: R_{(1,1)} is diagonal and cannot be a root vector.
  std::vector<L> labels = {L::e(0, 1), L::e(1, 1), L::e(1, 2),  L::h(0, 1),
                           L::h(1, 1), L::e(0, -1), L::e(1, -1), L::e(1, -2)};
  std::vector<RationalMatrix> mats = {
      R(1, 2) + R(2, 3),
      R(1, 2) - R(2, 3),
      R(1, 3) * Rational(-2),
      R(1, 1) - R(3, 3),
      R(1, 1) - R(2, 2) * Rational(2) + R(3, 3),
      R(2, 1) + R(3, 2),
      R(2, 1) - R(3, 2),
      R(3, 1) * Rational(-2),
  };
  auto algebra = LieAlgebra::from_matrices("A2_2", labels, std::move(mats), 3);
  std::vector<int> exponents;
  for (const auto& l : labels) exponents.push_back(l.j);
  auto sigma = Automorphism::diagonal(2, exponents);
  sigma.validate(algebra);
  return A22{std::move(algebra), std::move(sigma), 0, 1, 2, 3, 4, 5, 6, 7};
}

}  // namespace wakimoto
