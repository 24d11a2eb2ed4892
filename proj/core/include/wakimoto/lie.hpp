#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wakimoto/linalg.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

/// Element a + b·ε of ℚ(ε), ε a primitive N-th root of unity (N ≤ 3).
/// For N = 3 the relation ε² = −1 − ε is used; for N ≤ 2 only `a` is used.
class CyclotomicNumber {
public:
  explicit CyclotomicNumber(int order, Rational a = 0, Rational b = 0);

  /// ε^power reduced to the canonical basis.
  static CyclotomicNumber root_power(int order, int power);

  int order() const { return order_; }
  const Rational& real_part() const { return a_; }
  const Rational& eps_part() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  bool operator==(const CyclotomicNumber& o) const {
    return order_ == o.order_ && a_ == o.a_ && b_ == o.b_;
  }

private:
  int order_;
  Rational a_;
  Rational b_;
};

/// Label of a σ-diagonal basis vector: E_{j,γ} (γ = root·α in the root
/// lattice of g₀) or H_{j,a}.
struct GeneratorLabel {
  enum class Kind { E, H };
  Kind kind = Kind::E;
  int j = 0;
  int root = 0;    // E only
  int cartan = 0;  // H only, 1-based

  static GeneratorLabel e(int j, int root) { return {Kind::E, j, root, 0}; }
  static GeneratorLabel h(int j, int a) { return {Kind::H, j, 0, a}; }

  std::string name() const;  // "E_{1,-2α}", "H_{0,1}"
  auto operator<=>(const GeneratorLabel&) const = default;
};

using SparseVector = std::map<int, Rational>;

class LieAlgebra;

class LieElement {
public:
  LieElement(const LieAlgebra& algebra, SparseVector coords);
  static LieElement basis(const LieAlgebra& algebra, int index);

  std::uint64_t algebra_id() const { return algebra_id_; }
  const SparseVector& coords() const { return coords_; }
  Rational coefficient(int index) const;
  bool is_zero() const { return coords_.empty(); }

  LieElement operator+(const LieElement& other) const;
  LieElement operator*(const Rational& scalar) const;
  bool operator==(const LieElement& other) const = default;

private:
  std::uint64_t algebra_id_;
  SparseVector coords_;
};

/// Finite-dimensional Lie algebra realized by matrices. Structure constants and
/// the normalized form are computed from the matrices at construction.
class LieAlgebra {
public:
  static LieAlgebra from_matrices(std::string name, std::vector<GeneratorLabel> labels,
                                  std::vector<RationalMatrix> matrices, int dual_coxeter);

  const std::string& name() const { return name_; }
  std::uint64_t id() const { return id_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  int dual_coxeter() const { return dual_coxeter_; }
  const std::vector<GeneratorLabel>& labels() const { return labels_; }
  const GeneratorLabel& label(int i) const { return labels_.at(i); }
  int index_of(const GeneratorLabel& label) const;
  const RationalMatrix& matrix(int i) const { return matrices_.at(i); }

  /// [b_i, b_j] in basis coordinates.
  const SparseVector& structure_constants(int i, int j) const {
    return constants_.at(i * dim() + j);
  }
  /// (b_i, b_j) = Tr(ad b_i ad b_j) / (2ř).
  const Rational& form(int i, int j) const { return form_.at(i * dim() + j); }

  /// Matrix of ad(b_i) in the basis.
  RationalMatrix ad(int i) const;
  /// Basis coordinates of a matrix; throws ValidationError if outside the span.
  SparseVector coordinates(const RationalMatrix& m) const;
  RationalMatrix to_matrix(const LieElement& x) const;

private:
  LieAlgebra() = default;

  std::string name_;
  std::uint64_t id_ = 0;
  int dual_coxeter_ = 0;
  std::vector<GeneratorLabel> labels_;
  std::vector<RationalMatrix> matrices_;
  std::vector<SparseVector> constants_;
  std::vector<Rational> form_;
  RationalMatrix span_;  // flattened basis matrices as columns
};

LieElement bracket(const LieAlgebra& g, const LieElement& x, const LieElement& y);
Rational normalized_form(const LieAlgebra& g, const LieElement& x, const LieElement& y);

/// Finite-order automorphism given by its matrix over ℚ(ε) in the basis.
class Automorphism {
public:
  Automorphism(int order, std::vector<std::vector<CyclotomicNumber>> matrix);
  /// σ acting by ε^{j_i} on basis vector i.
  static Automorphism diagonal(int order, const std::vector<int>& exponents);
  static Automorphism identity(int dim);

  int order() const { return order_; }
  int dim() const { return static_cast<int>(matrix_.size()); }
  const CyclotomicNumber& entry(int row, int col) const { return matrix_.at(row).at(col); }

  /// Throws ValidationError unless σ^N = 1 and σ[x,y] = [σx,σy] on all basis pairs.
  void validate(const LieAlgebra& g) const;

private:
  int order_;
  std::vector<std::vector<CyclotomicNumber>> matrix_;
};

struct WeightSpace {
  std::vector<Rational> weight;  // eigenvalues of ad(H_{0,a}), a = 1..dim h₀
  std::vector<int> basis;
  bool positive = false;  // intersects n₊ (strictly upper triangular matrices)
};

struct Eigenspace {
  int j = 0;
  std::vector<int> basis;
  std::vector<int> cartan;           // zero-weight part h_j
  std::vector<WeightSpace> weights;  // nonzero weights Δ_j
};

/// g = ⊕ g_j for a σ-diagonal basis, each g_j split into g₀-weight spaces.
/// Throws ValidationError if σ is not an automorphism or not diagonal.
std::vector<Eigenspace> eigenspace_decompose(const LieAlgebra& g, const Automorphism& sigma);

/// Chevalley anti-involution ω on the basis (matrix transpose), ω(b_i) in
/// coordinates. Validated to be an involutive anti-automorphism fixing h₀.
std::vector<SparseVector> chevalley_involution(const LieAlgebra& g);

/// sl₃ with the σ-diagonal A₂⁽²⁾ basis and its order-2 diagram automorphism.
struct A22 {
  LieAlgebra algebra;
  Automorphism sigma;
  int e0_alpha, e1_alpha, e1_2alpha, h0, h1, e0_malpha, e1_malpha, e1_m2alpha;
};

A22 build_a2_2();

/// R_{(i,j)}: 3×3 unit matrix, 1-based indices.
RationalMatrix unit_matrix(int n, int i, int j);

}  // namespace wakimoto
