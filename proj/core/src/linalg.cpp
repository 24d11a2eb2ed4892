#include "wakimoto/linalg.hpp"

#include <utility>

#include "wakimoto/errors.hpp"

namespace wakimoto {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw StructuralError("matrix shape mismatch in product");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw StructuralError("matrix shape mismatch in sum");
  }
  RationalMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  return *this + other * Rational(-1);
}

RationalMatrix RationalMatrix::operator*(const Rational& scalar) const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x *= scalar;
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

namespace {

struct Echelon {
  std::vector<std::vector<Integer>> rows;  // echelon rows, integer entries
  std::vector<std::size_t> pivots;         // pivot column of each row
};

// Fraction-free forward elimination. Each row is first scaled to integers;
// the Bareiss update keeps all intermediate entries integral.
Echelon bareiss(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<std::vector<Integer>> a;
  a.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    std::vector<Integer> row(cols);
    bool nonzero = false;
    for (std::size_t j = 0; j < cols; ++j) {
      Rational scaled = m(i, j) * lcm;
      row[j] = scaled.get_num();
      nonzero = nonzero || row[j] != 0;
    }
    if (nonzero) a.push_back(std::move(row));
  }

  Echelon e;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

// Reduced row echelon form (rational) from the fraction-free echelon rows.
std::vector<std::vector<Rational>> reduce(const Echelon& e, std::size_t cols) {
  std::vector<std::vector<Rational>> rref(e.rows.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const Integer& pivot = e.rows[i][e.pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      rref[i][j] = frac(e.rows[i][j], pivot);
      rref[i][j].canonicalize();
    }
  }
  for (std::size_t i = rref.size(); i-- > 0;) {
    const std::size_t pc = e.pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      const Rational f = rref[k][pc];
      if (f == 0) continue;
      for (std::size_t j = pc; j < cols; ++j) rref[k][j] -= f * rref[i][j];
    }
  }
  return rref;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) { return bareiss(m).pivots.size(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  const Echelon e = bareiss(m);
  const auto rref = reduce(e, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < rref.size(); ++i) v[e.pivots[i]] = -rref[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const RationalMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x) {
  if (b.size() != m.rows()) throw StructuralError("right-hand side has wrong length");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon e = bareiss(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return false;
  const auto rref = reduce(e, m.cols() + 1);
  x.assign(m.cols(), Rational(0));
  for (std::size_t i = 0; i < rref.size(); ++i) x[e.pivots[i]] = rref[i][m.cols()];
  return true;
}

}  // namespace wakimoto
