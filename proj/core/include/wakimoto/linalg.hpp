#pragma once

#include <cstddef>
#include <vector>

#include "wakimoto/rational.hpp"

namespace wakimoto {

/// Dense row-major rational matrix.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix operator*(const Rational& scalar) const;
  RationalMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool operator==(const RationalMatrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}, computed by fraction-free (Bareiss) elimination on
/// the integer-scaled rows. Each basis vector has a 1 in its pivot-free
/// coordinate, so the basis is canonical for a given column order.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Some solution of m x = b, or nothing if the system is inconsistent.
/// Free variables are set to zero.
bool solve(const RationalMatrix& m, const std::vector<Rational>& b,
           std::vector<Rational>& x);

}  // namespace wakimoto
