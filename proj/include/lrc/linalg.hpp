#pragma once

// Dense linear algebra over GF(q) on packed element codes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lrc/galois.hpp"

namespace lrc::linalg {

using galois::Elem;
using galois::Field;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void append_row(std::span<const Elem> r);
  Matrix columns(std::span<const std::size_t> idx) const;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

/// Basis of {x : m x^T = 0} as rows.
Matrix nullspace(const Field& f, const Matrix& m);

/// Coefficients c with sum_j c_j * m.row(j) = target, if any.
std::optional<std::vector<Elem>> solve_row_combination(const Field& f, const Matrix& m,
                                                       std::span<const Elem> target);

/// message * m (row vector times matrix).
std::vector<Elem> row_times(const Field& f, std::span<const Elem> message, const Matrix& m);

}  // namespace lrc::linalg
