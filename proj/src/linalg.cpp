#include "lrc/linalg.hpp"

#include <algorithm>

#include "lrc/error.hpp"

namespace lrc::linalg {

void Matrix::append_row(std::span<const Elem> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw Error(ErrorKind::LengthMismatch, "row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

Matrix Matrix::columns(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::vector<std::size_t> rref(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pr = lead_row;
    while (pr < m.rows() && m(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(lead_row, j));
    }
    const Elem inv = f.inv(m(lead_row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) = f.mul(m(lead_row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      const Elem factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(lead_row, j)));
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

Matrix nullspace(const Field& f, const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref(f, r);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix out(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
    out.append_row(v);
  }
  return out;
}

std::optional<std::vector<Elem>> solve_row_combination(const Field& f, const Matrix& m,
                                                       std::span<const Elem> target) {
  if (target.size() != m.cols()) throw Error(ErrorKind::LengthMismatch, "target length mismatch");
  // Solve m^T c = target^T via an augmented matrix.
  Matrix aug(m.cols(), m.rows() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(j, i) = m(i, j);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) aug(j, m.rows()) = target[j];
  const auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == m.rows()) return std::nullopt;
  std::vector<Elem> c(m.rows(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = aug(i, m.rows());
  return c;
}

std::vector<Elem> row_times(const Field& f, std::span<const Elem> message, const Matrix& m) {
  if (message.size() != m.rows()) {
    throw Error(ErrorKind::LengthMismatch, "message length must equal the number of rows");
  }
  std::vector<Elem> out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (message[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(message[i], m(i, j)));
  }
  return out;
}

}  // namespace lrc::linalg
