#include "evolia/matrix.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace evolia {

RingMatrix::RingMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      entries_(rows * cols, ring_->zero()) {}

RingMatrix RingMatrix::from_rows(RingPtr ring,
                                 const std::vector<std::vector<Value>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  RingMatrix m(std::move(ring), r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw std::invalid_argument("ragged row " + std::to_string(i + 1) + ": expected " +
                                  std::to_string(c) + " entries, got " +
                                  std::to_string(rows[i].size()));
    }
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

RingMatrix RingMatrix::from_columns(RingPtr ring,
                                    const std::vector<std::vector<Value>>& cols) {
  const std::size_t c = cols.size();
  const std::size_t r = c == 0 ? 0 : cols.front().size();
  RingMatrix m(std::move(ring), r, c);
  for (std::size_t j = 0; j < c; ++j) {
    if (cols[j].size() != r) {
      throw std::invalid_argument("ragged column " + std::to_string(j + 1) +
                                  ": expected " + std::to_string(r) + " entries, got " +
                                  std::to_string(cols[j].size()));
    }
    for (std::size_t i = 0; i < r; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

RingMatrix RingMatrix::identity(RingPtr ring, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring->one());
  return m;
}

const Value& RingMatrix::operator()(std::size_t r, std::size_t c) const {
  return entries_[r * cols_ + c];
}

void RingMatrix::set(std::size_t r, std::size_t c, Value v) {
  if (!v.ring()->same_as(*ring_)) {
    throw std::invalid_argument("matrix entry from ring " + v.ring()->name() +
                                " in matrix over " + ring_->name());
  }
  entries_[r * cols_ + c] = std::move(v);
}

std::vector<Value> RingMatrix::column(std::size_t c) const {
  std::vector<Value> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, c));
  return out;
}

bool RingMatrix::is_zero() const {
  for (const Value& v : entries_) {
    if (!evolia::is_zero(v)) return false;
  }
  return true;
}

RingMatrix RingMatrix::scaled_columns(const std::vector<Value>& alpha) const {
  if (alpha.size() != cols_) {
    throw std::invalid_argument("scale vector length " + std::to_string(alpha.size()) +
                                " does not match column count " + std::to_string(cols_));
  }
  RingMatrix out(ring_, rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (evolia::is_zero(alpha[j])) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      out.set(i, j, (*this)(i, j) * alpha[j]);
    }
  }
  return out;
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  if (!a.ring_->same_as(*b.ring_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    return false;
  }
  return a.entries_ == b.entries_;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product shape mismatch");
  }
  RingMatrix out(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (is_zero(b(k, j))) continue;
        out.set(i, j, out(i, j) + a(i, k) * b(k, j));
      }
    }
  }
  return out;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix sum shape mismatch");
  }
  RingMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.set(i, j, a(i, j) + b(i, j));
    }
  }
  return out;
}

std::vector<Value> operator*(const RingMatrix& m, const std::vector<Value>& v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("matrix-vector shape mismatch");
  }
  std::vector<Value> out(m.rows(), m.ring()->zero());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_zero(v[j])) continue;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (is_zero(m(i, j))) continue;
      out[i] = out[i] + m(i, j) * v[j];
    }
  }
  return out;
}

}  // namespace evolia
