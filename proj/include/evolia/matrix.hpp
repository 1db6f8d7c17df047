#pragma once

#include <cstddef>
#include <vector>

#include "evolia/ring.hpp"

namespace evolia {

/// Dense matrix of ring values, row-major. Exact arithmetic only; all
/// entries share one ring and every operation checks it.
class RingMatrix {
public:
  RingMatrix(RingPtr ring, std::size_t rows, std::size_t cols);  // zero-filled
  static RingMatrix from_rows(RingPtr ring,
                              const std::vector<std::vector<Value>>& rows);
  static RingMatrix from_columns(RingPtr ring,
                                 const std::vector<std::vector<Value>>& cols);
  static RingMatrix identity(RingPtr ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Value& operator()(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Value v);

  std::vector<Value> column(std::size_t c) const;
  bool is_zero() const;

  /// Column j multiplied through by alpha[j].
  RingMatrix scaled_columns(const std::vector<Value>& alpha) const;

  friend bool operator==(const RingMatrix& a, const RingMatrix& b);
  friend bool operator!=(const RingMatrix& a, const RingMatrix& b) {
    return !(a == b);
  }

private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> entries_;
};

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
std::vector<Value> operator*(const RingMatrix& m, const std::vector<Value>& v);

}  // namespace evolia
