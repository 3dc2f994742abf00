#pragma once

// Arithmetic and dense matrices over a prime field F_q.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fwlab/error.hpp"

namespace fwlab {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

class PrimeField {
 public:
  using Value = std::uint32_t;

  explicit PrimeField(Value q) : q_(q) {
    if (!is_prime(q)) throw InputError(std::to_string(q) + " is not prime");
  }

  Value q() const noexcept { return q_; }
  Value add(Value a, Value b) const { return static_cast<Value>((std::uint64_t{a} + b) % q_); }
  Value sub(Value a, Value b) const { return static_cast<Value>((std::uint64_t{a} + q_ - b) % q_); }
  Value mul(Value a, Value b) const { return static_cast<Value>(std::uint64_t{a} * b % q_); }
  Value neg(Value a) const { return a == 0 ? 0 : q_ - a; }

  Value pow(Value a, std::uint64_t e) const {
    Value r = 1 % q_;
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }

  Value inv(Value a) const {
    if (a % q_ == 0) throw Error("inverse of zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
  }

  std::uint64_t multiplicative_order(Value a) const {
    if (a % q_ == 0) throw Error("zero has no multiplicative order");
    std::uint64_t k = 1;
    for (Value x = a % q_; x != 1; x = mul(x, a)) ++k;
    return k;
  }

  // Least primitive root: the canonical generator of F_q^x.
  Value primitive_root() const {
    if (q_ == 2) return 1;
    auto factors = prime_factors(q_ - 1);
    for (Value g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto p : factors)
        if (pow(g, (q_ - 1) / p) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    throw Error("no primitive root found");
  }

  // primitive_root()^((q-1)/m), an element of order exactly m.
  Value root_of_unity(std::uint64_t m) const {
    if (m == 0 || (q_ - 1) % m != 0)
      throw InputError("F_" + std::to_string(q_) + "^x has no element of order " + std::to_string(m));
    return pow(primitive_root(), (q_ - 1) / m);
  }

 private:
  Value q_;
};

class FpMatrix {
 public:
  using Value = PrimeField::Value;

  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, Value q) : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

  static FpMatrix identity(std::size_t n, Value q) {
    FpMatrix m(n, n, q);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % q;
    return m;
  }

  static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, Value q) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    FpMatrix m(r, c, q);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) {
        std::int64_t v = rows[i][j] % static_cast<std::int64_t>(q);
        m.at(i, j) = static_cast<Value>(v < 0 ? v + q : v);
      }
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Value modulus() const noexcept { return q_; }
  Value& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Value at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const FpMatrix&) const = default;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_ || a.q_ != b.q_) throw InputError("matrix shape or field mismatch");
    FpMatrix r(a.rows_, b.cols_, a.q_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint64_t aik = a.at(i, k);
        if (!aik) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) = static_cast<Value>((r.at(i, j) + aik * b.at(k, j)) % a.q_);
      }
    return r;
  }

  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.q_ != b.q_) throw InputError("matrix shape or field mismatch");
    FpMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = (a.data_[i] + a.q_ - b.data_[i]) % a.q_;
    return r;
  }

  // Row vector times matrix.
  std::vector<Value> apply(const std::vector<Value>& v) const {
    std::vector<Value> out(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!v[i]) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        out[j] = static_cast<Value>((out[j] + std::uint64_t{v[i]} * at(i, j)) % q_);
    }
    return out;
  }

  bool is_monomial() const {
    if (rows_ != cols_) return false;
    std::vector<int> col_count(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      int row_count = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j)) {
          ++row_count;
          ++col_count[j];
        }
      if (row_count != 1) return false;
    }
    for (int c : col_count)
      if (c != 1) return false;
    return true;
  }

  // Places `block` with its top-left corner at (offset, offset).
  void set_block(std::size_t offset, const FpMatrix& block) {
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) at(offset + i, offset + j) = block.at(i, j);
  }

  std::vector<std::vector<Value>> to_rows() const {
    std::vector<std::vector<Value>> out(rows_, std::vector<Value>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j);
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Value q_ = 2;
  std::vector<Value> data_;
};

// Row reduction over F_q.
inline std::size_t rank(FpMatrix m) {
  PrimeField F(m.modulus());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
    auto inv = F.inv(m.at(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      auto f = F.mul(m.at(i, c), inv);
      if (!f) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

}  // namespace fwlab
