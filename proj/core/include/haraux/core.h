// Copyright 2026 The Haraux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dimension-checked real vectors, extended reals, dual pairs and the
// Euclidean duality pairing. Everything else in the library is written in
// terms of these types.

#ifndef HARAUX_CORE_H_
#define HARAUX_CORE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace haraux {

// Error taxonomy. Callers distinguish configuration mistakes (UsageError)
// from points outside a function's domain (DomainError) and from solver
// failures (NoSolutionError, ConvergenceError).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a quantity that is nonnegative in exact arithmetic comes out
// clearly negative.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A point of R^N with finite coordinates. Default-constructed vectors are
// empty placeholders; every arithmetic operation requires dim() >= 1.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<double> coords);
  Vec(std::initializer_list<double> coords);

  static Vec Zero(std::size_t dim);
  static Vec Constant(std::size_t dim, double value);
  static Vec Generate(std::size_t dim,
                      const std::function<double(std::size_t)>& fn);
  static Vec Concat(const Vec& head, const Vec& tail);

  std::size_t dim() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& to_vector() const { return coords_; }

  Vec Segment(std::size_t offset, std::size_t length) const;

  friend Vec operator+(const Vec& a, const Vec& b);
  friend Vec operator-(const Vec& a, const Vec& b);
  friend Vec operator-(const Vec& a);
  friend Vec operator*(double s, const Vec& a);
  friend Vec operator/(const Vec& a, double s);
  friend bool operator==(const Vec& a, const Vec& b) = default;

 private:
  std::vector<double> coords_;
};

// Throws UsageError unless a.dim() == b.dim() and both are nonempty.
void CheckSameDim(const Vec& a, const Vec& b, const char* context);

// Euclidean dot product <x, u*>.
double Pairing(const Vec& x, const Vec& u_star);
double Norm(const Vec& x);
double NormSquared(const Vec& x);
double NormInf(const Vec& x);

// An element of (-inf, +inf]. Negative infinity and NaN are rejected.
class XReal {
 public:
  XReal(double value);  // NOLINT(google-explicit-constructor)
  static XReal Infinity();

  bool is_finite() const;
  // +inf for the infinite element.
  double value() const { return value_; }

  friend XReal operator+(XReal a, XReal b);
  friend XReal operator-(XReal a, double b);
  friend bool operator==(XReal a, XReal b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(XReal a, XReal b);

 private:
  double value_;
};

std::string ToString(XReal v);

// A primal-dual evaluation point (x, u*).
class DualPair {
 public:
  DualPair(Vec x, Vec u_star);

  const Vec& x() const { return x_; }
  const Vec& u_star() const { return u_star_; }
  std::size_t dim() const { return x_.dim(); }

 private:
  Vec x_;
  Vec u_star_;
};

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix Identity(std::size_t n);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  static Matrix Diagonal(const Vec& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }

  Vec Multiply(const Vec& x) const;
  Vec TransposeMultiply(const Vec& y) const;
  Matrix Transpose() const;

  // Writes `block` with its top-left corner at (row, col).
  void SetBlock(std::size_t row, std::size_t col, const Matrix& block);

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Closed or open real interval, depending on context. Either end may be
// infinite.
struct Interval {
  double lo;
  double hi;

  bool Contains(double t) const { return lo <= t && t <= hi; }
  bool bounded() const;
};

using Box = std::vector<Interval>;

// |a - b| <= atol + rtol * |b|.
struct Tolerance {
  double atol = 1e-10;
  double rtol = 1e-10;

  bool Close(double a, double b) const;
};

}  // namespace haraux

#endif  // HARAUX_CORE_H_
