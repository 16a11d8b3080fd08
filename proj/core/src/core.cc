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

#include "haraux/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckFinite(const std::vector<double>& coords) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw DomainError("Vec: coordinate " + std::to_string(i) +
                        " is not finite");
    }
  }
}

}  // namespace

Vec::Vec(std::vector<double> coords) : coords_(std::move(coords)) {
  CheckFinite(coords_);
}

Vec::Vec(std::initializer_list<double> coords) : coords_(coords) {
  CheckFinite(coords_);
}

Vec Vec::Zero(std::size_t dim) { return Constant(dim, 0.0); }

Vec Vec::Constant(std::size_t dim, double value) {
  return Vec(std::vector<double>(dim, value));
}

Vec Vec::Generate(std::size_t dim,
                  const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = fn(i);
  return Vec(std::move(out));
}

Vec Vec::Concat(const Vec& head, const Vec& tail) {
  std::vector<double> out(head.coords_);
  out.insert(out.end(), tail.coords_.begin(), tail.coords_.end());
  return Vec(std::move(out));
}

Vec Vec::Segment(std::size_t offset, std::size_t length) const {
  if (offset + length > coords_.size()) {
    throw UsageError("Vec::Segment: range exceeds dimension");
  }
  return Vec(std::vector<double>(coords_.begin() + offset,
                                 coords_.begin() + offset + length));
}

void CheckSameDim(const Vec& a, const Vec& b, const char* context) {
  if (a.dim() != b.dim() || a.empty()) {
    throw UsageError(std::string(context) + ": dimension mismatch (" +
                     std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()) + ")");
  }
}

Vec operator+(const Vec& a, const Vec& b) {
  CheckSameDim(a, b, "Vec +");
  return Vec::Generate(a.dim(), [&](std::size_t i) { return a[i] + b[i]; });
}

Vec operator-(const Vec& a, const Vec& b) {
  CheckSameDim(a, b, "Vec -");
  return Vec::Generate(a.dim(), [&](std::size_t i) { return a[i] - b[i]; });
}

Vec operator-(const Vec& a) {
  return Vec::Generate(a.dim(), [&](std::size_t i) { return -a[i]; });
}

Vec operator*(double s, const Vec& a) {
  return Vec::Generate(a.dim(), [&](std::size_t i) { return s * a[i]; });
}

Vec operator/(const Vec& a, double s) {
  return Vec::Generate(a.dim(), [&](std::size_t i) { return a[i] / s; });
}

double Pairing(const Vec& x, const Vec& u_star) {
  CheckSameDim(x, u_star, "Pairing");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) sum += x[i] * u_star[i];
  return sum;
}

double NormSquared(const Vec& x) {
  double sum = 0.0;
  for (double v : x.coords()) sum += v * v;
  return sum;
}

double Norm(const Vec& x) { return std::sqrt(NormSquared(x)); }

double NormInf(const Vec& x) {
  double m = 0.0;
  for (double v : x.coords()) m = std::max(m, std::abs(v));
  return m;
}

XReal::XReal(double value) : value_(value) {
  if (std::isnan(value)) throw DomainError("XReal: NaN");
  if (value == -kInf) throw DomainError("XReal: -infinity is not allowed");
}

XReal XReal::Infinity() { return XReal(kInf); }

bool XReal::is_finite() const { return value_ != kInf; }

XReal operator+(XReal a, XReal b) {
  if (!a.is_finite() || !b.is_finite()) return XReal::Infinity();
  return XReal(a.value_ + b.value_);
}

XReal operator-(XReal a, double b) {
  if (!a.is_finite()) return a;
  return XReal(a.value_ - b);
}

std::strong_ordering operator<=>(XReal a, XReal b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ToString(XReal v) {
  if (!v.is_finite()) return "inf";
  return std::to_string(v.value());
}

DualPair::DualPair(Vec x, Vec u_star)
    : x_(std::move(x)), u_star_(std::move(u_star)) {
  CheckSameDim(x_, u_star_, "DualPair");
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw UsageError("Matrix::FromRows: empty matrix");
  }
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw UsageError("Matrix::FromRows: ragged row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw DomainError("Matrix::FromRows: non-finite entry");
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::Diagonal(const Vec& diag) {
  Matrix m(diag.dim(), diag.dim());
  for (std::size_t i = 0; i < diag.dim(); ++i) m(i, i) = diag[i];
  return m;
}

Vec Matrix::Multiply(const Vec& x) const {
  if (x.dim() != cols_) throw UsageError("Matrix::Multiply: bad dimension");
  return Vec::Generate(rows_, [&](std::size_t i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) sum += (*this)(i, j) * x[j];
    return sum;
  });
}

Vec Matrix::TransposeMultiply(const Vec& y) const {
  if (y.dim() != rows_) {
    throw UsageError("Matrix::TransposeMultiply: bad dimension");
  }
  return Vec::Generate(cols_, [&](std::size_t j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, j) * y[i];
    return sum;
  });
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

void Matrix::SetBlock(std::size_t row, std::size_t col, const Matrix& block) {
  if (row + block.rows_ > rows_ || col + block.cols_ > cols_) {
    throw UsageError("Matrix::SetBlock: block out of range");
  }
  for (std::size_t i = 0; i < block.rows_; ++i) {
    for (std::size_t j = 0; j < block.cols_; ++j) {
      (*this)(row + i, col + j) = block(i, j);
    }
  }
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw UsageError("Matrix +: shape mismatch");
  }
  Matrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    out.data_[k] = a.data_[k] + b.data_[k];
  }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (double& v : out.data_) v *= s;
  return out;
}

bool Interval::bounded() const {
  return std::isfinite(lo) && std::isfinite(hi);
}

bool Tolerance::Close(double a, double b) const {
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

}  // namespace haraux
