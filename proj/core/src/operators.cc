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

#include "haraux/operators.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckModulusGrid(const std::function<double(double)>& fn) {
  if (std::abs(fn(0.0)) > 0.0) {
    throw UsageError("UniformModulus: phi(0) must be 0");
  }
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double t = 0.01 * k;
    const double v = fn(t);
    if (!std::isfinite(v) || v <= prev) {
      throw UsageError("UniformModulus: not increasing near t = " +
                       std::to_string(t));
    }
    prev = v;
  }
}

Box SeparableBox(const SeparableFunction& f) {
  Box box;
  box.reserve(f.dim());
  for (const auto& p : f.parts()) box.push_back(p.domain());
  return box;
}

void CheckDim(const MonotoneOperator& op, const Vec& x) {
  if (x.dim() != op.dim()) {
    throw UsageError(op.name() + ": expected dimension " +
                     std::to_string(op.dim()) + ", got " +
                     std::to_string(x.dim()));
  }
}

}  // namespace

UniformModulus::UniformModulus(Kind kind, double alpha, double p,
                               std::function<double(double)> fn)
    : kind_(kind), alpha_(alpha), p_(p), fn_(std::move(fn)) {}

UniformModulus UniformModulus::Strong(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw UsageError("UniformModulus::Strong: alpha must be positive");
  }
  return UniformModulus(Kind::kStrong, alpha, 2.0, nullptr);
}

UniformModulus UniformModulus::Power(double alpha, double p) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(p > 1.0) ||
      !std::isfinite(p)) {
    throw UsageError("UniformModulus::Power: need alpha > 0 and p > 1");
  }
  return UniformModulus(Kind::kPower, alpha, p, nullptr);
}

UniformModulus UniformModulus::Custom(std::function<double(double)> fn) {
  if (!fn) throw UsageError("UniformModulus::Custom: empty function");
  CheckModulusGrid(fn);
  return UniformModulus(Kind::kCustom, 0.0, 0.0, std::move(fn));
}

double UniformModulus::operator()(double t) const {
  if (t < 0.0) throw DomainError("UniformModulus: negative argument");
  switch (kind_) {
    case Kind::kStrong:
      return alpha_ * t * t;
    case Kind::kPower:
      return alpha_ * std::pow(t, p_);
    case Kind::kCustom:
      return fn_(t);
  }
  return 0.0;
}

MonotoneOperator MonotoneOperator::Gradient(SeparableFunction f) {
  return MonotoneOperator(GradientOp{std::move(f)});
}

MonotoneOperator MonotoneOperator::Subdifferential(SeparableFunction f) {
  return MonotoneOperator(SubdifferentialOp{std::move(f)});
}

MonotoneOperator MonotoneOperator::Affine(Matrix m, Vec offset) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) {
    throw UsageError("affine operator: matrix must be square");
  }
  if (offset.dim() != n) {
    throw UsageError("affine operator: offset has the wrong dimension");
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
  }
  for (int trial = 0; trial < 64 + 8 * static_cast<int>(n); ++trial) {
    const Vec h = Vec::Generate(n, [&](std::size_t) { return normal(rng); });
    const double q = Pairing(h, m.Multiply(h));
    if (q < -1e-10 * (1.0 + scale) * NormSquared(h)) {
      throw UsageError(
          "affine operator: symmetric part is not positive semidefinite");
    }
  }
  return MonotoneOperator(AffineOp{std::move(m), std::move(offset)});
}

MonotoneOperator MonotoneOperator::Identity(std::size_t dim) {
  return Affine(Matrix::Identity(dim), Vec::Zero(dim));
}

MonotoneOperator MonotoneOperator::Joca16(double beta, ScalarLegendre psi) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw UsageError("joca16: beta must be positive");
  }
  if (std::isfinite(psi.domain().lo) || std::isfinite(psi.domain().hi)) {
    throw UsageError("joca16: psi must be finite on the whole line");
  }
  constexpr int kGrid = 2001;
  double prev_t = -10.0;
  double prev_d = psi.Deriv(prev_t);
  for (int k = 1; k < kGrid; ++k) {
    const double t = -10.0 + 20.0 * k / (kGrid - 1);
    const double d = psi.Deriv(t);
    if (std::abs(d - prev_d) > (beta + 1e-8) * (t - prev_t)) {
      throw UsageError("joca16: psi' is not " + std::to_string(beta) +
                       "-Lipschitz near t = " + std::to_string(t));
    }
    prev_t = t;
    prev_d = d;
  }
  return MonotoneOperator(Joca16Op{beta, std::move(psi)});
}

MonotoneOperator MonotoneOperator::Skew(Matrix l) {
  if (l.rows() == 0 || l.cols() == 0) {
    throw UsageError("skew operator: empty coupling matrix");
  }
  return MonotoneOperator(SkewOp{std::move(l)});
}

MonotoneOperator MonotoneOperator::Product(
    const std::vector<MonotoneOperator>& blocks) {
  if (blocks.empty()) throw UsageError("product operator: no blocks");
  ProductOp p;
  for (const auto& b : blocks) {
    p.blocks.push_back(std::make_shared<const MonotoneOperator>(b));
  }
  return MonotoneOperator(std::move(p));
}

MonotoneOperator MonotoneOperator::WithModulus(UniformModulus modulus) const {
  MonotoneOperator out = *this;
  out.modulus_ = std::move(modulus);
  return out;
}

std::size_t MonotoneOperator::dim() const {
  return std::visit(
      Overloaded{
          [](const GradientOp& op) { return op.f.dim(); },
          [](const SubdifferentialOp& op) { return op.f.dim(); },
          [](const AffineOp& op) { return op.m.rows(); },
          [](const Joca16Op&) { return std::size_t{2}; },
          [](const SkewOp& op) { return op.l.rows() + op.l.cols(); },
          [](const ProductOp& op) {
            std::size_t n = 0;
            for (const auto& b : op.blocks) n += b->dim();
            return n;
          },
      },
      v_);
}

std::vector<std::size_t> MonotoneOperator::BlockDims() const {
  if (const auto* p = std::get_if<ProductOp>(&v_)) {
    std::vector<std::size_t> dims;
    for (const auto& b : p->blocks) dims.push_back(b->dim());
    return dims;
  }
  return {dim()};
}

std::string MonotoneOperator::name() const {
  return std::visit(
      Overloaded{
          [](const GradientOp& op) { return "grad:" + op.f.name(); },
          [](const SubdifferentialOp& op) { return "subdiff:" + op.f.name(); },
          [](const AffineOp& op) {
            return "affine(" + std::to_string(op.m.rows()) + ")";
          },
          [](const Joca16Op& op) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "joca16:%g,", op.beta);
            return std::string(buf) + op.psi.name();
          },
          [](const SkewOp& op) {
            return "skew(" + std::to_string(op.l.rows()) + "x" +
                   std::to_string(op.l.cols()) + ")";
          },
          [](const ProductOp& op) {
            std::string out = "product(";
            for (std::size_t i = 0; i < op.blocks.size(); ++i) {
              if (i > 0) out += ",";
              out += op.blocks[i]->name();
            }
            return out + ")";
          },
      },
      v_);
}

Box MonotoneOperator::Domain() const {
  return std::visit(
      Overloaded{
          [](const GradientOp& op) { return SeparableBox(op.f); },
          [](const SubdifferentialOp& op) { return SeparableBox(op.f); },
          [this](const auto&) { return Box(dim(), Interval{-kInf, kInf}); },
          [](const ProductOp& op) {
            Box box;
            for (const auto& b : op.blocks) {
              const Box part = b->Domain();
              box.insert(box.end(), part.begin(), part.end());
            }
            return box;
          },
      },
      v_);
}

bool MonotoneOperator::InDomain(const Vec& x) const {
  if (x.dim() != dim()) return false;
  return std::visit(
      Overloaded{
          [&](const GradientOp& op) { return op.f.InInterior(x); },
          [&](const SubdifferentialOp& op) { return op.f.InInterior(x); },
          [](const auto&) { return true; },
          [&](const ProductOp& op) {
            std::size_t offset = 0;
            for (const auto& b : op.blocks) {
              if (!b->InDomain(x.Segment(offset, b->dim()))) return false;
              offset += b->dim();
            }
            return true;
          },
      },
      v_);
}

Vec MonotoneOperator::Apply(const Vec& x) const {
  CheckDim(*this, x);
  return std::visit(
      Overloaded{
          [&](const GradientOp& op) { return op.f.Gradient(x); },
          [&](const SubdifferentialOp& op) { return op.f.Gradient(x); },
          [&](const AffineOp& op) { return op.m.Multiply(x) + op.offset; },
          [&](const Joca16Op& op) {
            return Vec{op.beta * x[0] - op.psi.Deriv(x[0]) - x[1],
                       x[0] + op.beta * x[1] - op.psi.Deriv(x[1])};
          },
          [&](const SkewOp& op) {
            const std::size_t n = op.l.cols();
            const std::size_t m = op.l.rows();
            const Vec px = x.Segment(0, n);
            const Vec dy = x.Segment(n, m);
            return Vec::Concat(op.l.TransposeMultiply(dy),
                               -op.l.Multiply(px));
          },
          [&](const ProductOp& op) {
            std::vector<double> out;
            out.reserve(x.dim());
            std::size_t offset = 0;
            for (const auto& b : op.blocks) {
              const Vec part = b->Apply(x.Segment(offset, b->dim()));
              out.insert(out.end(), part.coords().begin(),
                         part.coords().end());
              offset += b->dim();
            }
            return Vec(std::move(out));
          },
      },
      v_);
}

Matrix MonotoneOperator::Jacobian(const Vec& x) const {
  CheckDim(*this, x);
  auto separable = [&](const SeparableFunction& f) {
    return Matrix::Diagonal(Vec::Generate(
        f.dim(), [&](std::size_t i) { return f.part(i).Deriv2(x[i]); }));
  };
  return std::visit(
      Overloaded{
          [&](const GradientOp& op) { return separable(op.f); },
          [&](const SubdifferentialOp& op) { return separable(op.f); },
          [&](const AffineOp& op) { return op.m; },
          [&](const Joca16Op& op) {
            return Matrix::FromRows(
                {{op.beta - op.psi.Deriv2(x[0]), -1.0},
                 {1.0, op.beta - op.psi.Deriv2(x[1])}});
          },
          [&](const SkewOp& op) {
            const std::size_t n = op.l.cols();
            Matrix j(dim(), dim());
            j.SetBlock(0, n, op.l.Transpose());
            j.SetBlock(n, 0, -1.0 * op.l);
            return j;
          },
          [&](const ProductOp& op) {
            Matrix j(dim(), dim());
            std::size_t offset = 0;
            for (const auto& b : op.blocks) {
              j.SetBlock(offset, offset,
                         b->Jacobian(x.Segment(offset, b->dim())));
              offset += b->dim();
            }
            return j;
          },
      },
      v_);
}

MonotoneOperator InverseOfGradient(const MonotoneOperator& op) {
  const SeparableFunction* f = nullptr;
  if (const auto* g = std::get_if<GradientOp>(&op.variant())) f = &g->f;
  if (const auto* s = std::get_if<SubdifferentialOp>(&op.variant())) {
    f = &s->f;
  }
  if (f == nullptr || !f->is_legendre()) {
    throw UsageError("InverseOfGradient: needs the gradient of a Legendre "
                     "function, got " + op.name());
  }
  std::vector<ScalarLegendre> parts;
  for (const auto& p : f->parts()) parts.push_back(Conjugate(p));
  return MonotoneOperator::Gradient(SeparableFunction(std::move(parts)));
}

MonotonicityReport ProbeMonotonicity(
    const MonotoneOperator& op, const Box& box, int n, std::uint64_t seed,
    const std::optional<UniformModulus>& modulus) {
  if (box.size() != op.dim()) {
    throw UsageError("ProbeMonotonicity: box has the wrong dimension");
  }
  for (const auto& iv : box) {
    if (!iv.bounded() || !(iv.lo <= iv.hi)) {
      throw UsageError("ProbeMonotonicity: box must be bounded");
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    return Vec::Generate(box.size(), [&](std::size_t i) {
      return box[i].lo + (box[i].hi - box[i].lo) * unit(rng);
    });
  };
  MonotonicityReport report;
  report.min_pairing = kInf;
  report.min_ratio_sq = kInf;
  if (modulus) report.min_modulus_excess = kInf;
  for (int k = 0; k < n; ++k) {
    const Vec x = draw();
    const Vec y = draw();
    const Vec d = x - y;
    const double dist_sq = NormSquared(d);
    if (dist_sq == 0.0) continue;
    const double pairing = Pairing(d, op.Apply(x) - op.Apply(y));
    ++report.pairs;
    report.min_pairing = std::min(report.min_pairing, pairing);
    report.min_ratio_sq = std::min(report.min_ratio_sq, pairing / dist_sq);
    if (modulus) {
      report.min_modulus_excess = std::min(
          *report.min_modulus_excess, pairing - (*modulus)(std::sqrt(dist_sq)));
    }
  }
  return report;
}

}  // namespace haraux
