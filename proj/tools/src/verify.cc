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

#include "haraux_cli/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "haraux/bounds.h"
#include "haraux/functions.h"
#include "haraux/gauges.h"
#include "haraux/lambert_w.h"
#include "haraux/operators.h"
#include "haraux/oracle.h"
#include "haraux/solvers.h"
#include "haraux_cli/csv.h"
#include "haraux_cli/figure1.h"

namespace haraux::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Suite {
 public:
  explicit Suite(const VerifyOptions& options)
      : options_(options), rng_(options.seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  void AtMost(const std::string& module, const std::string& check,
              double measured, double threshold) {
    if (check == options_.corrupt_check) threshold = -kInf;
    rows_.push_back({module, check, measured <= threshold, measured,
                     threshold});
  }

  void AtLeast(const std::string& module, const std::string& check,
               double measured, double threshold) {
    if (check == options_.corrupt_check) threshold = kInf;
    rows_.push_back({module, check, measured >= threshold, measured,
                     threshold});
  }

  // Runs `body`; an exception becomes a failed row with a NaN measurement.
  void Guard(const std::string& module, const std::string& check,
             const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rows_.push_back({module, check, false,
                       std::numeric_limits<double>::quiet_NaN(), 0.0,
                       e.what()});
    }
  }

  std::vector<CheckRow> Take() { return std::move(rows_); }

 private:
  VerifyOptions options_;
  std::mt19937_64 rng_;
  std::vector<CheckRow> rows_;
};

struct CatalogEntry {
  std::string name;
  Interval x;  // sampling box for x, inside int dom phi
  Interval u;  // sampling box for u*, inside int dom phi*
};

const std::vector<CatalogEntry>& Catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"quadratic", {-5, 5}, {-5, 5}},
      {"burg", {0.05, 5}, {-5, -0.05}},
      {"boltzmann_shannon", {0.01, 5}, {-3, 3}},
      {"fermi_dirac", {0.01, 0.99}, {-3, 3}},
      {"softplus", {-5, 5}, {0.01, 0.99}},
      {"quad_plus:quadratic", {-5, 5}, {-5, 5}},
      {"quad_plus:burg", {0.05, 5}, {-5, 5}},
  };
  return catalog;
}

void CoreChecks(Suite& s) {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vec a = Vec::Generate(3, [&](std::size_t) { return s.Uniform(-5, 5); });
    const Vec b = Vec::Generate(3, [&](std::size_t) { return s.Uniform(-5, 5); });
    const Vec c = Vec::Generate(3, [&](std::size_t) { return s.Uniform(-5, 5); });
    const double t = s.Uniform(-3, 3);
    const double lhs = Pairing(a + t * b, c);
    const double rhs = Pairing(a, c) + t * Pairing(b, c);
    const double scale =
        1.0 + std::abs(Pairing(a, c)) + std::abs(t * Pairing(b, c));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
    worst = std::max(worst, std::abs(Pairing(a, b) - Pairing(b, a)));
  }
  s.AtMost("core", "pairing_symmetric_bilinear", worst, 1e-12);

  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    auto draw = [&]() -> XReal {
      return s.Uniform(0, 1) < 0.3 ? XReal::Infinity() : XReal(s.Uniform(-5, 5));
    };
    const XReal a = draw(), b = draw(), c = draw();
    if (!a.is_finite() || !b.is_finite() || !c.is_finite()) {
      if ((a + b) + c != a + (b + c) || a + b != b + a) ++violations;
    } else if (std::abs(((a + b) + c).value() - (a + (b + c)).value()) >
               1e-12 * (1 + std::abs(a.value()) + std::abs(b.value()) +
                        std::abs(c.value()))) {
      ++violations;
    }
  }
  s.AtMost("core", "xreal_associative_commutative", violations, 0);
}

void FunctionChecks(Suite& s) {
  double fd_err = 0.0, fy_min = kInf, graph_max = 0.0, inv_err = 0.0,
         breg_min = kInf, breg_self = 0.0;
  for (const auto& e : Catalog()) {
    const ScalarLegendre f = ScalarByName(e.name);
    const ConvexFunction phi = FunctionByName(e.name, 1);
    for (int k = 0; k < 1000; ++k) {
      const double t = s.Uniform(e.x.lo, e.x.hi);
      const double h = 1e-6;
      const double fd = (f.Value(t + h).value() - f.Value(t - h).value()) /
                        (2 * h);
      fd_err = std::max(fd_err, std::abs(fd - f.Deriv(t)));
      const double u = s.Uniform(e.u.lo, e.u.hi);
      fy_min = std::min(fy_min,
                        FenchelYoung(phi, DualPair(Vec{t}, Vec{u})).value());
      graph_max = std::max(
          graph_max,
          FenchelYoung(phi, DualPair(Vec{t}, Vec{f.Deriv(t)})).value());
      inv_err = std::max(inv_err, std::abs(f.DerivInv(f.Deriv(t)) - t) /
                                      (1.0 + std::abs(t)));
      const SeparableFunction sep(f, 1);
      const double t2 = s.Uniform(e.x.lo, e.x.hi);
      breg_min = std::min(breg_min, Bregman(sep, Vec{t}, Vec{t2}).value());
      breg_self = std::max(breg_self,
                           std::abs(Bregman(sep, Vec{t}, Vec{t}).value()));
    }
  }
  s.AtMost("functions", "gradient_finite_difference", fd_err, 1e-5);
  s.AtLeast("functions", "fenchel_young_nonnegative", fy_min, -1e-12);
  s.AtMost("functions", "fenchel_young_graph_zero", graph_max, 1e-10);
  s.AtMost("functions", "deriv_inv_roundtrip", inv_err, 1e-10);
  s.AtLeast("functions", "bregman_nonnegative", breg_min, -1e-12);
  s.AtMost("functions", "bregman_self_zero", breg_self, 0.0);
}

void OperatorChecks(Suite& s, std::uint64_t seed) {
  double min_pairing = kInf;
  auto probe = [&](const MonotoneOperator& op, const Box& box) {
    min_pairing = std::min(min_pairing,
                           ProbeMonotonicity(op, box, 2000, seed).min_pairing);
  };
  for (const auto& e : Catalog()) {
    probe(MonotoneOperator::Gradient(AsSeparable(FunctionByName(e.name, 2))),
          {e.x, e.x});
  }
  probe(MonotoneOperator::Joca16(1.0, Quadratic()), {{-1, 1}, {-1, 1}});
  probe(MonotoneOperator::Joca16(1.0, Softplus()), {{-5, 5}, {-5, 5}});
  probe(MonotoneOperator::Skew(Matrix::FromRows({{1, 2}, {-0.5, 3}})),
        Box(4, Interval{-3, 3}));
  s.AtLeast("operators", "monotonicity_probe_min_pairing", min_pairing, -1e-9);

  double skew = 0.0;
  for (int k = 0; k < 500; ++k) {
    Matrix l(2, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) l(i, j) = s.Uniform(-1, 1);
    }
    const MonotoneOperator b = MonotoneOperator::Skew(l);
    const Vec v = Vec::Generate(5, [&](std::size_t) { return s.Uniform(-1, 1); });
    skew = std::max(skew, std::abs(Pairing(v, b.Apply(v))));
  }
  s.AtMost("operators", "skew_pairing_zero", skew, 1e-12);

  const MonotoneOperator rot = MonotoneOperator::Joca16(1.0, Quadratic());
  double rot_err = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Vec x{s.Uniform(-1, 1), s.Uniform(-1, 1)};
    rot_err = std::max(rot_err, NormInf(rot.Apply(x) - Vec{-x[1], x[0]}));
  }
  s.AtMost("operators", "joca16_rotation", rot_err, 1e-14);
}

void SolverChecks(Suite& s) {
  double lw = std::abs(LambertW(0.0));
  for (int k = 0; k <= 400; ++k) {
    const double t = std::pow(10.0, -12.0 + 18.0 * k / 400.0);
    const double w = LambertW(t);
    lw = std::max(lw, std::abs(w * std::exp(w) - t) / (1.0 + t));
  }
  s.AtMost("solvers", "lambert_w_roundtrip", lw, 1e-13);

  double residual = 0.0, agreement = 0.0;
  SolveConfig numeric;
  numeric.prefer_closed_form = false;
  const SeparableFunction burg(Burg(), 1), fd(FermiDirac(), 1),
      bs(BoltzmannShannon(), 1);
  for (int k = 0; k < 1000; ++k) {
    const double gamma = std::pow(10.0, s.Uniform(-1, 1));
    const double xi = s.Uniform(0.05, 5), mu = s.Uniform(-5, -0.05);
    const Vec rb = burg.Gradient(Vec{xi}) + gamma * Vec{mu};
    const ResolventSolution zb = BregmanProx(burg, burg, gamma, rb);
    residual = std::max(residual, zb.residual / (1 + NormInf(rb)));
    agreement = std::max(
        agreement, NormInf(zb.z - BregmanProx(burg, burg, gamma, rb, numeric).z));
    const double eta = s.Uniform(0.01, 0.99), nu = s.Uniform(-3, 3);
    const Vec rf = fd.Gradient(Vec{eta}) + Vec{nu};
    const ResolventSolution zf = BregmanProx(fd, bs, 1.0, rf);
    residual = std::max(residual, zf.residual / (1 + NormInf(rf)));
    agreement = std::max(agreement,
                         NormInf(zf.z - BregmanProx(fd, bs, 1.0, rf, numeric).z));
    const double v = s.Uniform(-5, 5);
    agreement = std::max(agreement,
                         std::abs(ScalarProx(BoltzmannShannon(), gamma, v) -
                                  ScalarProx(BoltzmannShannon(), gamma, v,
                                             numeric)));
  }
  s.AtMost("solvers", "resolvent_residual", residual, 1e-10);
  s.AtMost("solvers", "closed_form_numeric_agreement", agreement, 1e-8);

  double warped = 0.0;
  const MonotoneOperator b =
      MonotoneOperator::Affine(Matrix::FromRows({{0.5}}), Vec{0.3});
  for (const auto& e : Catalog()) {
    const SeparableFunction phi = AsSeparable(FunctionByName(e.name, 1));
    for (int k = 0; k < 100; ++k) {
      const double gamma = s.Uniform(0.2, 2);
      const Vec x{s.Uniform(e.x.lo, e.x.hi)};
      const Vec z = WarpedResolvent(MonotoneOperator::Identity(1),
                                    MonotoneOperator::Subdifferential(phi), b,
                                    gamma, x)
                        .z;
      warped = std::max(warped,
                        NormInf(z - Prox(phi, gamma, x - gamma * b.Apply(x))));
    }
  }
  s.AtMost("solvers", "warped_resolvent_identity_kernel", warped, 1e-10);
}

std::vector<BoundResult> AllBounds(const std::string& name, const DualPair& p,
                                   double gamma) {
  const ConvexFunction phi = FunctionByName(name, p.dim());
  const SeparableFunction sep = AsSeparable(phi);
  const MonotoneOperator a = MonotoneOperator::Subdifferential(sep);
  const MonotoneOperator id = MonotoneOperator::Identity(p.dim());
  std::vector<BoundResult> out = {
      BoundPairing(id, a, p, gamma),
      BoundStrong(id, 1.0, a, p, gamma),
      BoundBregman(sep, a, p, gamma),
      BoundLegendreSelf(phi, p, gamma),
      BoundCarlierHaraux(a, p, gamma),
      BoundCarlierFy(phi, p, gamma),
  };
  if (name == "burg") out.push_back(BoundBurgClosed(p, gamma));
  return out;
}

void BoundChecks(Suite& s) {
  double excess = -kInf, on_graph = 0.0, off_graph = kInf, chain = -kInf,
         burg_eq = 0.0;
  for (const auto& e : Catalog()) {
    const ConvexFunction phi = FunctionByName(e.name, 1);
    const ScalarLegendre f = ScalarByName(e.name);
    for (int k = 0; k < 300; ++k) {
      const double gamma = std::pow(10.0, s.Uniform(-1, 1));
      const DualPair p(Vec{s.Uniform(e.x.lo, e.x.hi)},
                       Vec{s.Uniform(e.u.lo, e.u.hi)});
      const double exact = FenchelYoung(phi, p).value();
      for (const auto& b : AllBounds(e.name, p, gamma)) {
        excess = std::max(excess, b.value - exact);
        if (b.method == BoundMethod::kStrong) {
          chain = std::max(chain, b.value - b.diagnostics.at("pairing"));
        }
        if (b.method == BoundMethod::kBurgClosed) {
          burg_eq = std::max(
              burg_eq,
              std::abs(b.value -
                       BoundBregman(SeparableFunction(Burg(), 1),
                                    MonotoneOperator::Subdifferential(
                                        SeparableFunction(Burg(), 1)),
                                    p, gamma)
                           .value));
        }
      }
      const double x = p.x()[0];
      const DualPair graph(Vec{x}, Vec{f.Deriv(x)});
      for (const auto& b : AllBounds(e.name, graph, gamma)) {
        on_graph = std::max(on_graph, b.value);
      }
      const double shift = s.Uniform(0.1, 1.0);
      for (double sign : {-1.0, 1.0}) {
        const double u = f.Deriv(x) + sign * shift;
        if (!f.InConjInterior(u)) continue;
        const DualPair off(Vec{x}, Vec{u});
        off_graph = std::min(
            off_graph,
            BoundPairing(MonotoneOperator::Identity(1),
                         MonotoneOperator::Subdifferential(AsSeparable(phi)),
                         off, gamma)
                .value);
      }
    }
  }
  s.AtMost("bounds", "dominated_by_exact_fenchel_young", excess, 1e-9);
  s.AtMost("bounds", "zero_on_graph", on_graph, 1e-10);
  s.AtLeast("bounds", "positive_off_graph", off_graph, 1e-8);
  s.AtMost("bounds", "strong_below_pairing", chain, 1e-10);
  s.AtMost("bounds", "burg_closed_form_equality", burg_eq, 1e-10);
}

void OracleChecks(Suite& s) {
  const MonotoneOperator id = MonotoneOperator::Identity(1);
  const Box box{{-10, 10}};
  double refine = -kInf, conv = 0.0;
  for (int k = 0; k < 20; ++k) {
    const DualPair p(Vec{s.Uniform(-5, 5)}, Vec{s.Uniform(-5, 5)});
    double prev = -kInf;
    for (std::size_t n = 513; n <= 4097; n = RefineGridSize(n)) {
      const double v = HarauxLowerApprox(SampleGraph(id, box, n), p);
      refine = std::max(refine, prev - v);
      prev = v;
    }
    const double x = p.x()[0], u = p.u_star()[0];
    conv = std::max(conv, std::abs(HarauxLowerApprox(SampleGraph(id, box, 4096),
                                                     p) -
                                   (x - u) * (x - u) / 4));
  }
  s.AtMost("oracle", "refinement_monotone", refine, 0.0);
  s.AtMost("oracle", "quadratic_convergence", conv, 1e-3);

  double below = -kInf;
  int inconsistent = 0;
  for (const auto& e : Catalog()) {
    const ConvexFunction phi = FunctionByName(e.name, 1);
    const MonotoneOperator a =
        MonotoneOperator::Subdifferential(AsSeparable(phi));
    const GraphSample sample = SampleGraph(a, DefaultVerificationBox(a), 4096);
    for (int k = 0; k < 20; ++k) {
      const DualPair p(Vec{s.Uniform(e.x.lo, e.x.hi)},
                       Vec{s.Uniform(e.u.lo, e.u.hi)});
      below = std::max(below, HarauxLowerApprox(sample, p) -
                                  FenchelYoung(phi, p).value());
      const BoundResult b = BoundLegendreSelf(phi, p, 1.0);
      if (VerifyBoundAgainstGraph(b, a, p, 1e-6).verdict !=
          Verdict::kConsistent) {
        ++inconsistent;
      }
    }
  }
  s.AtMost("oracle", "sample_below_exact", below, 1e-9);
  s.AtMost("oracle", "bounds_consistent_with_sample", inconsistent, 0);
}

KtInstance LinearQuadraticKt(const Vec& x_bar, const Vec& y_bar,
                             const Matrix& l) {
  const std::size_t n = x_bar.dim(), m = y_bar.dim();
  // C x = x - a and D^{-1} y = y - b with offsets placing the Kuhn-Tucker
  // point at (x_bar, y_bar).
  const Vec a = x_bar + l.TransposeMultiply(y_bar);
  const Vec b = y_bar - l.Multiply(x_bar);
  return KtInstance{
      .c = MonotoneOperator::Affine(Matrix::Identity(n), -a),
      .d_inv = MonotoneOperator::Affine(Matrix::Identity(m), -b),
      .l = l,
      .gamma = 1.0,
      .w_x = MonotoneOperator::Identity(n),
      .w_ystar = MonotoneOperator::Identity(m),
  };
}

void GaugeChecks(Suite& s) {
  double zero = 0.0, displaced = kInf, product = 0.0;
  for (int k = 0; k < 50; ++k) {
    Matrix l(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) l(i, j) = s.Uniform(-2, 2);
    }
    const Vec xb{s.Uniform(-2, 2), s.Uniform(-2, 2)};
    const Vec yb{s.Uniform(-2, 2), s.Uniform(-2, 2)};
    KtInstance inst = LinearQuadraticKt(xb, yb, l);
    inst.gamma = std::pow(10.0, s.Uniform(-1, 1));
    zero = std::max(zero, KtGaugeBound(inst, xb, yb).value);
    const Vec xd = xb + Vec{0.1, 0.1}, yd = yb + Vec{0.1, 0.1};
    const BoundResult g = KtGaugeBound(inst, xd, yd);
    displaced = std::min(displaced, g.value);
    product = std::max(
        product,
        std::abs(g.value -
                 ThetaBound(KtAsInclusion(inst), Vec::Concat(xd, yd)).value));
  }
  s.AtMost("gauges", "kt_gauge_zero_at_kt_point", zero, 1e-9);
  s.AtLeast("gauges", "kt_gauge_positive_when_displaced", displaced, 1e-6);
  s.AtMost("gauges", "kt_product_space_consistency", product, 1e-10);
}

void CliChecks(Suite& s) {
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const double v = s.Uniform(-1, 1) * std::pow(10.0, s.Uniform(-300, 300));
    if (std::strtod(FormatDouble(v).c_str(), nullptr) != v) ++mismatches;
  }
  s.AtMost("cli", "csv_17_digit_roundtrip", mismatches, 0);

  int bad_rows = 0;
  for (const auto& panel : ComputeFigure1()) {
    if (panel.rows.size() != 2 * kFigure1Points) ++bad_rows;
  }
  s.AtMost("cli", "figure1_row_counts", bad_rows, 0);
}

}  // namespace

std::vector<CheckRow> RunVerifySuite(const VerifyOptions& options) {
  Suite s(options);
  s.Guard("core", "core_suite", [&] { CoreChecks(s); });
  s.Guard("functions", "functions_suite", [&] { FunctionChecks(s); });
  s.Guard("operators", "operators_suite",
          [&] { OperatorChecks(s, options.seed); });
  s.Guard("solvers", "solvers_suite", [&] { SolverChecks(s); });
  s.Guard("bounds", "bounds_suite", [&] { BoundChecks(s); });
  s.Guard("oracle", "oracle_suite", [&] { OracleChecks(s); });
  s.Guard("gauges", "gauges_suite", [&] { GaugeChecks(s); });
  s.Guard("cli", "cli_suite", [&] { CliChecks(s); });
  return s.Take();
}

std::string VerifyCsv(const std::vector<CheckRow>& rows) {
  std::string out = "module,check,status,measured,threshold\n";
  for (const auto& r : rows) {
    out += CsvLine({r.module, r.check, r.pass ? "pass" : "fail",
                    FormatDouble(r.measured), FormatDouble(r.threshold)});
    out += '\n';
  }
  return out;
}

}  // namespace haraux::cli
