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

#include "haraux_cli/cli.h"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <utility>

#include "haraux/bounds.h"
#include "haraux/gauges.h"
#include "haraux/oracle.h"
#include "haraux_cli/csv.h"
#include "haraux_cli/figure1.h"
#include "haraux_cli/svg.h"
#include "haraux_cli/verify.h"

namespace haraux::cli {
namespace {

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double ParseDouble(std::string_view raw, const std::string& what) {
  const std::string s = Trim(raw);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw UsageError(what + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

Vec ParseCoords(std::string_view text, const std::string& what) {
  std::vector<double> coords;
  for (const auto& part : Split(text, ',')) {
    coords.push_back(ParseDouble(part, what));
  }
  return Vec(std::move(coords));
}

std::vector<double> ParseAxis(std::string_view text) {
  const auto parts = Split(text, ':');
  if (parts.size() == 1) return {ParseDouble(parts[0], "grid")};
  if (parts.size() != 3) {
    throw UsageError("grid: axis must be 'lo:hi:n' or a single value");
  }
  const double lo = ParseDouble(parts[0], "grid");
  const double hi = ParseDouble(parts[1], "grid");
  const double n_raw = ParseDouble(parts[2], "grid");
  if (n_raw < 1 || n_raw != static_cast<double>(static_cast<long>(n_raw))) {
    throw UsageError("grid: point count must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(n_raw);
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = lo + ((hi - lo) * static_cast<double>(k)) /
                      static_cast<double>(n - 1);
  }
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> Gammas(const RunConfig& cfg) {
  std::vector<double> g = cfg.gammas.empty() ? std::vector<double>{1.0}
                                             : cfg.gammas;
  for (double v : g) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw UsageError("gamma must be finite and > 0");
    }
  }
  return g;
}

std::vector<BoundMethod> Methods(const RunConfig& cfg) {
  if (cfg.methods.empty()) return {BoundMethod::kPairing};
  std::vector<BoundMethod> out;
  for (const auto& m : cfg.methods) out.push_back(ParseMethod(Trim(m)));
  return out;
}

struct BoundRow {
  DualPair p;
  double gamma;
  BoundMethod method;
  double bound;
  std::optional<double> exact;
  double residual;
};

double Residual(const BoundResult& r) {
  const auto it = r.diagnostics.find("residual");
  return it == r.diagnostics.end() ? 0.0 : it->second;
}

// Applies `fn` to every point on a pool of threads and concatenates the
// results in point order, so the output does not depend on scheduling. The
// exception of the lowest failing index is rethrown.
template <typename Row>
std::vector<Row> ParallelMap(
    const std::vector<DualPair>& points,
    const std::function<std::vector<Row>(const DualPair&)>& fn) {
  const std::size_t n = points.size();
  std::vector<std::vector<Row>> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(
      n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    rows.insert(rows.end(), out[i].begin(), out[i].end());
  }
  return rows;
}

// Evaluates every (point, gamma, method) combination of a bound/sweep run.
std::vector<BoundRow> EvaluateBounds(const RunConfig& cfg,
                                     const std::vector<DualPair>& points) {
  if (points.empty()) throw UsageError("no evaluation points given");
  if (cfg.phi.empty() == cfg.op_a.empty()) {
    throw UsageError("exactly one of --phi and --op-a is required");
  }
  if (!cfg.f.empty() && !cfg.op_w.empty()) {
    throw UsageError("--f and --op-w are mutually exclusive");
  }
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) throw UsageError("points differ in dimension");
  }
  const auto gammas = Gammas(cfg);
  const auto methods = Methods(cfg);

  std::optional<SeparableFunction> f;
  if (!cfg.f.empty()) f = AsSeparable(FunctionByName(cfg.f, dim));

  std::function<std::vector<BoundRow>(const DualPair&)> at_point;
  if (!cfg.phi.empty()) {
    if (!cfg.op_w.empty()) {
      throw UsageError("--op-w applies to --op-a; use --f with --phi");
    }
    const ConvexFunction phi = FunctionByName(cfg.phi, dim);
    FyOptions options{.f = f};
    if (!f) options.modulus = UniformModulus::Strong(1.0);
    at_point = [=](const DualPair& p) {
      std::vector<BoundRow> rows;
      const XReal exact = FenchelYoung(phi, p);
      for (double g : gammas) {
        for (BoundMethod m : methods) {
          const BoundResult r = FyBoundDispatch(phi, p, g, m, options);
          rows.push_back({p, g, m, r.value, exact.value(), Residual(r)});
        }
      }
      return rows;
    };
    return ParallelMap(points, at_point);
  }

  const MonotoneOperator a = ParseOperator(cfg.op_a, dim);
  const bool identity_kernel = !f && cfg.op_w.empty();
  const MonotoneOperator w =
      f ? MonotoneOperator::Gradient(*f)
        : (identity_kernel ? MonotoneOperator::Identity(dim)
                           : ParseOperator(cfg.op_w, dim));
  for (BoundMethod m : methods) {
    if ((m == BoundMethod::kModulus || m == BoundMethod::kStrong) &&
        !identity_kernel) {
      throw UsageError(MethodName(m) +
                       ": no modulus is known for the chosen kernel");
    }
    if (m == BoundMethod::kBregman && !f) {
      throw UsageError("bregman: requires --f");
    }
    if (m != BoundMethod::kPairing && m != BoundMethod::kModulus &&
        m != BoundMethod::kStrong && m != BoundMethod::kBregman &&
        m != BoundMethod::kCarlierHaraux) {
      throw UsageError(MethodName(m) +
                       ": needs a function, use --phi instead of --op-a");
    }
  }
  at_point = [=](const DualPair& p) {
    std::vector<BoundRow> rows;
    for (double g : gammas) {
      for (BoundMethod m : methods) {
        BoundResult r;
        switch (m) {
          case BoundMethod::kModulus:
            r = BoundModulus(w, UniformModulus::Strong(1.0), a, p, g);
            break;
          case BoundMethod::kStrong:
            r = BoundStrong(w, 1.0, a, p, g);
            break;
          case BoundMethod::kBregman:
            r = BoundBregman(*f, a, p, g);
            break;
          case BoundMethod::kCarlierHaraux:
            r = BoundCarlierHaraux(a, p, g);
            break;
          default:
            r = BoundPairing(w, a, p, g);
            break;
        }
        rows.push_back({p, g, m, r.value, std::nullopt, Residual(r)});
      }
    }
    return rows;
  };
  return ParallelMap(points, at_point);
}

std::string BoundCsv(const std::vector<BoundRow>& rows) {
  std::string out = "x,u_star,gamma,method,bound,exact,residual\n";
  for (const auto& r : rows) {
    out += CsvLine({FormatVec(r.p.x()), FormatVec(r.p.u_star()),
                    FormatDouble(r.gamma), MethodName(r.method),
                    FormatDouble(r.bound),
                    r.exact ? FormatDouble(*r.exact) : "",
                    FormatDouble(r.residual)});
    out += '\n';
  }
  return out;
}

std::string BoundSvg(const std::vector<BoundRow>& rows) {
  std::map<std::string, Series> series;
  std::map<std::string, double> next_index;
  for (const auto& r : rows) {
    const std::string key =
        MethodName(r.method) + " gamma=" + FormatDouble(r.gamma);
    auto& s = series[key];
    s.name = key;
    s.x.push_back(next_index[key]++);
    s.y.push_back(r.bound);
    if (r.exact) {
      auto& e = series["exact"];
      if (e.x.size() < s.x.size()) {
        e.name = "exact L";
        e.x.push_back(s.x.back());
        e.y.push_back(*r.exact);
      }
    }
  }
  Chart chart{.title = "bounds over the grid", .x_label = "grid index"};
  for (auto& [key, s] : series) chart.series.push_back(std::move(s));
  return RenderSvg("haraux sweep", {chart});
}

int RunBoundLike(const RunConfig& cfg, bool sweep, std::ostream& out) {
  std::vector<DualPair> points;
  if (sweep) {
    if (cfg.grid.empty()) throw UsageError("sweep: --grid is required");
    points = ParseGrid(cfg.grid);
  } else if (!cfg.grid.empty()) {
    throw UsageError("bound: use --point; --grid belongs to sweep");
  }
  for (const auto& t : cfg.points) points.push_back(ParsePoint(t));
  const auto rows = EvaluateBounds(cfg, points);
  if (cfg.format != "csv" && !(sweep && cfg.format == "svg")) {
    throw UsageError("unsupported --format '" + cfg.format + "'");
  }
  Output o(cfg.out, out);
  o.stream() << (cfg.format == "svg" ? BoundSvg(rows) : BoundCsv(rows));
  return kExitOk;
}

int RunVerify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = RunVerifySuite(
      {.seed = ResolveSeed(cfg.seed), .corrupt_check = cfg.corrupt_check});
  if (!cfg.corrupt_check.empty()) {
    bool known = false;
    for (const auto& r : rows) known = known || r.check == cfg.corrupt_check;
    if (!known) {
      throw UsageError("--corrupt-tolerance: unknown check '" +
                       cfg.corrupt_check + "'");
    }
  }
  Output o(cfg.out, out);
  o.stream() << VerifyCsv(rows);
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.pass) {
      ++failed;
      err << "verify: " << r.module << "/" << r.check << " failed (measured "
          << FormatDouble(r.measured) << ", threshold "
          << FormatDouble(r.threshold) << ")"
          << (r.note.empty() ? "" : ": " + r.note) << '\n';
    }
  }
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int RunFigure1(const RunConfig& cfg, std::ostream& out) {
  const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("figure1: cannot create '" + dir.string() + "'");
  out << "panel,rows,csv,svg\n";
  for (const auto& panel : ComputeFigure1()) {
    const auto csv = dir / ("figure1_" + panel.id + ".csv");
    const auto svg = dir / ("figure1_" + panel.id + ".svg");
    std::ofstream(csv) << Figure1Csv(panel);
    std::ofstream(svg) << Figure1Svg(panel);
    if (!std::filesystem::exists(csv) || !std::filesystem::exists(svg)) {
      throw UsageError("figure1: cannot write into '" + dir.string() + "'");
    }
    out << CsvLine({panel.id, std::to_string(panel.rows.size()),
                    csv.string(), svg.string()})
        << '\n';
  }
  return kExitOk;
}

int RunGauge(const RunConfig& cfg, std::ostream& out) {
  if (cfg.matrix.empty()) throw UsageError("gauge: --matrix is required");
  if (cfg.op_c.empty() || cfg.op_dinv.empty()) {
    throw UsageError("gauge: --op-c and --op-dinv are required");
  }
  if (cfg.points.empty()) throw UsageError("gauge: --point \"x;y*\" required");
  const auto gammas = Gammas(cfg);
  if (gammas.size() != 1) throw UsageError("gauge: give a single --gamma");
  const Matrix l = ReadMatrixFile(cfg.matrix);
  const std::size_t n = l.cols(), m = l.rows();
  KtInstance inst{
      .c = ParseOperator(cfg.op_c, n),
      .d_inv = ParseOperator(cfg.op_dinv, m),
      .l = l,
      .gamma = gammas.front(),
      .w_x = cfg.op_wx.empty() ? MonotoneOperator::Identity(n)
                               : ParseOperator(cfg.op_wx, n),
      .w_ystar = cfg.op_wy.empty() ? MonotoneOperator::Identity(m)
                                   : ParseOperator(cfg.op_wy, m),
  };
  std::string text = "x,y_star,gauge_value,component_primal,component_dual\n";
  for (const auto& t : cfg.points) {
    const auto parts = Split(t, ';');
    if (parts.size() != 2) throw UsageError("gauge: point must be 'x;y*'");
    const Vec x = ParseCoords(parts[0], "point");
    const Vec y = ParseCoords(parts[1], "point");
    if (x.dim() != n || y.dim() != m) {
      throw UsageError("gauge: point dimensions do not match the matrix");
    }
    const BoundResult r = KtGaugeBound(inst, x, y);
    text += CsvLine({FormatVec(x), FormatVec(y), FormatDouble(r.value),
                     FormatDouble(r.diagnostics.at("component_primal")),
                     FormatDouble(r.diagnostics.at("component_dual"))});
    text += '\n';
  }
  Output o(cfg.out, out);
  o.stream() << text;
  return kExitOk;
}

}  // namespace

DualPair ParsePoint(const std::string& text) {
  const auto parts = Split(text, ';');
  if (parts.size() != 2) {
    throw UsageError("point must look like 'x1,x2;u1,u2', got '" + text + "'");
  }
  Vec x = ParseCoords(parts[0], "point");
  Vec u = ParseCoords(parts[1], "point");
  if (x.dim() != u.dim()) {
    throw UsageError("point: x and u* differ in dimension");
  }
  return DualPair(std::move(x), std::move(u));
}

std::vector<DualPair> ParseGrid(const std::string& text) {
  const auto parts = Split(text, ';');
  if (parts.size() != 2) {
    throw UsageError("grid must look like 'lo:hi:n;lo:hi:m'");
  }
  const auto xs = ParseAxis(parts[0]);
  const auto us = ParseAxis(parts[1]);
  std::vector<DualPair> out;
  out.reserve(xs.size() * us.size());
  for (double x : xs) {
    for (double u : us) out.emplace_back(Vec{x}, Vec{u});
  }
  return out;
}

Matrix ReadMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read matrix file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields(t);
    std::vector<double> row;
    std::string token;
    while (fields >> token) row.push_back(ParseDouble(token, path));
    rows.push_back(std::move(row));
  }
  return Matrix::FromRows(rows);
}

MonotoneOperator ParseOperator(const std::string& text, std::size_t dim) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "identity" && arg.empty()) return MonotoneOperator::Identity(dim);
  if (kind == "grad") {
    return MonotoneOperator::Gradient(AsSeparable(FunctionByName(arg, dim)));
  }
  if (kind == "subdiff") {
    return MonotoneOperator::Subdifferential(
        AsSeparable(FunctionByName(arg, dim)));
  }
  if (kind == "affine") {
    const Matrix raw = ReadMatrixFile(arg);
    if (raw.cols() != dim || (raw.rows() != dim && raw.rows() != dim + 1)) {
      throw UsageError("affine: expected " + std::to_string(dim) +
                       " columns and " + std::to_string(dim) + " or " +
                       std::to_string(dim + 1) + " rows in '" + arg + "'");
    }
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = raw(i, j);
    }
    const Vec offset = raw.rows() == dim + 1
                           ? Vec::Generate(dim, [&](std::size_t j) {
                               return raw(dim, j);
                             })
                           : Vec::Zero(dim);
    return MonotoneOperator::Affine(m, offset);
  }
  if (kind == "joca16") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) {
      throw UsageError("joca16: expected 'joca16:<beta>,<psi>'");
    }
    if (dim != 2) throw UsageError("joca16: the operator lives on R^2");
    return MonotoneOperator::Joca16(ParseDouble(arg.substr(0, comma), "beta"),
                                    ScalarByName(arg.substr(comma + 1)));
  }
  if (kind == "skew") {
    const Matrix l = ReadMatrixFile(arg);
    if (l.rows() + l.cols() != dim) {
      throw UsageError("skew: matrix shape does not match dimension " +
                       std::to_string(dim));
    }
    return MonotoneOperator::Skew(l);
  }
  throw UsageError("unknown operator '" + text + "'");
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("HARAUX_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (errno != 0 || *end != '\0' || *env == '-') {
    throw UsageError(std::string("HARAUX_SEED: cannot parse '") + env + "'");
  }
  return static_cast<std::uint64_t>(v);
}

int RunCommand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "bound") return RunBoundLike(cfg, false, out);
    if (cfg.command == "sweep") return RunBoundLike(cfg, true, out);
    if (cfg.command == "verify") return RunVerify(cfg, out, err);
    if (cfg.command == "figure1") return RunFigure1(cfg, out);
    if (cfg.command == "gauge") return RunGauge(cfg, out);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NoSolutionError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const ConvergenceError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const ConsistencyError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace haraux::cli
