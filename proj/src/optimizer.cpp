// Copyright 2026 The metavqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "metavqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace metavqe {

void OptimizerConfig::validate() const {
  if (!(gradient_tolerance > 0.0)) throw ConfigError("gradient tolerance must be > 0");
  if (!(function_tolerance > 0.0)) throw ConfigError("function tolerance must be > 0");
  if (history < 1) throw ConfigError("history must be >= 1");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < curvature &&
        curvature < 1.0)) {
    throw ConfigError("line search constants need 0 < c1 < c2 < 1");
  }
  if (max_line_search_steps < 1) throw ConfigError("line search needs >= 1 step");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kGradientConverged:
      return "gradient-converged";
    case Termination::kFunctionConverged:
      return "function-converged";
    case Termination::kMaxIterations:
      return "max-iterations";
    case Termination::kLineSearchFailure:
      return "line-search-failure";
  }
  return "?";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct Point {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> g;
};

// Wraps the objective with evaluation counting, best-point tracking and the
// non-finite abort.
class Evaluator {
 public:
  Evaluator(const Objective& objective, OptTrace& trace)
      : objective_(objective), trace_(trace) {}

  void eval(Point& p) {
    p.g.assign(p.x.size(), 0.0);
    p.f = objective_(p.x, p.g);
    ++trace_.evaluations;
    const bool finite =
        std::isfinite(p.f) &&
        std::all_of(p.g.begin(), p.g.end(), [](double v) { return std::isfinite(v); });
    if (!finite) {
      throw NonFiniteObjectiveError(
          fmt::format("objective returned a non-finite value after {} evaluations",
                      trace_.evaluations),
          trace_, best_.x.empty() ? p.x : best_.x);
    }
    if (best_.x.empty() || p.f < best_.f) best_ = p;
  }

  const Point& best() const { return best_; }

 private:
  const Objective& objective_;
  OptTrace& trace_;
  Point best_;
};

struct LineSearchResult {
  bool ok = false;
  double step = 0.0;
  Point point;
};

Point step_to(const Point& from, std::span<const double> d, double alpha) {
  Point p;
  p.x = from.x;
  for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] += alpha * d[i];
  return p;
}

// Minimiser of the cubic matching values and slopes at a and b, clamped to
// the inner 80% of the interval; bisection when the fit is unusable.
double interpolate(double a, double fa, double da, double b, double fb, double db) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double margin = 0.1 * (hi - lo);
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double t = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom != 0.0) {
      const double c = b - (b - a) * (db + d2 - d1) / denom;
      if (std::isfinite(c)) t = c;
    }
  }
  return std::clamp(t, lo + margin, hi - margin);
}

// Strong-Wolfe search along d from `start` (Nocedal & Wright, Alg. 3.5/3.6).
// On failure to meet the curvature condition, the lowest point meeting the
// sufficient-decrease condition is still returned as a success.
LineSearchResult line_search(Evaluator& ev, const Point& start,
                             std::span<const double> d, double alpha0,
                             const OptimizerConfig& cfg) {
  const double f0 = start.f;
  const double d0 = dot(start.g, d);
  const double c1 = cfg.sufficient_decrease;
  const double c2 = cfg.curvature;
  std::size_t budget = cfg.max_line_search_steps;

  LineSearchResult fallback;
  auto armijo = [&](double alpha, double f) { return f <= f0 + c1 * alpha * d0; };
  auto note = [&](double alpha, const Point& p) {
    if (p.f < f0 && armijo(alpha, p.f) &&
        (!fallback.ok || p.f < fallback.point.f)) {
      fallback = {true, alpha, p};
    }
  };

  auto zoom = [&](double lo, Point p_lo, double d_lo, double hi, double f_hi,
                  double d_hi) -> LineSearchResult {
    while (budget > 0) {
      --budget;
      const double alpha = interpolate(lo, p_lo.f, d_lo, hi, f_hi, d_hi);
      Point p = step_to(start, d, alpha);
      ev.eval(p);
      const double dp = dot(p.g, d);
      note(alpha, p);
      if (!armijo(alpha, p.f) || p.f >= p_lo.f) {
        hi = alpha;
        f_hi = p.f;
        d_hi = dp;
      } else {
        if (std::abs(dp) <= -c2 * d0) return {true, alpha, std::move(p)};
        if (dp * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = p_lo.f;
          d_hi = d_lo;
        }
        lo = alpha;
        p_lo = std::move(p);
        d_lo = dp;
      }
      if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    return fallback;
  };

  double prev_alpha = 0.0;
  Point prev = start;
  double prev_d = d0;
  double alpha = alpha0;
  for (std::size_t i = 0; budget > 0; ++i) {
    --budget;
    Point p = step_to(start, d, alpha);
    ev.eval(p);
    const double dp = dot(p.g, d);
    note(alpha, p);
    if (!armijo(alpha, p.f) || (i > 0 && p.f >= prev.f)) {
      return zoom(prev_alpha, prev, prev_d, alpha, p.f, dp);
    }
    if (std::abs(dp) <= -c2 * d0) return {true, alpha, std::move(p)};
    if (dp >= 0.0) return zoom(alpha, p, dp, prev_alpha, prev.f, prev_d);
    prev_alpha = alpha;
    prev = std::move(p);
    prev_d = dp;
    alpha *= 2.0;
  }
  return fallback;
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H g.
std::vector<double> direction(const std::deque<Correction>& hist,
                              std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> a(hist.size());
  for (std::size_t k = hist.size(); k-- > 0;) {
    a[k] = hist[k].rho * dot(hist[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= a[k] * hist[k].y[i];
  }
  if (!hist.empty()) {
    const auto& last = hist.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (auto& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < hist.size(); ++k) {
    const double b = hist[k].rho * dot(hist[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (a[k] - b) * hist[k].s[i];
  }
  for (auto& v : q) v = -v;
  return q;
}

}  // namespace

OptResult minimize(const Objective& objective, std::vector<double> x0,
                   const OptimizerConfig& config) {
  config.validate();
  for (double v : x0) {
    if (!std::isfinite(v)) throw Error("initial point is not finite");
  }
  OptResult result;
  OptTrace& trace = result.trace;
  Evaluator ev(objective, trace);

  Point cur;
  cur.x = std::move(x0);
  ev.eval(cur);
  double gnorm = norm(cur.g);
  trace.records.push_back({0, cur.f, gnorm, 0.0});

  std::deque<Correction> hist;
  bool done = gnorm <= config.gradient_tolerance;
  if (done) trace.termination = Termination::kGradientConverged;

  for (std::size_t iter = 1; !done && iter <= config.max_iterations; ++iter) {
    auto d = direction(hist, cur.g);
    if (dot(d, cur.g) >= 0.0) {
      hist.clear();
      d = direction(hist, cur.g);
    }
    double alpha0 = hist.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    auto ls = line_search(ev, cur, d, alpha0, config);
    if (!ls.ok && !hist.empty()) {
      hist.clear();
      d = direction(hist, cur.g);
      ls = line_search(ev, cur, d, std::min(1.0, 1.0 / gnorm), config);
    }
    if (!ls.ok) {
      trace.termination = Termination::kLineSearchFailure;
      done = true;
      break;
    }

    Correction c;
    c.s.resize(cur.x.size());
    c.y.resize(cur.x.size());
    for (std::size_t i = 0; i < c.s.size(); ++i) {
      c.s[i] = ls.point.x[i] - cur.x[i];
      c.y[i] = ls.point.g[i] - cur.g[i];
    }
    const double sy = dot(c.s, c.y);
    if (sy > 1e-12 * norm(c.s) * norm(c.y)) {
      c.rho = 1.0 / sy;
      hist.push_back(std::move(c));
      if (hist.size() > config.history) hist.pop_front();
    }

    const double f_prev = cur.f;
    cur = std::move(ls.point);
    gnorm = norm(cur.g);
    trace.records.push_back({iter, cur.f, gnorm, ls.step});

    if (gnorm <= config.gradient_tolerance) {
      trace.termination = Termination::kGradientConverged;
      done = true;
    } else if (f_prev - cur.f <= config.function_tolerance *
                                     std::max({1.0, std::abs(cur.f), std::abs(f_prev)})) {
      trace.termination = Termination::kFunctionConverged;
      done = true;
    }
  }
  if (!done) trace.termination = Termination::kMaxIterations;

  // Accepted points only ever decrease, so the current point is the best
  // accepted one; a line-search probe can still have been lower.
  const bool use_probe = trace.termination != Termination::kGradientConverged &&
                         ev.best().f < cur.f;
  const Point& best = use_probe ? ev.best() : cur;
  result.x = best.x;
  result.value = best.f;
  return result;
}

std::vector<double> random_init(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> out(size);
  constexpr double kScale = 0x1.0p-53;
  constexpr double kPi = std::numbers::pi;
  for (auto& v : out) {
    // Midpoint of one of 2^53 equal cells, so u is strictly inside (0, 1).
    const double u = (static_cast<double>(engine() >> 11) + 0.5) * kScale;
    v = kPi * (2.0 * u - 1.0);
    if (v <= -kPi) v = std::nextafter(-kPi, 0.0);
    if (v >= kPi) v = std::nextafter(kPi, 0.0);
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t substream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ substream);
}

void write_trace_csv(std::ostream& out, const OptTrace& trace) {
  out << "iter,objective,grad_norm,step\n";
  for (const auto& r : trace.records) {
    fmt::print(out, "{},{:.12g},{:.12g},{:.12g}\n", r.iteration, r.objective,
               r.gradient_norm, r.step);
  }
}

}  // namespace metavqe
