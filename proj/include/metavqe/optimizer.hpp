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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "metavqe/error.hpp"

namespace metavqe {

struct OptimizerConfig {
  std::size_t max_iterations = 1000;
  double gradient_tolerance = 1e-6;
  /// Stop when the accepted decrease is below this fraction of max(1, |f|).
  double function_tolerance = 1e-10;
  /// Correction pairs kept by the limited-memory update.
  std::size_t history = 10;
  double sufficient_decrease = 1e-4;
  double curvature = 0.9;
  std::size_t max_line_search_steps = 40;
  /// Only used for random initial points.
  std::uint64_t rng_seed = 1;

  /// Throws ConfigError for non-positive tolerances, zero history, or line
  /// search constants outside 0 < c1 < c2 < 1.
  void validate() const;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

enum class Termination {
  kGradientConverged,
  kFunctionConverged,
  kMaxIterations,
  kLineSearchFailure,
};

std::string_view to_string(Termination t);

struct TraceRecord {
  std::size_t iteration;
  double objective;
  double gradient_norm;
  double step;
};

struct OptTrace {
  /// Record 0 is the starting point; one record per accepted step after that.
  std::vector<TraceRecord> records;
  Termination termination = Termination::kMaxIterations;
  std::size_t evaluations = 0;
};

struct OptResult {
  std::vector<double> x;
  double value = 0.0;
  OptTrace trace;
};

/// Returns f(x) and writes the gradient into `grad` (same length as x).
using Objective = std::function<double(std::span<const double> x,
                                       std::span<double> grad)>;

/// Raised when the objective returns NaN or Inf. Carries the trace so far and
/// the best point seen before the failure.
class NonFiniteObjectiveError : public Error {
 public:
  NonFiniteObjectiveError(const std::string& what, OptTrace trace,
                          std::vector<double> best_x)
      : Error(what), trace_(std::move(trace)), best_x_(std::move(best_x)) {}

  const OptTrace& trace() const { return trace_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  OptTrace trace_;
  std::vector<double> best_x_;
};

/**
 * Limited-memory BFGS with a strong-Wolfe line search.
 *
 * Only steps that decrease the objective are accepted, so the objective
 * column of the trace is non-increasing. If the line search cannot find a
 * decrease even along the steepest-descent direction, the best point seen is
 * returned with Termination::kLineSearchFailure.
 */
OptResult minimize(const Objective& objective, std::vector<double> x0,
                   const OptimizerConfig& config = {});

/**
 * `size` draws from uniform(-pi, pi), open at both ends, from a 64-bit
 * Mersenne Twister (std::mt19937_64) seeded with `seed`. Raw 64-bit outputs
 * are mapped to doubles without std::uniform_real_distribution, so the vector
 * is identical on every platform.
 */
std::vector<double> random_init(std::size_t size, std::uint64_t seed);

/// Deterministic seed for a (base, stream, substream) triple (SplitMix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t substream = 0);

/// `iter,objective,grad_norm,step` with 12 significant digits.
void write_trace_csv(std::ostream& out, const OptTrace& trace);

}  // namespace metavqe
