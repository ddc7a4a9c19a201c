// Copyright 2026 The sparsehoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "sparsehoa/dictionary.hpp"
#include "sparsehoa/signal.hpp"

namespace sparsehoa {

struct SolverConfig {
  int iterations = 2000;
  // Gradient step on ||x - XB||^2. Defaults to 1/(2 * layer_count); must not
  // exceed 1/layer_count. While the aliasing loss is active the step is capped
  // at 1/(2K + alias_weight * K * (K - 1)) for K layers.
  std::optional<double> step_size;
  // Initial L1 weight. Defaults to 0.1 * the largest shrinkage magnitude of
  // analyze_adjoint(x) (group norm in group mode).
  std::optional<double> alpha0;
  // Weight of the aliasing loss; 0 disables it.
  double alias_weight = 0.5;
  // Block shrinkage across channels at each (layer, frame, bin).
  bool group_sparsity = true;

  // Throws ValidationError for out-of-range values.
  void validate(std::size_t layer_count) const;
};

// Fraction of the run after which the L1 weight is exactly zero.
inline constexpr double kAlphaZeroFraction = 0.9;

// alpha0 * max(0, 1 - i / (0.9 * iterations)). Requires config.alpha0.
double alpha_at(int iteration, const SolverConfig& config);

struct TraceRecord {
  int iteration = 0;
  double rec_rms = 0.0;
  double l1 = 0.0;
  double alias = 0.0;
  double alpha = 0.0;
};

using SolverTrace = std::vector<TraceRecord>;

// Sum over layers k, channels and bins of max(0, C^2 - O^2), where C analyzes
// the synthesis of all layers shorter than k with layer k and O analyzes the
// original with layer k.
double aliasing_loss(const SparseRepresentation& rep, const MultichannelSignal& original,
                     const Dictionary& dict);

struct SolveResult {
  SparseRepresentation representation;
  SolverTrace trace;
  SolverConfig resolved;  // step_size and alpha0 filled in
};

// Proximal gradient on ||x - XB||^2 + lambda * aliasing_loss with an annealed
// L1 shrinkage step. Starts from X = 0. Throws DivergenceError on a
// non-finite loss.
SolveResult solve(const MultichannelSignal& signal, const Dictionary& dict,
                  const SolverConfig& config);

// Columns: block,iteration,rec_rms,l1,alias,alpha. One trace per block.
void write_trace_csv(const std::vector<SolverTrace>& traces, const std::filesystem::path& path);

}  // namespace sparsehoa
