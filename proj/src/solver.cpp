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

#include "sparsehoa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "sparsehoa/error.hpp"
#include "sparsehoa/mdct.hpp"
#include "sparsehoa/parallel.hpp"

namespace sparsehoa {

void SolverConfig::validate(std::size_t layer_count) const {
  if (iterations < 1) throw ValidationError("solver needs at least one iteration");
  if (step_size) {
    const double limit = 1.0 / static_cast<double>(layer_count);
    if (!(*step_size > 0.0) || *step_size > limit * (1.0 + 1e-12))
      throw ValidationError("step size must lie in (0, 1/layer_count]");
  }
  if (alpha0 && !(std::isfinite(*alpha0) && *alpha0 >= 0.0))
    throw ValidationError("alpha0 must be a finite non-negative number");
  if (!(std::isfinite(alias_weight) && alias_weight >= 0.0))
    throw ValidationError("aliasing weight must be a finite non-negative number");
}

double alpha_at(int iteration, const SolverConfig& config) {
  if (!config.alpha0) throw ValidationError("alpha_at needs a resolved alpha0");
  const double ramp = kAlphaZeroFraction * static_cast<double>(config.iterations);
  return *config.alpha0 * std::max(0.0, 1.0 - static_cast<double>(iteration) / ramp);
}

namespace {

using Buffer = std::vector<double>;

// Per-iteration quantities derived from the current representation. The
// gradient step reuses them, so they are computed once per iterate.
class Evaluator {
 public:
  Evaluator(const MultichannelSignal& original, const Dictionary& dict, bool need_alias_gradient)
      : original_(original),
        dict_(dict),
        channels_(original.channel_count()),
        length_(dict.signal_length()),
        need_alias_gradient_(need_alias_gradient) {
    const std::size_t layers = dict.layer_count();
    layer_synth_.assign(layers, std::vector<Buffer>(channels_, Buffer(length_)));
    residual_.assign(channels_, Buffer(length_));
    original_analysis_.assign(layers, std::vector<Buffer>(channels_));
    short_analysis_.assign(layers, std::vector<Buffer>(channels_));
    for (std::size_t k = 1; k < layers; ++k) {
      const auto& spec = dict.layers()[k];
      const std::size_t size = spec.frames_for(length_) * spec.bins();
      parallel_for(channels_, [&](std::size_t c) {
        original_analysis_[k][c].resize(size);
        mdct_analyze_into(original.channel(c), spec, original_analysis_[k][c]);
        short_analysis_[k][c].resize(size);
      });
    }
  }

  struct Losses {
    double reconstruction = 0.0;  // sum of squared residuals
    double alias = 0.0;
  };

  Losses evaluate(const SparseRepresentation& rep) {
    const std::size_t layers = dict_.layer_count();
    std::vector<double> rec(channels_, 0.0);
    std::vector<double> alias(channels_, 0.0);
    parallel_for(channels_, [&](std::size_t c) {
      for (std::size_t l = 0; l < layers; ++l) {
        Buffer& y = layer_synth_[l][c];
        std::fill(y.begin(), y.end(), 0.0);
        mdct_synthesize_add(rep.grid(l, c).values, dict_.layers()[l], y);
      }
      // Prefix sums over layers give the short-layer syntheses.
      Buffer& acc = residual_[c];
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t k = 0; k < layers; ++k) {
        if (k > 0) {
          Buffer& ca = short_analysis_[k][c];
          mdct_analyze_into(acc, dict_.layers()[k], ca);
          const Buffer& oa = original_analysis_[k][c];
          for (std::size_t i = 0; i < ca.size(); ++i) {
            const double excess = ca[i] * ca[i] - oa[i] * oa[i];
            if (excess > 0.0) alias[c] += excess;
          }
        }
        const Buffer& y = layer_synth_[k][c];
        for (std::size_t n = 0; n < length_; ++n) acc[n] += y[n];
      }
      auto x = original_.channel(c);
      double e = 0.0;
      for (std::size_t n = 0; n < length_; ++n) {
        acc[n] = x[n] - acc[n];
        e += acc[n] * acc[n];
      }
      rec[c] = e;
    });
    Losses out;
    for (std::size_t c = 0; c < channels_; ++c) {
      out.reconstruction += rec[c];
      out.alias += alias[c];
    }
    return out;
  }

  // rep <- rep - step * grad(||x - XB||^2 + lambda * alias) at the last
  // evaluated iterate.
  void gradient_step(SparseRepresentation& rep, double step, double lambda) {
    const std::size_t layers = dict_.layer_count();
    const bool with_alias = lambda > 0.0 && need_alias_gradient_;
    parallel_for(channels_, [&](std::size_t c) {
      // target_j = 2 r - lambda * sum_{k > j} synth_k(2 C_k [C_k^2 > O_k^2])
      Buffer hinge_back(length_, 0.0);
      Buffer target(length_);
      Buffer grad;
      for (std::size_t jj = layers; jj-- > 0;) {
        for (std::size_t n = 0; n < length_; ++n)
          target[n] = 2.0 * residual_[c][n] - lambda * hinge_back[n];
        auto& values = rep.grid(jj, c).values;
        grad.resize(values.size());
        mdct_analyze_into(target, dict_.layers()[jj], grad);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += step * grad[i];

        if (with_alias && jj > 0) {
          // Layer jj's hinge gradient feeds every shorter layer.
          Buffer& ca = short_analysis_[jj][c];
          const Buffer& oa = original_analysis_[jj][c];
          Buffer g(ca.size());
          for (std::size_t i = 0; i < ca.size(); ++i)
            g[i] = (ca[i] * ca[i] > oa[i] * oa[i]) ? 2.0 * ca[i] : 0.0;
          mdct_synthesize_add(g, dict_.layers()[jj], hinge_back);
        }
      }
    });
  }

 private:
  const MultichannelSignal& original_;
  const Dictionary& dict_;
  std::size_t channels_;
  std::size_t length_;
  bool need_alias_gradient_;
  std::vector<std::vector<Buffer>> layer_synth_;        // [layer][channel]
  std::vector<Buffer> residual_;                        // [channel]
  std::vector<std::vector<Buffer>> original_analysis_;  // O_k, k >= 1
  std::vector<std::vector<Buffer>> short_analysis_;     // C_k, k >= 1
};

void shrink(SparseRepresentation& rep, double threshold, bool group) {
  if (threshold <= 0.0) return;
  const std::size_t channels = rep.channel_count();
  for (std::size_t l = 0; l < rep.layer_count(); ++l) {
    const std::size_t size = rep.grid(l, 0).values.size();
    if (!group || channels == 1) {
      for (std::size_t c = 0; c < channels; ++c)
        for (double& v : rep.grid(l, c).values) {
          const double mag = std::abs(v) - threshold;
          v = mag > 0.0 ? std::copysign(mag, v) : 0.0;
        }
      continue;
    }
    for (std::size_t i = 0; i < size; ++i) {
      double norm2 = 0.0;
      for (std::size_t c = 0; c < channels; ++c) {
        const double v = rep.grid(l, c).values[i];
        norm2 += v * v;
      }
      const double norm = std::sqrt(norm2);
      const double gain = norm > threshold ? 1.0 - threshold / norm : 0.0;
      for (std::size_t c = 0; c < channels; ++c) rep.grid(l, c).values[i] *= gain;
    }
  }
}

double max_shrink_magnitude(const SparseRepresentation& rep, bool group) {
  double best = 0.0;
  const std::size_t channels = rep.channel_count();
  for (std::size_t l = 0; l < rep.layer_count(); ++l) {
    const std::size_t size = rep.grid(l, 0).values.size();
    for (std::size_t i = 0; i < size; ++i) {
      if (group) {
        double norm2 = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          const double v = rep.grid(l, c).values[i];
          norm2 += v * v;
        }
        best = std::max(best, std::sqrt(norm2));
      } else {
        for (std::size_t c = 0; c < channels; ++c)
          best = std::max(best, std::abs(rep.grid(l, c).values[i]));
      }
    }
  }
  return best;
}

// NaN-propagating variant of l1_norm so divergence is reported as such.
double l1_unchecked(const SparseRepresentation& rep) {
  double sum = 0.0;
  for (std::size_t l = 0; l < rep.layer_count(); ++l)
    for (std::size_t c = 0; c < rep.channel_count(); ++c)
      for (double v : rep.grid(l, c).values) sum += std::abs(v);
  return sum;
}

}  // namespace

double aliasing_loss(const SparseRepresentation& rep, const MultichannelSignal& original,
                     const Dictionary& dict) {
  rep.check_shape(dict, original.channel_count());
  if (original.length() != dict.signal_length())
    throw DimensionError("original length does not match the dictionary");
  Evaluator eval(original, dict, false);
  return eval.evaluate(rep).alias;
}

SolveResult solve(const MultichannelSignal& signal, const Dictionary& dict,
                  const SolverConfig& config) {
  config.validate(dict.layer_count());
  if (signal.length() != dict.signal_length())
    throw DimensionError("signal has " + std::to_string(signal.length()) +
                         " samples, dictionary expects " + std::to_string(dict.signal_length()));
  if (!signal.all_finite()) throw ValidationError("solver input contains non-finite samples");

  SolveResult result;
  result.resolved = config;
  const double layers = static_cast<double>(dict.layer_count());
  if (!result.resolved.step_size) result.resolved.step_size = 1.0 / (2.0 * layers);
  if (!result.resolved.alpha0) {
    result.resolved.alpha0 =
        0.1 * max_shrink_magnitude(analyze_adjoint(signal, dict), config.group_sparsity);
  }
  const SolverConfig& cfg = result.resolved;
  const double step = *cfg.step_size;
  // Each aliasing term analyzes a sum of k unit-norm layer syntheses, so the
  // hinge adds at most lambda * K * (K - 1) to the Lipschitz constant 2K of
  // the reconstruction gradient.
  const double alias_step =
      std::min(step, 1.0 / (2.0 * layers + cfg.alias_weight * layers * (layers - 1.0)));
  const double sample_count = static_cast<double>(signal.channel_count() * signal.length());

  SparseRepresentation rep(dict, signal.channel_count());
  Evaluator eval(signal, dict, cfg.alias_weight > 0.0);
  eval.evaluate(rep);
  result.trace.reserve(static_cast<std::size_t>(cfg.iterations));

  for (int i = 0; i < cfg.iterations; ++i) {
    const double alpha = alpha_at(i, cfg);
    // Once the L1 weight has reached zero the run only polishes reconstruction.
    const bool alias_on = alpha > 0.0 && cfg.alias_weight > 0.0;
    const double eta = alias_on ? alias_step : step;
    eval.gradient_step(rep, eta, alias_on ? cfg.alias_weight : 0.0);
    shrink(rep, eta * alpha, cfg.group_sparsity);

    const auto losses = eval.evaluate(rep);
    TraceRecord rec;
    rec.iteration = i + 1;
    rec.rec_rms = std::sqrt(losses.reconstruction / sample_count);
    rec.l1 = l1_unchecked(rep);
    rec.alias = losses.alias;
    rec.alpha = alpha;
    if (!std::isfinite(rec.rec_rms) || !std::isfinite(rec.l1) || !std::isfinite(rec.alias))
      throw DivergenceError("solver diverged at iteration " + std::to_string(rec.iteration),
                            rec.iteration);
    result.trace.push_back(rec);
  }
  result.representation = std::move(rep);
  return result;
}

void write_trace_csv(const std::vector<SolverTrace>& traces, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << "block,iteration,rec_rms,l1,alias,alpha\n";
  char line[160];
  for (std::size_t b = 0; b < traces.size(); ++b) {
    for (const auto& r : traces[b]) {
      std::snprintf(line, sizeof line, "%zu,%d,%.17g,%.17g,%.17g,%.17g\n", b, r.iteration,
                    r.rec_rms, r.l1, r.alias, r.alpha);
      out << line;
    }
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace sparsehoa
