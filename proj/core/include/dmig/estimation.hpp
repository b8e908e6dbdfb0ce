/*
 * Copyright (c) 2026, The dmig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

#include "dmig/sample_column.hpp"

// Entropy, mutual information, conditional entropy and rank correlation
// estimators. All results are in nats. Every function is a pure function of
// its arguments; randomness (tie-breaking jitter) derives from cfg.seed and
// the column contents only, so results do not depend on call order.
namespace dmig {

/// Plug-in Shannon entropy of the empirical category frequencies.
double entropy_discrete(const SampleColumn& a);

/// Kozachenko-Leonenko kNN differential entropy (1-D). May be negative.
double entropy_continuous(const SampleColumn& a, const EstimatorConfig& cfg);

/// Dispatches on a.kind().
double entropy(const SampleColumn& a, const EstimatorConfig& cfg);

struct MiEstimate {
  double value = 0.0;  ///< raw clamped at zero; what metrics consume
  double raw = 0.0;    ///< estimator output before clamping
  /// Set when the k-th neighbour distance underflowed or every sample sat at
  /// the minimal neighbour counts, i.e. one column determines the other and
  /// the estimate only reflects the sample size.
  bool deterministic_relation = false;

  bool operator==(const MiEstimate&) const = default;
};

/**
 * KSG (type 1) mutual information with max-norm neighbourhoods.
 *
 * Both columns are jittered with seeded uniform noise of half-width
 * cfg.jitter * stddev before the neighbour search; discrete columns go
 * through the same path. mi_continuous(x, y) == mi_continuous(y, x) bit for bit.
 */
MiEstimate mi_continuous(const SampleColumn& x, const SampleColumn& y, const EstimatorConfig& cfg);

/// Plug-in MI from the empirical joint table. Always >= 0.
double mi_discrete(const SampleColumn& x, const SampleColumn& y);

/// Plug-in when both columns are discrete, KSG otherwise.
MiEstimate mutual_information(const SampleColumn& x, const SampleColumn& y, const EstimatorConfig& cfg);

/// H(a|b). Exact H(a,b) - H(b) for discrete pairs, H(a) - I(a;b) otherwise.
double conditional_entropy(const SampleColumn& a, const SampleColumn& b, const EstimatorConfig& cfg);

/// Spearman rank correlation with average ranks for ties.
double spearman(const SampleColumn& x, const SampleColumn& y);

/// Fractional (1-based, tie-averaged) ranks.
std::vector<double> fractional_ranks(std::span<const double> values);

/// The values used by the kNN estimators after tie-breaking noise.
std::vector<double> jittered_values(const SampleColumn& a, const EstimatorConfig& cfg);

}  // namespace dmig
