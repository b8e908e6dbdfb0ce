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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dmig {

enum class Kind { continuous, discrete };

std::string_view to_string(Kind kind) noexcept;

/// True when every value is a finite integer; used to classify latent columns.
bool all_integral(std::span<const double> values) noexcept;

/**
 * N realized samples of one scalar variable.
 *
 * Construction enforces N >= 2, finiteness, and (for discrete columns)
 * integer-valued category codes. Instances are immutable afterwards.
 */
class SampleColumn {
 public:
  SampleColumn(std::vector<double> values, Kind kind);

  static SampleColumn continuous(std::vector<double> values) { return {std::move(values), Kind::continuous}; }
  static SampleColumn discrete(std::vector<double> values) { return {std::move(values), Kind::discrete}; }

  /// Discrete if all values are integral, continuous otherwise.
  static SampleColumn inferred(std::vector<double> values);

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool is_discrete() const noexcept { return kind_ == Kind::discrete; }

  bool operator==(const SampleColumn&) const = default;

 private:
  std::vector<double> values_;
  Kind kind_;
};

/// Knobs shared by the kNN estimators. Entropies and MI are always in nats.
struct EstimatorConfig {
  int k = 3;
  /// Tie-breaking noise amplitude as a fraction of the column's standard deviation.
  double jitter = 1e-10;
  std::uint64_t seed = 0;

  /// Throws invalid_argument for k < 1 or a negative/non-finite jitter.
  void validate() const;
  /// validate() plus the k <= n - 1 requirement.
  void validate_for(std::size_t n) const;

  bool operator==(const EstimatorConfig&) const = default;
};

inline constexpr std::string_view kUnit = "nats";

}  // namespace dmig
