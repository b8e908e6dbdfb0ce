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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmig/dataset.hpp"
#include "dmig/estimation.hpp"

namespace dmig {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

/// Every estimate the gap metrics need for one dataset.
struct MIProfile {
  Matrix mi;      ///< M x D, I(a_i; z_d) clamped at zero
  Matrix mi_raw;  ///< M x D, before clamping
  std::vector<std::uint8_t> deterministic;  ///< M x D row-major, deterministic-relation diagnostic
  std::vector<double> h_marginal;           ///< H(a_i)
  Matrix h_cond;                            ///< M x M, H(a_i | a_j); diagonal unused
  std::vector<Kind> kinds;

  bool operator==(const MIProfile&) const = default;
};

enum class Flag : std::uint8_t {
  regularization_failure = 1u << 0,
  near_zero_denominator = 1u << 1,
  negative_denominator = 1u << 2,
  dmig_above_one = 1u << 3,
};

std::string_view to_string(Flag f) noexcept;
std::optional<Flag> parse_flag(std::string_view s) noexcept;

class Flags {
 public:
  static constexpr Flag all[] = {Flag::regularization_failure, Flag::near_zero_denominator,
                                 Flag::negative_denominator, Flag::dmig_above_one};

  void set(Flag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  [[nodiscard]] bool has(Flag f) const noexcept { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  [[nodiscard]] bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] std::vector<Flag> list() const;

  bool operator==(const Flags&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class Branch { regularized, unregularized };

std::string_view to_string(Branch b) noexcept;

struct MigResult {
  double mig = 0.0;
  double numerator = 0.0;  ///< I(a_i; z_map(i)) - I(a_i; z_runner_up)
  std::size_t top_dim = 0;
  std::size_t runner_up_dim = 0;
  Flags flags;
};

struct AttributeMetrics {
  std::string name;
  double mig = 0.0;
  double dmig = 0.0;
  double scc = 0.0;
  std::size_t top_dim = 0;
  std::size_t runner_up_dim = 0;
  Branch branch = Branch::unregularized;
  double denominator = 0.0;
  Flags flags;

  bool operator==(const AttributeMetrics&) const = default;
};

struct MetricReport {
  std::vector<AttributeMetrics> per_attribute;
  double mean_mig = 0.0;
  double mean_dmig = 0.0;
  EstimatorConfig config;
  std::string dataset_digest;

  bool operator==(const MetricReport&) const = default;
};

struct MetricThresholds {
  double min_entropy = 1e-9;        ///< attributes with H(a_i) at or below this are rejected
  double min_denominator = 1e-6;    ///< |denominator| below this yields a signed infinity
};

/// Estimate the full profile. threads == 0 uses the hardware concurrency;
/// the result does not depend on the thread count.
MIProfile mi_profile(const Dataset& ds, const EstimatorConfig& cfg, unsigned threads = 0);

/// Gap normalized by H(a_i), with the first term taken at map[i].
MigResult compute_mig(std::size_t i, const MIProfile& p, const std::vector<std::size_t>& map,
                      const MetricThresholds& th = {});

/// Dependency-aware gap. Fills every field except name and scc.
AttributeMetrics compute_dmig(std::size_t i, const MIProfile& p, const std::vector<std::size_t>& map,
                              const MetricThresholds& th = {});

MetricReport evaluate(const Dataset& ds, const EstimatorConfig& cfg, unsigned threads = 0,
                      const MetricThresholds& th = {});

}  // namespace dmig
