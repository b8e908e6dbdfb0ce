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
#include <string_view>
#include <vector>

#include "dmig/dataset.hpp"
#include "dmig/metrics.hpp"

// Generators whose entropies and mutual informations are known in closed
// form. Every generator produces two attributes a_1, a_2 and regularizes
// them with latent dimensions z_1, z_2; extra latent dimensions up to
// d_total are independent noise.
namespace dmig::synthetic {

enum class Family { gaussian_pair, discrete_joint, trajectory };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view s) noexcept;

struct SyntheticSpec {
  Family family = Family::gaussian_pair;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double rho = 0.0;                      ///< gaussian_pair, trajectory
  std::vector<std::vector<double>> pmf;  ///< discrete_joint: pmf[u][v] = P(a_1 = u, a_2 = v)
  std::vector<double> noise_schedule;    ///< trajectory: encoder noise per epoch
  std::size_t d_total = 2;

  /// Throws invalid_argument on any invariant violation.
  void validate() const;
};

struct GroundTruth {
  std::vector<double> h_a;  ///< H(a_1), H(a_2)
  double i_a1a2 = 0.0;
  Matrix h_cond;  ///< 2 x 2, H(a_i | a_j)
  /// DMIG under exact encoding, where that is finite and well defined.
  std::optional<double> ideal_dmig;

  bool operator==(const GroundTruth&) const = default;
};

struct Sample {
  Dataset dataset;
  GroundTruth truth;
};

struct Epoch {
  std::size_t index = 0;
  Dataset dataset;
};

GroundTruth gaussian_truth(double rho);
GroundTruth discrete_truth(const std::vector<std::vector<double>>& pmf);

/// Standard bivariate normal attributes with correlation rho; z_i = a_i.
Sample gen_gaussian_pair(const SyntheticSpec& spec);

/// Attributes drawn from pmf; z_i = a_i; extra dimensions are fair binary codes.
Sample gen_discrete_joint(const SyntheticSpec& spec);

/// Fixed gaussian_pair attributes; epoch t encodes z_i = a_i + sigma_t * noise.
std::vector<Epoch> gen_trajectory(const SyntheticSpec& spec);

/// `count` values decreasing geometrically from `from` to `to`.
std::vector<double> geometric_schedule(double from, double to, std::size_t count);

}  // namespace dmig::synthetic
