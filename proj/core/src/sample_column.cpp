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

#include "dmig/sample_column.hpp"

#include <cmath>
#include <string>

#include "dmig/errors.hpp"

namespace dmig {

std::string_view to_string(Kind kind) noexcept
{
  return kind == Kind::discrete ? "discrete" : "continuous";
}

bool all_integral(std::span<const double> values) noexcept
{
  for (double v : values) {
    if (!std::isfinite(v) || std::trunc(v) != v) return false;
  }
  return true;
}

SampleColumn::SampleColumn(std::vector<double> values, Kind kind) : values_(std::move(values)), kind_(kind)
{
  if (values_.size() < 2) {
    throw Error(ErrorCode::insufficient_samples,
                "a sample column needs at least 2 values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument, "non-finite value at sample " + std::to_string(i));
    }
    if (kind_ == Kind::discrete && std::trunc(v) != v) {
      throw Error(ErrorCode::kind_mismatch,
                  "discrete column holds non-integer code at sample " + std::to_string(i));
    }
  }
}

SampleColumn SampleColumn::inferred(std::vector<double> values)
{
  const Kind kind = all_integral(values) ? Kind::discrete : Kind::continuous;
  return {std::move(values), kind};
}

void EstimatorConfig::validate() const
{
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be >= 1, got " + std::to_string(k));
  if (!std::isfinite(jitter) || jitter < 0.0) {
    throw Error(ErrorCode::invalid_argument, "jitter must be a finite nonnegative number");
  }
}

void EstimatorConfig::validate_for(std::size_t n) const
{
  validate();
  if (static_cast<std::size_t>(k) + 1 > n) {
    throw Error(ErrorCode::insufficient_samples,
                "need more than k=" + std::to_string(k) + " samples, got " + std::to_string(n));
  }
}

}  // namespace dmig
