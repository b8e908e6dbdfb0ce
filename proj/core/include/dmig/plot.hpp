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

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "dmig/dataio.hpp"

namespace dmig::plot {

enum class Metric { mig, dmig, scc };

std::string_view to_string(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view s) noexcept;

using Range = std::pair<double, double>;

struct PlotSpec {
  Metric x = Metric::mig;
  Metric y = Metric::scc;
  std::optional<Range> x_range;  ///< auto when empty
  std::optional<Range> y_range;
  int width = 640;
  int height = 480;

  /// Rejects x == y, inverted or non-finite ranges, and tiny canvases.
  void validate() const;
};

/**
 * Scatter of one metric against another across the epochs of a series,
 * one colour per attribute. When y is dmig a dotted reference line marks
 * y = 1. Points with non-finite coordinates are left out and counted in
 * the caption. Output is deterministic for identical inputs.
 */
std::string render_scatter_svg(const io::Series& series, const PlotSpec& spec);

}  // namespace dmig::plot
