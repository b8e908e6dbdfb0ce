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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dmig/dataset.hpp"
#include "dmig/metrics.hpp"
#include "dmig/synthetic.hpp"

// Text formats. Every file starts with a `#format v1` line.
//
// Dataset (CSV):
//   #format v1
//   #map a_bright -> z5          optional, default identity by attribute order
//   z1,z2,...,a_bright:cont,a_depth:disc
//   0.25,-1.5,...,0.3,2
//
// Reports, series and ground-truth sidecars are JSON documents following the
// format line. Latent dimensions are 1-based in every file. Non-finite reals
// are written as the strings "+inf", "-inf" and "nan".
namespace dmig::io {

inline constexpr std::string_view kFormatLine = "#format v1";

/// Shortest decimal text that parses back to the same double; "+inf"/"-inf"/"nan" otherwise.
std::string format_real(double v);
/// Inverse of format_real. Throws parse on malformed input.
double parse_real(std::string_view text);

Dataset parse_dataset(std::istream& in, std::string_view source = "<dataset>");
Dataset read_dataset(const std::filesystem::path& path);
std::string format_dataset(const Dataset& ds);
void write_dataset(const Dataset& ds, const std::filesystem::path& path);

std::string format_report(const MetricReport& report);
MetricReport parse_report(std::string_view text, std::string_view source = "<report>");
void write_report(const MetricReport& report, const std::filesystem::path& path);
MetricReport read_report(const std::filesystem::path& path);

struct SeriesEntry {
  std::size_t epoch = 0;
  MetricReport report;

  bool operator==(const SeriesEntry&) const = default;
};
using Series = std::vector<SeriesEntry>;

/// Throws invalid_argument unless epochs are strictly increasing.
void check_series(const Series& series);
std::string format_series(const Series& series);
Series parse_series(std::string_view text, std::string_view source = "<series>");
void write_series(const Series& series, const std::filesystem::path& path);
Series read_series(const std::filesystem::path& path);

struct TruthFile {
  std::string family;
  std::size_t n = 0;
  synthetic::GroundTruth truth;

  bool operator==(const TruthFile&) const = default;
};

/// Sidecar location for a dataset: `<dataset>.truth`.
std::filesystem::path truth_path_for(const std::filesystem::path& dataset);
std::string format_truth(const TruthFile& t);
TruthFile parse_truth(std::string_view text, std::string_view source = "<truth>");
void write_truth(const TruthFile& t, const std::filesystem::path& path);
TruthFile read_truth(const std::filesystem::path& path);

/// Whole-file read with path context on failure.
std::string read_text(const std::filesystem::path& path);
/// Whole-file write with path context on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dmig::io
