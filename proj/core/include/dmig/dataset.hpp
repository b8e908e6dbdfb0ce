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
#include <optional>
#include <string>
#include <vector>

#include "dmig/sample_column.hpp"

namespace dmig {

/**
 * N x D latent codes paired with N x M attribute samples.
 *
 * Latent columns are classified on construction: a column whose values are
 * all integral is treated as discrete (plug-in estimators apply), anything
 * else as continuous. Attribute i is regularized by latent dimension
 * regularized_dim(i); indices are 0-based throughout the API.
 */
class Dataset {
 public:
  /// An empty map means identity (attribute i -> latent i).
  Dataset(std::vector<std::vector<double>> latents, std::vector<SampleColumn> attributes,
          std::vector<std::string> names, std::vector<std::size_t> regularized_map = {});

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t latent_dims() const noexcept { return latents_.size(); }
  [[nodiscard]] std::size_t attribute_count() const noexcept { return attributes_.size(); }

  [[nodiscard]] const SampleColumn& latent(std::size_t d) const { return latents_.at(d); }
  [[nodiscard]] const SampleColumn& attribute(std::size_t i) const { return attributes_.at(i); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] std::size_t regularized_dim(std::size_t i) const { return map_.at(i); }
  [[nodiscard]] const std::vector<std::size_t>& regularized_map() const noexcept { return map_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  /// The attribute regularized by latent dimension d, if any.
  [[nodiscard]] std::optional<std::size_t> attribute_for_dim(std::size_t d) const;

  /// Hex FNV-1a digest over shape, kinds, values, names and map.
  [[nodiscard]] std::string digest() const;

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SampleColumn> latents_;
  std::vector<SampleColumn> attributes_;
  std::vector<std::string> names_;
  std::vector<std::size_t> map_;
};

}  // namespace dmig
