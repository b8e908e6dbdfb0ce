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

#include "dmig/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string_view>

#include "dmig/errors.hpp"

namespace dmig {

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t len)
  {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void real(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void text(std::string_view s)
  {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  [[nodiscard]] std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

Dataset::Dataset(std::vector<std::vector<double>> latents, std::vector<SampleColumn> attributes,
                 std::vector<std::string> names, std::vector<std::size_t> regularized_map)
    : attributes_(std::move(attributes)), names_(std::move(names)), map_(std::move(regularized_map))
{
  if (latents.empty()) throw Error(ErrorCode::invalid_dataset, "dataset needs at least one latent dimension");
  rows_ = latents.front().size();
  latents_.reserve(latents.size());
  for (std::size_t d = 0; d < latents.size(); ++d) {
    if (latents[d].size() != rows_) {
      throw Error(ErrorCode::invalid_dataset, "latent column z" + std::to_string(d + 1) + " has " +
                                                  std::to_string(latents[d].size()) + " rows, expected " +
                                                  std::to_string(rows_));
    }
    try {
      latents_.push_back(SampleColumn::inferred(std::move(latents[d])));
    } catch (const Error& e) {
      throw Error(ErrorCode::invalid_dataset, e.with_context("latent z" + std::to_string(d + 1)).what());
    }
  }

  const std::size_t m = attributes_.size();
  if (m > latents_.size()) {
    throw Error(ErrorCode::invalid_dataset, "more attributes (" + std::to_string(m) + ") than latent dimensions (" +
                                                std::to_string(latents_.size()) + ")");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (attributes_[i].size() != rows_) {
      throw Error(ErrorCode::invalid_dataset, "attribute " + std::to_string(i + 1) + " has " +
                                                  std::to_string(attributes_[i].size()) + " rows, expected " +
                                                  std::to_string(rows_));
    }
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < m; ++i) names_.push_back("a" + std::to_string(i + 1));
  }
  if (names_.size() != m) throw Error(ErrorCode::invalid_dataset, "attribute name count does not match attributes");

  if (map_.empty()) {
    map_.resize(m);
    std::iota(map_.begin(), map_.end(), std::size_t{0});
  }
  if (map_.size() != m) throw Error(ErrorCode::invalid_dataset, "regularized map size does not match attributes");
  std::vector<bool> used(latents_.size(), false);
  for (std::size_t i = 0; i < m; ++i) {
    if (map_[i] >= latents_.size()) {
      throw Error(ErrorCode::invalid_dataset, "attribute '" + names_[i] + "' mapped to nonexistent latent z" +
                                                  std::to_string(map_[i] + 1));
    }
    if (used[map_[i]]) {
      throw Error(ErrorCode::invalid_dataset, "regularized map is not injective: z" + std::to_string(map_[i] + 1) +
                                                  " is claimed twice");
    }
    used[map_[i]] = true;
  }
}

std::optional<std::size_t> Dataset::attribute_for_dim(std::size_t d) const
{
  auto it = std::find(map_.begin(), map_.end(), d);
  if (it == map_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - map_.begin());
}

std::string Dataset::digest() const
{
  Fnv1a h;
  h.u64(rows_);
  h.u64(latents_.size());
  h.u64(attributes_.size());
  for (const auto& col : latents_) {
    h.u64(static_cast<std::uint64_t>(col.kind()));
    for (double v : col.values()) h.real(v);
  }
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    h.text(names_[i]);
    h.u64(static_cast<std::uint64_t>(attributes_[i].kind()));
    h.u64(map_[i]);
    for (double v : attributes_[i].values()) h.real(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return buf;
}

}  // namespace dmig
