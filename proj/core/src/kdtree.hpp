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
#include <vector>

namespace dmig::detail {

// Static 2-D kd-tree answering "distance to the k-th nearest other point"
// under the max-norm. The coordinate spans must outlive the tree.
class KdTree2 {
 public:
  KdTree2(std::span<const double> xs, std::span<const double> ys);

  /// Distance from point `query` to its k-th nearest neighbour, excluding itself.
  [[nodiscard]] double kth_neighbor_distance(std::size_t query, int k) const;

 private:
  struct Node {
    double lo[2];
    double hi[2];
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::int32_t node, double qx, double qy, std::size_t self, std::vector<double>& best) const;

  std::span<const double> coord_[2];
  std::vector<std::uint32_t> index_;
  std::vector<Node> nodes_;
};

}  // namespace dmig::detail
