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

#include "kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dmig::detail {

namespace {

constexpr std::uint32_t kLeafSize = 12;

double box_distance(const double lo[2], const double hi[2], double qx, double qy)
{
  const double dx = std::max({0.0, lo[0] - qx, qx - hi[0]});
  const double dy = std::max({0.0, lo[1] - qy, qy - hi[1]});
  return std::max(dx, dy);
}

// best is kept sorted ascending with fixed length k.
void offer(std::vector<double>& best, double d)
{
  if (d >= best.back()) return;
  auto pos = std::upper_bound(best.begin(), best.end(), d);
  std::move_backward(pos, best.end() - 1, best.end());
  *pos = d;
}

}  // namespace

KdTree2::KdTree2(std::span<const double> xs, std::span<const double> ys) : coord_{xs, ys}
{
  index_.resize(xs.size());
  std::iota(index_.begin(), index_.end(), 0u);
  nodes_.reserve(2 * (xs.size() / kLeafSize + 1));
  if (!index_.empty()) build(0, static_cast<std::uint32_t>(index_.size()));
}

std::int32_t KdTree2::build(std::uint32_t begin, std::uint32_t end)
{
  Node node{};
  node.begin = begin;
  node.end = end;
  for (int a = 0; a < 2; ++a) {
    node.lo[a] = std::numeric_limits<double>::infinity();
    node.hi[a] = -std::numeric_limits<double>::infinity();
  }
  for (std::uint32_t p = begin; p < end; ++p) {
    for (int a = 0; a < 2; ++a) {
      const double v = coord_[a][index_[p]];
      node.lo[a] = std::min(node.lo[a], v);
      node.hi[a] = std::max(node.hi[a], v);
    }
  }
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  const int axis = (node.hi[0] - node.lo[0]) >= (node.hi[1] - node.lo[1]) ? 0 : 1;
  const std::uint32_t mid = begin + (end - begin) / 2;
  const auto& c = coord_[axis];
  std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                   [&c](std::uint32_t a, std::uint32_t b) { return c[a] < c[b]; });
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree2::search(std::int32_t id, double qx, double qy, std::size_t self, std::vector<double>& best) const
{
  const Node& node = nodes_[id];
  if (node.left < 0) {
    for (std::uint32_t p = node.begin; p < node.end; ++p) {
      const std::uint32_t j = index_[p];
      if (j == self) continue;
      offer(best, std::max(std::fabs(coord_[0][j] - qx), std::fabs(coord_[1][j] - qy)));
    }
    return;
  }
  const Node& l = nodes_[node.left];
  const Node& r = nodes_[node.right];
  const double dl = box_distance(l.lo, l.hi, qx, qy);
  const double dr = box_distance(r.lo, r.hi, qx, qy);
  const std::int32_t first = dl <= dr ? node.left : node.right;
  const std::int32_t second = dl <= dr ? node.right : node.left;
  const double d_second = std::max(dl, dr);

  if (std::min(dl, dr) < best.back()) search(first, qx, qy, self, best);
  if (d_second < best.back()) search(second, qx, qy, self, best);
}

double KdTree2::kth_neighbor_distance(std::size_t query, int k) const
{
  std::vector<double> best(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
  search(0, coord_[0][query], coord_[1][query], query, best);
  return best.back();
}

}  // namespace dmig::detail
