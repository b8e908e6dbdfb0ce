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

#include "dmig/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "dmig/errors.hpp"
#include "kdtree.hpp"

namespace dmig {

namespace {

double digamma(std::size_t n) { return boost::math::digamma(static_cast<double>(n)); }

void require_aligned(const SampleColumn& x, const SampleColumn& y)
{
  if (x.size() != y.size()) {
    throw Error(ErrorCode::alignment, "columns have different lengths (" + std::to_string(x.size()) + " vs " +
                                          std::to_string(y.size()) + ")");
  }
}

void require_discrete(const SampleColumn& a, const char* what)
{
  if (!a.is_discrete()) throw Error(ErrorCode::kind_mismatch, std::string(what) + " requires a discrete column");
}

std::uint64_t splitmix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over the bit patterns; the jitter stream of a column depends on its
// contents so that swapping argument order cannot change the noise.
std::uint64_t content_hash(std::span<const double> values)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

double stddev(std::span<const double> v)
{
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / n);
}

double plugin_entropy_from_counts(const std::vector<std::size_t>& counts, std::size_t n)
{
  const double total = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

std::vector<std::size_t> category_counts(std::span<const double> values)
{
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    counts.push_back(j - i);
    i = j;
  }
  return counts;
}

double joint_entropy_discrete(const SampleColumn& a, const SampleColumn& b)
{
  std::map<std::pair<double, double>, std::size_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) ++joint[{a.values()[i], b.values()[i]}];
  std::vector<std::size_t> counts;
  counts.reserve(joint.size());
  for (const auto& [key, c] : joint) counts.push_back(c);
  return plugin_entropy_from_counts(counts, a.size());
}

// Number of j != i with |s_j - v| < eps, given v is itself an element of `sorted`.
std::size_t count_strictly_within(const std::vector<double>& sorted, double v, double eps)
{
  auto hi = std::partition_point(sorted.begin(), sorted.end(), [&](double s) { return s - v < eps; });
  auto lo = std::partition_point(sorted.begin(), sorted.end(), [&](double s) { return v - s >= eps; });
  const auto inside = hi - lo;
  return inside > 0 ? static_cast<std::size_t>(inside - 1) : 0;
}

}  // namespace

std::vector<double> jittered_values(const SampleColumn& a, const EstimatorConfig& cfg)
{
  std::vector<double> out(a.values().begin(), a.values().end());
  if (cfg.jitter == 0.0) return out;
  const double amplitude = cfg.jitter * stddev(out);
  if (amplitude == 0.0) return out;
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(content_hash(out))));
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (double& v : out) v += noise(rng);
  return out;
}

double entropy_discrete(const SampleColumn& a)
{
  require_discrete(a, "entropy_discrete");
  return plugin_entropy_from_counts(category_counts(a.values()), a.size());
}

double entropy_continuous(const SampleColumn& a, const EstimatorConfig& cfg)
{
  if (a.is_discrete()) throw Error(ErrorCode::kind_mismatch, "entropy_continuous requires a continuous column");
  const std::size_t n = a.size();
  cfg.validate_for(n);

  std::vector<double> v = jittered_values(a, cfg);
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) throw Error(ErrorCode::degenerate_sample, "column has zero variance");

  const auto k = static_cast<std::size_t>(cfg.k);
  const double inf = std::numeric_limits<double>::infinity();
  double log_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t left = i;  // next candidate is left - 1
    std::size_t right = i + 1;
    double eps = 0.0;
    for (std::size_t step = 0; step < k; ++step) {
      const double dl = left > 0 ? v[i] - v[left - 1] : inf;
      const double dr = right < n ? v[right] - v[i] : inf;
      if (dl <= dr) {
        eps = dl;
        --left;
      } else {
        eps = dr;
        ++right;
      }
    }
    if (!(eps > 0.0)) {
      throw Error(ErrorCode::degenerate_sample,
                  "k-th neighbour distance is zero (tied samples); increase jitter or k");
    }
    log_sum += std::log(2.0 * eps);
  }
  return digamma(n) - digamma(k) + log_sum / static_cast<double>(n);
}

double entropy(const SampleColumn& a, const EstimatorConfig& cfg)
{
  return a.is_discrete() ? entropy_discrete(a) : entropy_continuous(a, cfg);
}

MiEstimate mi_continuous(const SampleColumn& x, const SampleColumn& y, const EstimatorConfig& cfg)
{
  require_aligned(x, y);
  const std::size_t n = x.size();
  cfg.validate_for(n);

  const std::vector<double> xs = jittered_values(x, cfg);
  const std::vector<double> ys = jittered_values(y, cfg);
  std::vector<double> sx = xs;
  std::vector<double> sy = ys;
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());

  const detail::KdTree2 tree(xs, ys);
  const auto k = static_cast<std::size_t>(cfg.k);

  // Histograms of neighbour counts make the digamma sums independent of row order.
  std::vector<std::size_t> freq_x(n, 0);
  std::vector<std::size_t> freq_y(n, 0);
  bool underflow = false;
  std::size_t minimal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = tree.kth_neighbor_distance(i, cfg.k);
    std::size_t nx = 0;
    std::size_t ny = 0;
    if (eps <= std::numeric_limits<double>::min()) {
      underflow = true;
    } else {
      nx = count_strictly_within(sx, xs[i], eps);
      ny = count_strictly_within(sy, ys[i], eps);
    }
    ++freq_x[nx];
    ++freq_y[ny];
    if (nx + 1 == k && ny + 1 == k) ++minimal;
  }

  double sum_x = 0.0;
  double sum_y = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (freq_x[c] != 0) sum_x += static_cast<double>(freq_x[c]) * digamma(c + 1);
    if (freq_y[c] != 0) sum_y += static_cast<double>(freq_y[c]) * digamma(c + 1);
  }

  MiEstimate est;
  est.raw = digamma(k) + digamma(n) - (sum_x + sum_y) / static_cast<double>(n);
  est.value = std::max(0.0, est.raw);
  est.deterministic_relation = underflow || minimal == n;
  return est;
}

double mi_discrete(const SampleColumn& x, const SampleColumn& y)
{
  require_discrete(x, "mi_discrete");
  require_discrete(y, "mi_discrete");
  require_aligned(x, y);

  std::map<std::pair<double, double>, std::size_t> joint;
  std::map<double, std::size_t> mx;
  std::map<double, std::size_t> my;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x.values()[i];
    const double v = y.values()[i];
    ++joint[{u, v}];
    ++mx[u];
    ++my[v];
  }
  const double n = static_cast<double>(x.size());
  std::vector<double> terms;
  terms.reserve(joint.size());
  for (const auto& [key, c] : joint) {
    const double cuv = static_cast<double>(c);
    const double cu = static_cast<double>(mx[key.first]);
    const double cv = static_cast<double>(my[key.second]);
    terms.push_back((cuv / n) * std::log(cuv * n / (cu * cv)));
  }
  // Summing in value order keeps the result independent of argument order.
  std::sort(terms.begin(), terms.end());
  return std::max(0.0, std::accumulate(terms.begin(), terms.end(), 0.0));
}

MiEstimate mutual_information(const SampleColumn& x, const SampleColumn& y, const EstimatorConfig& cfg)
{
  if (x.is_discrete() && y.is_discrete()) {
    const double mi = mi_discrete(x, y);
    const bool determined = mi > 0.0 && (std::fabs(mi - entropy_discrete(x)) <= 1e-12 ||
                                         std::fabs(mi - entropy_discrete(y)) <= 1e-12);
    return {mi, mi, determined};
  }
  return mi_continuous(x, y, cfg);
}

double conditional_entropy(const SampleColumn& a, const SampleColumn& b, const EstimatorConfig& cfg)
{
  require_aligned(a, b);
  if (a.is_discrete() && b.is_discrete()) return joint_entropy_discrete(a, b) - entropy_discrete(b);
  return entropy(a, cfg) - mutual_information(a, b, cfg).value;
}

std::vector<double> fractional_ranks(std::span<const double> values)
{
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
    i = j;
  }
  return ranks;
}

double spearman(const SampleColumn& x, const SampleColumn& y)
{
  require_aligned(x, y);
  const std::vector<double> rx = fractional_ranks(x.values());
  const std::vector<double> ry = fractional_ranks(y.values());
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;  // average rank is invariant under ties
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::undefined_correlation, "rank correlation is undefined for a constant column");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace dmig
