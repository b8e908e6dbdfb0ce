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

#include "dmig/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "dmig/errors.hpp"

namespace dmig::synthetic {

namespace {

const double kGaussianEntropy = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream)
{
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void invalid(const std::string& msg) { throw Error(ErrorCode::invalid_argument, msg); }

struct GaussianAttributes {
  std::vector<double> a1;
  std::vector<double> a2;
};

GaussianAttributes draw_gaussian_pair(std::size_t n, double rho, std::uint64_t seed)
{
  std::mt19937_64 rng(mix(seed, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double tail = std::sqrt(1.0 - rho * rho);
  GaussianAttributes g;
  g.a1.resize(n);
  g.a2.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double u = normal(rng);
    const double v = normal(rng);
    g.a1[r] = u;
    g.a2[r] = rho * u + tail * v;
  }
  return g;
}

std::vector<double> normal_column(std::size_t n, std::mt19937_64& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> col(n);
  for (double& v : col) v = normal(rng);
  return col;
}

std::vector<std::string> attribute_names() { return {"a1", "a2"}; }

}  // namespace

std::string_view to_string(Family f) noexcept
{
  switch (f) {
    case Family::gaussian_pair: return "gaussian_pair";
    case Family::discrete_joint: return "discrete_joint";
    case Family::trajectory: return "trajectory";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view s) noexcept
{
  for (Family f : {Family::gaussian_pair, Family::discrete_joint, Family::trajectory}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

void SyntheticSpec::validate() const
{
  if (n < 2) invalid("n must be at least 2");
  if (d_total < 2) invalid("d_total must be at least 2 (two regularized dimensions)");
  switch (family) {
    case Family::trajectory:
      if (noise_schedule.empty()) invalid("trajectory needs a non-empty noise schedule");
      for (double s : noise_schedule) {
        if (!(s > 0.0) || !std::isfinite(s)) invalid("noise schedule entries must be strictly positive");
      }
      [[fallthrough]];
    case Family::gaussian_pair:
      if (!(std::fabs(rho) < 1.0)) invalid("rho must satisfy |rho| < 1, got " + std::to_string(rho));
      break;
    case Family::discrete_joint: {
      if (pmf.empty() || pmf.front().empty()) invalid("pmf must be a non-empty table");
      double total = 0.0;
      for (const auto& row : pmf) {
        if (row.size() != pmf.front().size()) invalid("pmf rows must have equal length");
        for (double p : row) {
          if (!(p >= 0.0) || !std::isfinite(p)) invalid("pmf entries must be nonnegative");
          total += p;
        }
      }
      if (std::fabs(total - 1.0) > 1e-12) invalid("pmf must sum to 1, got " + std::to_string(total));
      break;
    }
  }
}

GroundTruth gaussian_truth(double rho)
{
  if (!(std::fabs(rho) < 1.0)) invalid("rho must satisfy |rho| < 1");
  GroundTruth t;
  t.h_a = {kGaussianEntropy, kGaussianEntropy};
  t.i_a1a2 = -0.5 * std::log1p(-rho * rho);
  t.h_cond = Matrix(2, 2);
  t.h_cond(0, 1) = t.h_a[0] - t.i_a1a2;
  t.h_cond(1, 0) = t.h_a[1] - t.i_a1a2;
  return t;
}

GroundTruth discrete_truth(const std::vector<std::vector<double>>& pmf)
{
  const std::size_t rows = pmf.size();
  const std::size_t cols = rows ? pmf.front().size() : 0;
  std::vector<double> pu(rows, 0.0);
  std::vector<double> pv(cols, 0.0);
  for (std::size_t u = 0; u < rows; ++u) {
    for (std::size_t v = 0; v < cols; ++v) {
      pu[u] += pmf[u][v];
      pv[v] += pmf[u][v];
    }
  }
  auto shannon = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double q : p) {
      if (q > 0.0) h -= q * std::log(q);
    }
    return h;
  };
  GroundTruth t;
  t.h_a = {shannon(pu), shannon(pv)};
  double mi = 0.0;
  for (std::size_t u = 0; u < rows; ++u) {
    for (std::size_t v = 0; v < cols; ++v) {
      const double p = pmf[u][v];
      if (p > 0.0) mi += p * std::log(p / (pu[u] * pv[v]));
    }
  }
  t.i_a1a2 = std::max(0.0, mi);
  t.h_cond = Matrix(2, 2);
  t.h_cond(0, 1) = t.h_a[0] - t.i_a1a2;
  t.h_cond(1, 0) = t.h_a[1] - t.i_a1a2;
  // Exact copies give DMIG = 1 whenever the normalizer is nonzero; with a
  // deterministic relation between the attributes it is 0/0.
  const bool defined = t.h_a[0] > 0.0 && t.h_a[1] > 0.0 && t.h_cond(0, 1) > 1e-12 && t.h_cond(1, 0) > 1e-12;
  if (defined) t.ideal_dmig = 1.0;
  return t;
}

Sample gen_gaussian_pair(const SyntheticSpec& spec)
{
  if (spec.family != Family::gaussian_pair) invalid("spec family is not gaussian_pair");
  spec.validate();
  GaussianAttributes g = draw_gaussian_pair(spec.n, spec.rho, spec.seed);

  std::vector<std::vector<double>> latents{g.a1, g.a2};
  std::mt19937_64 rng(mix(spec.seed, 1));
  for (std::size_t d = 2; d < spec.d_total; ++d) latents.push_back(normal_column(spec.n, rng));

  std::vector<SampleColumn> attrs{SampleColumn::continuous(std::move(g.a1)), SampleColumn::continuous(std::move(g.a2))};
  return {Dataset(std::move(latents), std::move(attrs), attribute_names()), gaussian_truth(spec.rho)};
}

Sample gen_discrete_joint(const SyntheticSpec& spec)
{
  if (spec.family != Family::discrete_joint) invalid("spec family is not discrete_joint");
  spec.validate();
  const std::size_t cols = spec.pmf.front().size();
  std::vector<double> flat;
  for (const auto& row : spec.pmf) flat.insert(flat.end(), row.begin(), row.end());

  std::mt19937_64 rng(mix(spec.seed, 0));
  std::discrete_distribution<std::size_t> cell(flat.begin(), flat.end());
  std::vector<double> a1(spec.n);
  std::vector<double> a2(spec.n);
  for (std::size_t r = 0; r < spec.n; ++r) {
    const std::size_t c = cell(rng);
    a1[r] = static_cast<double>(c / cols);
    a2[r] = static_cast<double>(c % cols);
  }

  std::vector<std::vector<double>> latents{a1, a2};
  std::mt19937_64 extra(mix(spec.seed, 1));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t d = 2; d < spec.d_total; ++d) {
    std::vector<double> col(spec.n);
    for (double& v : col) v = coin(extra) ? 1.0 : 0.0;
    latents.push_back(std::move(col));
  }

  std::vector<SampleColumn> attrs{SampleColumn::discrete(std::move(a1)), SampleColumn::discrete(std::move(a2))};
  return {Dataset(std::move(latents), std::move(attrs), attribute_names()), discrete_truth(spec.pmf)};
}

std::vector<Epoch> gen_trajectory(const SyntheticSpec& spec)
{
  if (spec.family != Family::trajectory) invalid("spec family is not trajectory");
  spec.validate();
  const GaussianAttributes g = draw_gaussian_pair(spec.n, spec.rho, spec.seed);

  std::vector<Epoch> epochs;
  epochs.reserve(spec.noise_schedule.size());
  for (std::size_t t = 0; t < spec.noise_schedule.size(); ++t) {
    const double sigma = spec.noise_schedule[t];
    std::mt19937_64 rng(mix(spec.seed, 2 + t));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> latents(2, std::vector<double>(spec.n));
    for (std::size_t r = 0; r < spec.n; ++r) {
      latents[0][r] = g.a1[r] + sigma * normal(rng);
      latents[1][r] = g.a2[r] + sigma * normal(rng);
    }
    for (std::size_t d = 2; d < spec.d_total; ++d) latents.push_back(normal_column(spec.n, rng));

    std::vector<SampleColumn> attrs{SampleColumn::continuous(g.a1), SampleColumn::continuous(g.a2)};
    epochs.push_back({t, Dataset(std::move(latents), std::move(attrs), attribute_names())});
  }
  return epochs;
}

std::vector<double> geometric_schedule(double from, double to, std::size_t count)
{
  if (!(from > 0.0) || !(to > 0.0)) invalid("schedule endpoints must be positive");
  if (count == 0) invalid("schedule needs at least one epoch");
  if (count == 1) return {to};
  std::vector<double> out(count);
  const double ratio = std::log(to / from) / static_cast<double>(count - 1);
  for (std::size_t t = 0; t < count; ++t) out[t] = from * std::exp(ratio * static_cast<double>(t));
  out.back() = to;
  return out;
}

}  // namespace dmig::synthetic
