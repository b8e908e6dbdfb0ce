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

#include "dmig/metrics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "dmig/errors.hpp"

namespace dmig {

namespace {

// Runs every task exactly once; rethrows the failure of the lowest-indexed
// task so that errors are reported identically for any thread count.
void run_tasks(const std::vector<std::function<void()>>& tasks, unsigned threads)
{
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        tasks[t]();
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::string attr_label(const Dataset& ds, std::size_t i)
{
  return "attribute " + std::to_string(i + 1) + " '" + ds.name(i) + "'";
}

template <typename Fn>
auto with_context(const std::string& context, Fn&& fn)
{
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_context(context);
  }
}

}  // namespace

std::string_view to_string(Flag f) noexcept
{
  switch (f) {
    case Flag::regularization_failure: return "regularization_failure";
    case Flag::near_zero_denominator: return "near_zero_denominator";
    case Flag::negative_denominator: return "negative_denominator";
    case Flag::dmig_above_one: return "dmig_above_one";
  }
  return "unknown";
}

std::optional<Flag> parse_flag(std::string_view s) noexcept
{
  for (Flag f : Flags::all) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::vector<Flag> Flags::list() const
{
  std::vector<Flag> out;
  for (Flag f : all) {
    if (has(f)) out.push_back(f);
  }
  return out;
}

std::string_view to_string(Branch b) noexcept
{
  return b == Branch::regularized ? "regularized" : "unregularized";
}

MIProfile mi_profile(const Dataset& ds, const EstimatorConfig& cfg, unsigned threads)
{
  cfg.validate_for(ds.rows());
  const std::size_t m = ds.attribute_count();
  const std::size_t d = ds.latent_dims();

  MIProfile p;
  p.mi = Matrix(m, d);
  p.mi_raw = Matrix(m, d);
  p.deterministic.assign(m * d, 0);
  p.h_marginal.assign(m, 0.0);
  p.h_cond = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) p.kinds.push_back(ds.attribute(i).kind());

  // Attribute-attribute MI, needed for the continuous conditional entropies.
  Matrix mi_attr(m, m);

  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < m; ++i) {
    tasks.emplace_back([&, i] {
      p.h_marginal[i] = with_context(attr_label(ds, i), [&] { return entropy(ds.attribute(i), cfg); });
    });
    for (std::size_t k = 0; k < d; ++k) {
      tasks.emplace_back([&, i, k] {
        const MiEstimate est = with_context(attr_label(ds, i) + ", latent z" + std::to_string(k + 1),
                                            [&] { return mutual_information(ds.attribute(i), ds.latent(k), cfg); });
        p.mi(i, k) = est.value;
        p.mi_raw(i, k) = est.raw;
        p.deterministic[i * d + k] = est.deterministic_relation ? 1 : 0;
      });
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      tasks.emplace_back([&, i, j] {
        const std::string ctx = attr_label(ds, i) + " vs " + attr_label(ds, j);
        const SampleColumn& a = ds.attribute(i);
        const SampleColumn& b = ds.attribute(j);
        if (a.is_discrete() && b.is_discrete()) {
          with_context(ctx, [&] {
            p.h_cond(i, j) = conditional_entropy(a, b, cfg);
            p.h_cond(j, i) = conditional_entropy(b, a, cfg);
            return 0;
          });
        } else {
          mi_attr(i, j) = mi_attr(j, i) = with_context(ctx, [&] { return mutual_information(a, b, cfg).value; });
        }
      });
    }
  }
  run_tasks(tasks, threads);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (!(p.kinds[i] == Kind::discrete && p.kinds[j] == Kind::discrete)) {
        p.h_cond(i, j) = p.h_marginal[i] - mi_attr(i, j);
      }
    }
  }
  return p;
}

MigResult compute_mig(std::size_t i, const MIProfile& p, const std::vector<std::size_t>& map,
                      const MetricThresholds& th)
{
  const std::size_t d = p.mi.cols;
  if (i >= p.mi.rows || i >= map.size() || map[i] >= d) {
    throw Error(ErrorCode::invalid_argument, "attribute index or regularized map out of range");
  }
  const double h = p.h_marginal[i];
  if (!(h > th.min_entropy)) {
    throw Error(ErrorCode::zero_entropy_attribute,
                "attribute entropy " + std::to_string(h) + " nats is not positive; the gap cannot be normalized");
  }

  const std::size_t reg = map[i];
  MigResult r;
  r.top_dim = 0;
  for (std::size_t k = 1; k < d; ++k) {
    if (p.mi(i, k) > p.mi(i, r.top_dim)) r.top_dim = k;
  }
  // With a single latent dimension there is no competitor; the second term is zero.
  r.runner_up_dim = reg;
  double second = 0.0;
  bool have_runner_up = false;
  for (std::size_t k = 0; k < d; ++k) {
    if (k == reg) continue;
    if (!have_runner_up || p.mi(i, k) > second) {
      r.runner_up_dim = k;
      second = p.mi(i, k);
      have_runner_up = true;
    }
  }
  r.numerator = p.mi(i, reg) - second;
  r.mig = r.numerator / h;
  if (r.top_dim != reg) r.flags.set(Flag::regularization_failure);
  return r;
}

AttributeMetrics compute_dmig(std::size_t i, const MIProfile& p, const std::vector<std::size_t>& map,
                              const MetricThresholds& th)
{
  const MigResult base = compute_mig(i, p, map, th);

  AttributeMetrics out;
  out.mig = base.mig;
  out.top_dim = base.top_dim;
  out.runner_up_dim = base.runner_up_dim;
  out.flags = base.flags;

  std::optional<std::size_t> partner;
  if (base.runner_up_dim != map[i]) {
    for (std::size_t a = 0; a < map.size(); ++a) {
      if (map[a] == base.runner_up_dim) partner = a;
    }
  }

  if (!partner) {
    out.branch = Branch::unregularized;
    out.denominator = p.h_marginal[i];
    out.dmig = base.mig;
  } else {
    out.branch = Branch::regularized;
    out.denominator = p.h_cond(i, *partner);
    if (std::fabs(out.denominator) < th.min_denominator) {
      out.flags.set(Flag::near_zero_denominator);
      const bool negative = std::signbit(base.numerator) != std::signbit(out.denominator);
      out.dmig = negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    } else {
      out.dmig = base.numerator / out.denominator;
    }
  }
  if (out.denominator < 0.0) out.flags.set(Flag::negative_denominator);
  if (out.dmig > 1.0) out.flags.set(Flag::dmig_above_one);
  return out;
}

MetricReport evaluate(const Dataset& ds, const EstimatorConfig& cfg, unsigned threads, const MetricThresholds& th)
{
  const std::size_t m = ds.attribute_count();
  if (m == 0) throw Error(ErrorCode::invalid_dataset, "dataset has no attributes to evaluate");

  const MIProfile profile = mi_profile(ds, cfg, threads);

  MetricReport report;
  report.config = cfg;
  report.dataset_digest = ds.digest();
  double sum_mig = 0.0;
  double sum_dmig = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    AttributeMetrics am = with_context(attr_label(ds, i), [&] {
      AttributeMetrics r = compute_dmig(i, profile, ds.regularized_map(), th);
      r.scc = spearman(ds.attribute(i), ds.latent(ds.regularized_dim(i)));
      return r;
    });
    am.name = ds.name(i);
    sum_mig += am.mig;
    sum_dmig += am.dmig;
    report.per_attribute.push_back(std::move(am));
  }
  report.mean_mig = sum_mig / static_cast<double>(m);
  report.mean_dmig = sum_dmig / static_cast<double>(m);
  return report;
}

}  // namespace dmig
