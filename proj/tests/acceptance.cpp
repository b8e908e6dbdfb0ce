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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dmig/dataio.hpp"
#include "dmig/errors.hpp"
#include "dmig/estimation.hpp"
#include "dmig/metrics.hpp"
#include "dmig/synthetic.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace {

namespace syn = dmig::synthetic;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [not met]");
  }
};

std::string num(double v, int precision = 4)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string sci(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

dmig::Dataset copies(std::vector<std::vector<double>> attrs, std::vector<std::vector<double>> extra = {})
{
  std::vector<std::vector<double>> z = attrs;
  for (auto& e : extra) z.push_back(std::move(e));
  std::vector<dmig::SampleColumn> cols;
  for (auto& a : attrs) cols.push_back(dmig::SampleColumn::inferred(std::move(a)));
  return dmig::Dataset(std::move(z), std::move(cols), {});
}

double pearson(const std::vector<double>& x, const std::vector<double>& y)
{
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// 1. KSG accuracy on a correlated Gaussian pair.
Verdict estimator_accuracy()
{
  Verdict v;
  const auto start = Clock::now();
  const double truth = oracle::gaussian_mi(0.8);
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [x, y] = oracle::normal_pair(20000, 0.8, 1000 + seed);
    mean += dmig::mi_continuous(dmig::SampleColumn::continuous(x), dmig::SampleColumn::continuous(y), {3, 1e-10, seed})
                .value /
            10.0;
  }
  const double elapsed = seconds_since(start);
  v.require(std::fabs(mean - truth) <= 0.03, "mean I over 10 seeds " + num(mean) + " vs " + num(truth) + " +-0.03");
  v.require(elapsed < 10.0, "runtime " + num(elapsed, 2) + " s < 10 s");
  return v;
}

// 2. Negative differential entropy.
Verdict entropy_sign()
{
  Verdict v;
  const auto [x, unused] = oracle::normal_pair(20000, 0.0, 2000, 0.1);
  const double h = dmig::entropy_continuous(dmig::SampleColumn::continuous(x), {});
  const double truth = oracle::gaussian_entropy(0.1);
  v.require(std::fabs(h - truth) <= 0.03, "H " + num(h) + " vs " + num(truth) + " +-0.03");
  v.require(h < 0.0, "estimate negative");
  return v;
}

// 3. Exact copies of correlated discrete attributes give DMIG = 1.
Verdict ideal_case()
{
  Verdict v;
  std::mt19937_64 rng(3000);
  std::size_t tables = 0;
  double worst = 0.0;
  while (tables < 20) {
    const std::size_t size = tables < 10 ? 2 : 3;
    auto spec = syn::SyntheticSpec{};
    spec.family = syn::Family::discrete_joint;
    spec.pmf = oracle::random_pmf(size, size, rng);
    spec.n = 5000;
    spec.seed = rng();
    const auto s = syn::gen_discrete_joint(spec);
    if (!(s.truth.i_a1a2 > 0.0)) continue;
    const auto report = dmig::evaluate(s.dataset, {});
    for (const auto& am : report.per_attribute) worst = std::max(worst, std::fabs(am.dmig - 1.0));
    ++tables;
  }
  v.require(worst <= 1e-9, "20 tables (10 of 2x2, 10 of 3x3), max |DMIG - 1| = " + sci(worst) + " <= 1e-9");
  return v;
}

// 4. Independent attributes with an unregularized runner-up: DMIG equals MIG.
Verdict reduction()
{
  Verdict v;
  std::mt19937_64 rng(4000);
  std::size_t equal = 0;
  std::size_t unregularized = 0;
  double max_i = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    // Balanced product design: every (a1, a2) cell appears equally often, so I = 0 exactly.
    const int c1 = 2 + trial % 3;
    const int c2 = 2 + trial % 2;
    const int reps = 50 + trial;
    std::vector<double> a1;
    std::vector<double> a2;
    for (int r = 0; r < reps; ++r) {
      for (int u = 0; u < c1; ++u) {
        for (int w = 0; w < c2; ++w) {
          a1.push_back(u);
          a2.push_back(w);
        }
      }
    }
    // z3 leaks a noisy copy of each attribute; it outranks the partner dimension.
    std::vector<double> leak1 = a1;
    std::vector<double> leak2 = a2;
    std::bernoulli_distribution flip(0.2);
    for (std::size_t r = 0; r < leak1.size(); ++r) {
      if (flip(rng)) leak1[r] = static_cast<double>(rng() % static_cast<unsigned>(c1));
      if (flip(rng)) leak2[r] = static_cast<double>(rng() % static_cast<unsigned>(c2));
    }
    const dmig::Dataset ds = copies({a1, a2}, {leak1, leak2});
    max_i = std::max(max_i, dmig::mi_discrete(ds.attribute(0), ds.attribute(1)));
    for (const auto& am : dmig::evaluate(ds, {}).per_attribute) {
      if (am.branch == dmig::Branch::unregularized) ++unregularized;
      if (am.dmig == am.mig) ++equal;
    }
  }
  v.require(max_i == 0.0, "I(a1;a2) = 0 on all 20 datasets (max " + sci(max_i) + ")");
  v.require(unregularized == 40, std::to_string(unregularized) + "/40 attributes on the unregularized branch");
  v.require(equal == 40, std::to_string(equal) + "/40 with DMIG == MIG exactly");
  return v;
}

// 5. Swapping the regularized latent columns flags every affected attribute.
Verdict failure_signaling()
{
  Verdict v;
  std::size_t flagged = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto spec = syn::SyntheticSpec{};
    spec.seed = seed;
    spec.n = 2000;
    if (seed % 2 == 0) {
      spec.family = syn::Family::discrete_joint;
      spec.pmf = {{0.4, 0.1}, {0.1, 0.4}};
    } else {
      spec.family = syn::Family::gaussian_pair;
      spec.rho = 0.5;
    }
    const auto s = spec.family == syn::Family::discrete_joint ? syn::gen_discrete_joint(spec)
                                                              : syn::gen_gaussian_pair(spec);
    const auto& ds = s.dataset;
    const std::vector<double> z1(ds.latent(0).values().begin(), ds.latent(0).values().end());
    const std::vector<double> z2(ds.latent(1).values().begin(), ds.latent(1).values().end());
    const dmig::Dataset swapped({z2, z1}, {ds.attribute(0), ds.attribute(1)}, ds.names());
    const auto before = dmig::evaluate(ds, {});
    const auto after = dmig::evaluate(swapped, {});
    for (std::size_t i = 0; i < 2; ++i) {
      ++total;
      const bool ok = before.per_attribute[i].mig > 0.0 && after.per_attribute[i].mig < 0.0 &&
                      after.per_attribute[i].flags.has(dmig::Flag::regularization_failure) &&
                      !before.per_attribute[i].flags.has(dmig::Flag::regularization_failure);
      if (ok) ++flagged;
    }
  }
  v.require(flagged == total, std::to_string(flagged) + "/" + std::to_string(total) +
                                  " attributes flip to negative MIG with regularization_failure");
  return v;
}

// 6. Training-trajectory structure.
Verdict trajectory()
{
  Verdict v;
  const auto start = Clock::now();
  auto spec = syn::SyntheticSpec{};
  spec.family = syn::Family::trajectory;
  spec.rho = 0.95;
  spec.n = 10000;
  spec.seed = 0;
  spec.noise_schedule = syn::geometric_schedule(10.0, 0.01, 30);
  const auto epochs = syn::gen_trajectory(spec);

  std::vector<dmig::MetricReport> reports;
  for (const auto& e : epochs) reports.push_back(dmig::evaluate(e.dataset, {}));
  const double elapsed = seconds_since(start);

  double max_mig = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    for (const auto& am : r.per_attribute) max_mig = std::max(max_mig, am.mig);
  }
  const auto& last = reports.back().per_attribute;
  double min_scc = 1.0;
  double min_dmig = std::numeric_limits<double>::infinity();
  for (const auto& am : last) {
    min_scc = std::min(min_scc, am.scc);
    min_dmig = std::min(min_dmig, am.dmig);
  }
  v.require(min_scc > 0.95 && max_mig < 0.15,
            "(a) final SCC " + num(min_scc) + " > 0.95 with max MIG " + num(max_mig) + " < 0.15");
  v.require(min_dmig > 0.8, "(b) final DMIG " + num(min_dmig) + " > 0.8");

  double min_r = 1.0;
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> mig;
    std::vector<double> dmig;
    for (const auto& r : reports) {
      const auto& am = r.per_attribute[i];
      if (am.branch == dmig::Branch::regularized && am.runner_up_dim == 1 - i) {
        mig.push_back(am.mig);
        dmig.push_back(am.dmig);
      }
    }
    min_r = std::min(min_r, mig.size() >= 3 ? pearson(mig, dmig) : -1.0);
  }
  v.require(min_r > 0.999, "(c) Pearson(MIG, DMIG) " + num(min_r, 9) + " > 0.999");
  v.require(elapsed < 60.0, "runtime " + num(elapsed, 2) + " s < 60 s");
  return v;
}

// 7. Nearly deterministic attributes under a near-ideal encoder.
Verdict above_one()
{
  Verdict v;
  auto spec = syn::SyntheticSpec{};
  spec.family = syn::Family::gaussian_pair;
  spec.rho = 0.99;
  spec.n = 20000;
  spec.seed = 7;
  const auto s = syn::gen_gaussian_pair(spec);
  const auto am = dmig::evaluate(s.dataset, {}).per_attribute[0];
  v.require(am.denominator < 0.0, "denominator " + num(am.denominator) + " < 0 (truth " +
                                      num(s.truth.h_cond(0, 1)) + ")");
  v.require(am.dmig > 1.0, "DMIG " + num(am.dmig) + " > 1");
  v.require(am.flags.has(dmig::Flag::negative_denominator), "negative_denominator set");
  v.require(am.flags.has(dmig::Flag::dmig_above_one), "dmig_above_one set");
  return v;
}

// 8. Chain rule and serialization round trips.
Verdict invariants()
{
  Verdict v;
  std::mt19937_64 rng(8000);
  double worst_chain = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto pmf = oracle::random_pmf(2 + trial % 4, 2 + (trial / 4) % 4, rng);
    auto spec = syn::SyntheticSpec{};
    spec.family = syn::Family::discrete_joint;
    spec.pmf = pmf;
    spec.n = 500 + static_cast<std::size_t>(trial) * 10;
    spec.seed = rng();
    const auto s = syn::gen_discrete_joint(spec);
    const auto& a = s.dataset.attribute(0);
    const auto& b = s.dataset.attribute(1);
    const double h = dmig::entropy_discrete(a);
    const double sum = dmig::conditional_entropy(a, b, {}) + dmig::mi_discrete(a, b);
    worst_chain = std::max(worst_chain, std::fabs(h - sum));
    const auto& t = s.truth;
    worst_chain = std::max(worst_chain, std::fabs(t.h_cond(0, 1) - (t.h_a[0] - t.i_a1a2)));
  }
  v.require(worst_chain <= 1e-12, "chain rule on 100 tables, max error " + sci(worst_chain) + " <= 1e-12");

  std::size_t datasets = 0;
  std::size_t reports = 0;
  std::size_t series = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = gen::random_dataset(rng);
    std::istringstream in(dmig::io::format_dataset(ds));
    if (dmig::io::parse_dataset(in) == ds) ++datasets;
    const auto r = gen::random_report(rng);
    if (dmig::io::parse_report(dmig::io::format_report(r)) == r) ++reports;
    dmig::io::Series sr{{0, r}, {1 + rng() % 5, gen::random_report(rng)}};
    if (dmig::io::parse_series(dmig::io::format_series(sr)) == sr) ++series;
  }
  v.require(datasets == 100 && reports == 100 && series == 100,
            "round trips: datasets " + std::to_string(datasets) + "/100, reports " + std::to_string(reports) +
                "/100, series " + std::to_string(series) + "/100");
  return v;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"estimator accuracy", estimator_accuracy},
      {"differential-entropy sign", entropy_sign},
      {"ideal-case theorem", ideal_case},
      {"reduction to MIG", reduction},
      {"failure signaling", failure_signaling},
      {"training-trajectory structure", trajectory},
      {"DMIG > 1 pathology", above_one},
      {"chain rule and round trips", invariants},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Verdict v;
    try {
      v = criteria[c].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", c + 1, criteria[c].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
