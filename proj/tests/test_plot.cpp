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

#include <gtest/gtest.h>

#include <limits>
#include <string>

#include "dmig/errors.hpp"
#include "dmig/plot.hpp"

namespace {

using dmig::plot::Metric;
using dmig::plot::PlotSpec;

dmig::io::Series make_series(std::size_t epochs, std::size_t attrs = 2)
{
  dmig::io::Series s;
  for (std::size_t e = 0; e < epochs; ++e) {
    dmig::MetricReport r;
    for (std::size_t i = 0; i < attrs; ++i) {
      dmig::AttributeMetrics a;
      a.name = "attr" + std::to_string(i);
      a.mig = 0.02 * static_cast<double>(e) + 0.01 * static_cast<double>(i);
      a.dmig = 5.0 * a.mig;
      a.scc = 0.9 * static_cast<double>(e) / static_cast<double>(epochs);
      r.per_attribute.push_back(a);
    }
    s.push_back({e, r});
  }
  return s;
}

std::size_t count(const std::string& text, const std::string& needle)
{
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(PlotSpec, Validation)
{
  PlotSpec same{Metric::scc, Metric::scc};
  EXPECT_THROW(same.validate(), dmig::Error);
  PlotSpec inverted{Metric::mig, Metric::scc, dmig::plot::Range{1.0, 0.0}};
  EXPECT_THROW(inverted.validate(), dmig::Error);
  PlotSpec unbounded{Metric::mig, Metric::scc, std::nullopt,
                     dmig::plot::Range{0.0, std::numeric_limits<double>::infinity()}};
  EXPECT_THROW(unbounded.validate(), dmig::Error);
  PlotSpec tiny{Metric::mig, Metric::scc};
  tiny.width = 100;
  EXPECT_THROW(tiny.validate(), dmig::Error);
  EXPECT_NO_THROW(PlotSpec{}.validate());
}

TEST(PlotSpec, MetricNames)
{
  for (Metric m : {Metric::mig, Metric::dmig, Metric::scc}) {
    EXPECT_EQ(dmig::plot::parse_metric(dmig::plot::to_string(m)), m);
  }
  EXPECT_FALSE(dmig::plot::parse_metric("sap").has_value());
}

TEST(Scatter, RejectsSingleEpoch)
{
  try {
    (void)dmig::plot::render_scatter_svg(make_series(1), {});
    ADD_FAILURE() << "expected failure";
  } catch (const dmig::Error& e) {
    EXPECT_EQ(e.code(), dmig::ErrorCode::invalid_argument);
  }
}

TEST(Scatter, OnePointPerAttributeAndEpoch)
{
  const std::string svg = dmig::plot::render_scatter_svg(make_series(5, 3), {Metric::mig, Metric::scc});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<circle"), 15u + 3u);  // points plus legend swatches
  EXPECT_NE(svg.find("attr2"), std::string::npos);
  EXPECT_EQ(svg.find("class=\"reference\""), std::string::npos);
}

TEST(Scatter, DmigAxisCarriesReferenceLine)
{
  const std::string svg = dmig::plot::render_scatter_svg(make_series(4), {Metric::mig, Metric::dmig});
  EXPECT_EQ(count(svg, "class=\"reference\""), 1u);
  EXPECT_NE(svg.find("stroke-dasharray=\"2,3\""), std::string::npos);
}

TEST(Scatter, NonFinitePointsAreCounted)
{
  auto s = make_series(3);
  s[1].report.per_attribute[0].dmig = std::numeric_limits<double>::infinity();
  const std::string svg = dmig::plot::render_scatter_svg(s, {Metric::mig, Metric::dmig});
  EXPECT_NE(svg.find("1 non-finite point(s) omitted"), std::string::npos);
  EXPECT_EQ(count(svg, "<circle"), 5u + 2u);
}

TEST(Scatter, Deterministic)
{
  PlotSpec spec{Metric::mig, Metric::scc, dmig::plot::Range{0.0, 0.15}, dmig::plot::Range{0.0, 1.0}, 800, 600};
  const auto s = make_series(6);
  const std::string a = dmig::plot::render_scatter_svg(s, spec);
  EXPECT_EQ(a, dmig::plot::render_scatter_svg(s, spec));
  EXPECT_NE(a.find("width=\"800\""), std::string::npos);
}

}  // namespace
