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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dmig/dataio.hpp"
#include "dmig/errors.hpp"
#include "dmig/estimation.hpp"
#include "dmig/metrics.hpp"
#include "dmig/plot.hpp"
#include "dmig/synthetic.hpp"

namespace dmig::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int precision = 3)
{
  if (!std::isfinite(v)) return io::format_real(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pad(std::string s, std::size_t width, bool right_align = false)
{
  if (s.size() >= width) return s + " ";
  const std::string fill(width - s.size(), ' ');
  return right_align ? fill + s + " " : s + fill + " ";
}

std::string flags_text(const Flags& flags)
{
  if (flags.empty()) return "-";
  std::string out;
  for (Flag f : flags.list()) {
    if (!out.empty()) out += ',';
    out += to_string(f);
  }
  return out;
}

void print_report(std::ostream& out, const std::string& source, const Dataset& ds, const MetricReport& r)
{
  out << "dataset " << source << " (N=" << ds.rows() << ", D=" << ds.latent_dims() << ", M=" << ds.attribute_count()
      << ", digest " << r.dataset_digest << ")\n";
  out << pad("attribute", 14) << pad("mig", 9, true) << pad("dmig", 9, true) << pad("scc", 9, true) << pad("top", 5)
      << pad("runner-up", 10) << pad("branch", 14) << pad("denominator", 12, true) << "flags\n";
  for (const auto& a : r.per_attribute) {
    out << pad(a.name, 14) << pad(fixed(a.mig), 9, true) << pad(fixed(a.dmig), 9, true) << pad(fixed(a.scc), 9, true)
        << pad("z" + std::to_string(a.top_dim + 1), 5) << pad("z" + std::to_string(a.runner_up_dim + 1), 10)
        << pad(std::string(to_string(a.branch)), 14) << pad(fixed(a.denominator, 6), 12, true) << flags_text(a.flags)
        << "\n";
  }
  out << pad("mean", 14) << pad(fixed(r.mean_mig), 9, true) << pad(fixed(r.mean_dmig), 9, true) << "\n";
}

std::optional<plot::Range> parse_range(const std::string& text)
{
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::invalid_argument, "range must read lo,hi");
  return plot::Range{io::parse_real(text.substr(0, comma)), io::parse_real(text.substr(comma + 1))};
}

std::vector<std::vector<double>> parse_pmf(const std::string& text)
{
  std::vector<std::vector<double>> pmf;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<double> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(io::parse_real(cell));
    pmf.push_back(std::move(r));
  }
  return pmf;
}

void require_file(const fs::path& p)
{
  if (!fs::exists(p)) throw Error(ErrorCode::io, "no such file: '" + p.string() + "'");
}

// --- eval ------------------------------------------------------------------

struct EvalOptions {
  std::vector<std::string> datasets;
  EstimatorConfig cfg;
  std::string out;
  std::string series;
  unsigned threads = 0;
};

int cmd_eval(const EvalOptions& o, std::ostream& out)
{
  if (!o.out.empty() && o.datasets.size() != 1) {
    throw Error(ErrorCode::invalid_argument, "--out takes a single dataset; use --series for several");
  }
  o.cfg.validate();
  io::Series series;
  for (std::size_t e = 0; e < o.datasets.size(); ++e) {
    const fs::path path = o.datasets[e];
    require_file(path);
    const Dataset ds = io::read_dataset(path);
    MetricReport report = evaluate(ds, o.cfg, o.threads);
    if (e) out << "\n";
    print_report(out, path.string(), ds, report);
    series.push_back({e, std::move(report)});
  }
  if (!o.out.empty()) {
    io::write_report(series.front().report, o.out);
    out << "wrote report " << o.out << "\n";
  }
  if (!o.series.empty()) {
    io::write_series(series, o.series);
    out << "wrote series " << o.series << " (" << series.size() << " epochs)\n";
  }
  return kOk;
}

// --- synth -----------------------------------------------------------------

struct SynthOptions {
  std::string family;
  double rho = 0.8;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  std::size_t epochs = 30;
  std::string out_dir = ".";
  std::size_t d_total = 2;
  std::string pmf = "0.4,0.1;0.1,0.4";
  double sigma_max = 10.0;
  double sigma_min = 0.01;
};

void write_with_truth(const Dataset& ds, const synthetic::GroundTruth& truth, synthetic::Family family,
                      const fs::path& path, std::ostream& out)
{
  io::write_dataset(ds, path);
  io::write_truth({std::string(synthetic::to_string(family)), ds.rows(), truth}, io::truth_path_for(path));
  out << "wrote " << path.string() << " (+ " << io::truth_path_for(path).filename().string() << ")\n";
}

int cmd_synth(const SynthOptions& o, std::ostream& out)
{
  const auto family = synthetic::parse_family(o.family);
  if (!family) throw Error(ErrorCode::invalid_argument, "unknown family '" + o.family + "'");

  synthetic::SyntheticSpec spec;
  spec.family = *family;
  spec.n = o.n;
  spec.seed = o.seed;
  spec.rho = o.rho;
  spec.d_total = o.d_total;
  if (*family == synthetic::Family::discrete_joint) spec.pmf = parse_pmf(o.pmf);
  if (*family == synthetic::Family::trajectory) {
    spec.noise_schedule = synthetic::geometric_schedule(o.sigma_max, o.sigma_min, o.epochs);
  }
  spec.validate();

  fs::create_directories(o.out_dir);
  const fs::path dir = o.out_dir;
  switch (*family) {
    case synthetic::Family::gaussian_pair: {
      const auto s = synthetic::gen_gaussian_pair(spec);
      write_with_truth(s.dataset, s.truth, *family, dir / "gaussian_pair.csv", out);
      out << "ground truth: I(a1;a2) = " << fixed(s.truth.i_a1a2, 4) << " nats\n";
      break;
    }
    case synthetic::Family::discrete_joint: {
      const auto s = synthetic::gen_discrete_joint(spec);
      write_with_truth(s.dataset, s.truth, *family, dir / "discrete_joint.csv", out);
      out << "ground truth: I(a1;a2) = " << fixed(s.truth.i_a1a2, 4) << " nats\n";
      break;
    }
    case synthetic::Family::trajectory: {
      const auto truth = synthetic::gaussian_truth(spec.rho);
      for (const auto& e : synthetic::gen_trajectory(spec)) {
        char name[32];
        std::snprintf(name, sizeof name, "epoch_%03zu.csv", e.index);
        write_with_truth(e.dataset, truth, *family, dir / name, out);
      }
      break;
    }
  }
  return kOk;
}

// --- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::string dataset;
  double tol = 0.03;
  EstimatorConfig cfg;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out)
{
  o.cfg.validate();
  const fs::path path = o.dataset;
  require_file(path);
  const fs::path sidecar = io::truth_path_for(path);
  if (!fs::exists(sidecar)) throw Error(ErrorCode::io, "ground-truth sidecar not found: '" + sidecar.string() + "'");
  const Dataset ds = io::read_dataset(path);
  const io::TruthFile tf = io::read_truth(sidecar);
  if (ds.attribute_count() < 2 || tf.truth.h_a.size() < 2) {
    throw Error(ErrorCode::invalid_dataset, "oracle checks need two attributes");
  }

  const SampleColumn& a1 = ds.attribute(0);
  const SampleColumn& a2 = ds.attribute(1);
  struct Row {
    std::string quantity;
    double estimate;
    double truth;
  };
  const std::vector<Row> rows{
      {"H(a1)", entropy(a1, o.cfg), tf.truth.h_a[0]},
      {"H(a2)", entropy(a2, o.cfg), tf.truth.h_a[1]},
      {"I(a1;a2)", mutual_information(a1, a2, o.cfg).value, tf.truth.i_a1a2},
      {"H(a1|a2)", conditional_entropy(a1, a2, o.cfg), tf.truth.h_cond(0, 1)},
      {"H(a2|a1)", conditional_entropy(a2, a1, o.cfg), tf.truth.h_cond(1, 0)},
  };

  out << "oracle " << path.string() << " (family " << tf.family << ", N=" << ds.rows() << ", tol " << o.tol
      << " nats)\n";
  out << pad("quantity", 10) << pad("estimate", 11, true) << pad("truth", 11, true) << pad("error", 11, true)
      << "verdict\n";
  bool all_pass = true;
  for (const auto& r : rows) {
    const double error = std::fabs(r.estimate - r.truth);
    const bool pass = error <= o.tol;
    all_pass = all_pass && pass;
    out << pad(r.quantity, 10) << pad(fixed(r.estimate, 5), 11, true) << pad(fixed(r.truth, 5), 11, true)
        << pad(fixed(error, 5), 11, true) << (pass ? "pass" : "FAIL") << "\n";
  }
  out << (all_pass ? "all quantities within tolerance\n" : "some quantities outside tolerance\n");
  return all_pass ? kOk : kCheckFailed;
}

// --- plot ------------------------------------------------------------------

struct PlotOptions {
  std::string series;
  std::string x;
  std::string y;
  std::string out;
  std::string x_range;
  std::string y_range;
  int width = 640;
  int height = 480;
};

int cmd_plot(const PlotOptions& o, std::ostream& out)
{
  plot::PlotSpec spec;
  const auto x = plot::parse_metric(o.x);
  const auto y = plot::parse_metric(o.y);
  if (!x) throw Error(ErrorCode::invalid_argument, "unknown metric '" + o.x + "' (expected mig, dmig or scc)");
  if (!y) throw Error(ErrorCode::invalid_argument, "unknown metric '" + o.y + "' (expected mig, dmig or scc)");
  spec.x = *x;
  spec.y = *y;
  spec.x_range = parse_range(o.x_range);
  spec.y_range = parse_range(o.y_range);
  spec.width = o.width;
  spec.height = o.height;
  spec.validate();

  require_file(o.series);
  const io::Series series = io::read_series(o.series);
  io::write_text(o.out, plot::render_scatter_svg(series, spec));
  out << "wrote " << o.out << " (" << series.size() << " epochs)\n";
  return kOk;
}

void add_estimator_flags(CLI::App* cmd, EstimatorConfig& cfg)
{
  cmd->add_option("--k", cfg.k, "kNN neighbour count")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed for tie-breaking jitter")->capture_default_str();
  cmd->add_option("--jitter", cfg.jitter, "jitter amplitude relative to the column standard deviation")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Dependency-aware disentanglement metrics (MIG, DMIG) for latent representations"};
  app.name(args.empty() ? "dmig" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Compute MIG, DMIG and SCC for one or more datasets");
  eval->add_option("datasets", eval_opts.datasets, "dataset CSV files (in epoch order)")->required();
  add_estimator_flags(eval, eval_opts.cfg);
  eval->add_option("--out", eval_opts.out, "write the report for a single dataset to this path");
  eval->add_option("--series", eval_opts.series, "write all reports as an epoch series to this path");
  eval->add_option("--threads", eval_opts.threads, "worker threads (0 = hardware concurrency)")->capture_default_str();

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Generate synthetic datasets with ground-truth sidecars");
  synth->add_option("--family", synth_opts.family, "gaussian_pair, discrete_joint or trajectory")->required();
  synth->add_option("--rho", synth_opts.rho, "attribute correlation, |rho| < 1")->capture_default_str();
  synth->add_option("--n", synth_opts.n, "sample count")->capture_default_str();
  synth->add_option("--seed", synth_opts.seed, "generator seed")->capture_default_str();
  synth->add_option("--epochs", synth_opts.epochs, "trajectory length")->capture_default_str();
  synth->add_option("--out-dir", synth_opts.out_dir, "output directory")->capture_default_str();
  synth->add_option("--d-total", synth_opts.d_total, "total latent dimensions")->capture_default_str();
  synth->add_option("--pmf", synth_opts.pmf, "discrete joint table, rows separated by ';'")->capture_default_str();
  synth->add_option("--sigma-max", synth_opts.sigma_max, "trajectory encoder noise at the first epoch")
      ->capture_default_str();
  synth->add_option("--sigma-min", synth_opts.sigma_min, "trajectory encoder noise at the last epoch")
      ->capture_default_str();

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Compare estimates against a dataset's ground-truth sidecar");
  oracle->add_option("dataset", oracle_opts.dataset, "dataset CSV with a .truth sidecar")->required();
  oracle->add_option("--tol", oracle_opts.tol, "absolute tolerance in nats")->capture_default_str();
  add_estimator_flags(oracle, oracle_opts.cfg);

  PlotOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "Scatter one metric against another across epochs (SVG)");
  plot->add_option("series", plot_opts.series, "series file written by eval --series")->required();
  plot->add_option("--x", plot_opts.x, "x metric: mig, dmig or scc")->required();
  plot->add_option("--y", plot_opts.y, "y metric: mig, dmig or scc")->required();
  plot->add_option("--out", plot_opts.out, "output SVG path")->required();
  plot->add_option("--x-range", plot_opts.x_range, "fixed x range lo,hi");
  plot->add_option("--y-range", plot_opts.y_range, "fixed y range lo,hi");
  plot->add_option("--width", plot_opts.width, "canvas width in px")->capture_default_str();
  plot->add_option("--height", plot_opts.height, "canvas height in px")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kError;
  }

  try {
    if (*eval) return cmd_eval(eval_opts, out);
    if (*synth) return cmd_synth(synth_opts, out);
    if (*oracle) return cmd_oracle(oracle_opts, out);
    if (*plot) return cmd_plot(plot_opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace dmig::cli
