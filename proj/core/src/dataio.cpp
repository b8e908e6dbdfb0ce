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

#include "dmig/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dmig/errors.hpp"

namespace dmig::io {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(std::string_view source, std::size_t line, const std::string& msg)
{
  std::string where(source);
  if (line > 0) where += ":" + std::to_string(line);
  throw Error(ErrorCode::parse, where + ": " + msg);
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view s)
{
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "z7" -> 6
std::optional<std::size_t> parse_latent_token(std::string_view tok)
{
  if (tok.size() < 2 || tok.front() != 'z') return std::nullopt;
  auto k = parse_index(tok.substr(1));
  if (!k || *k == 0) return std::nullopt;
  return *k - 1;
}

std::string attribute_stem(std::string_view name) { return "a_" + std::string(name); }

// Drop one leading '_' so "a_bright" and "abright" both name "bright".
std::string name_from_stem(std::string_view stem)
{
  std::string_view rest = stem.substr(1);
  if (!rest.empty() && rest.front() == '_') rest.remove_prefix(1);
  return std::string(rest);
}

void check_format_line(std::string_view first, std::string_view source)
{
  if (trim(first) != kFormatLine) parse_fail(source, 1, "expected '" + std::string(kFormatLine) + "' as the first line");
}

// Splits "#format v1\n<json>" and parses the JSON part.
ordered_json parse_document(std::string_view text, std::string_view source, std::string_view kind)
{
  const std::size_t eol = text.find('\n');
  check_format_line(text.substr(0, eol), source);
  if (eol == std::string_view::npos) parse_fail(source, 0, "missing document body");
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.substr(eol + 1));
  } catch (const ordered_json::exception& e) {
    parse_fail(source, 0, e.what());
  }
  if (!doc.is_object() || doc.value("kind", "") != kind) {
    parse_fail(source, 0, "expected a '" + std::string(kind) + "' document");
  }
  return doc;
}

std::string render_document(const ordered_json& doc) { return std::string(kFormatLine) + "\n" + doc.dump(2) + "\n"; }

ordered_json real_to_json(double v)
{
  if (std::isfinite(v)) return v;
  return format_real(v);
}

double real_from_json(const ordered_json& j)
{
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real(j.get<std::string>());
  throw Error(ErrorCode::parse, "expected a number or one of +inf, -inf, nan");
}

ordered_json report_to_json(const MetricReport& r)
{
  ordered_json doc;
  doc["kind"] = "report";
  doc["config"] = {{"k", r.config.k}, {"jitter", r.config.jitter}, {"seed", r.config.seed}, {"unit", kUnit}};
  doc["dataset_digest"] = r.dataset_digest;
  doc["mean_mig"] = real_to_json(r.mean_mig);
  doc["mean_dmig"] = real_to_json(r.mean_dmig);
  ordered_json attrs = ordered_json::array();
  for (const auto& a : r.per_attribute) {
    ordered_json flags = ordered_json::array();
    for (Flag f : a.flags.list()) flags.push_back(to_string(f));
    attrs.push_back({
        {"name", a.name},
        {"mig", real_to_json(a.mig)},
        {"dmig", real_to_json(a.dmig)},
        {"scc", real_to_json(a.scc)},
        {"top_dim", a.top_dim + 1},
        {"runner_up_dim", a.runner_up_dim + 1},
        {"branch", to_string(a.branch)},
        {"denominator", real_to_json(a.denominator)},
        {"flags", flags},
    });
  }
  doc["attributes"] = attrs;
  return doc;
}

MetricReport report_from_json(const ordered_json& doc)
{
  MetricReport r;
  const auto& cfg = doc.at("config");
  if (cfg.at("unit").get<std::string>() != kUnit) throw Error(ErrorCode::parse, "unsupported unit");
  r.config.k = cfg.at("k").get<int>();
  r.config.jitter = real_from_json(cfg.at("jitter"));
  r.config.seed = cfg.at("seed").get<std::uint64_t>();
  r.dataset_digest = doc.at("dataset_digest").get<std::string>();
  r.mean_mig = real_from_json(doc.at("mean_mig"));
  r.mean_dmig = real_from_json(doc.at("mean_dmig"));
  for (const auto& a : doc.at("attributes")) {
    AttributeMetrics m;
    m.name = a.at("name").get<std::string>();
    m.mig = real_from_json(a.at("mig"));
    m.dmig = real_from_json(a.at("dmig"));
    m.scc = real_from_json(a.at("scc"));
    const auto top = a.at("top_dim").get<std::size_t>();
    const auto runner = a.at("runner_up_dim").get<std::size_t>();
    if (top == 0 || runner == 0) throw Error(ErrorCode::parse, "latent dimensions are 1-based");
    m.top_dim = top - 1;
    m.runner_up_dim = runner - 1;
    const auto branch = a.at("branch").get<std::string>();
    if (branch == "regularized") {
      m.branch = Branch::regularized;
    } else if (branch == "unregularized") {
      m.branch = Branch::unregularized;
    } else {
      throw Error(ErrorCode::parse, "unknown branch '" + branch + "'");
    }
    m.denominator = real_from_json(a.at("denominator"));
    for (const auto& f : a.at("flags")) {
      auto flag = parse_flag(f.get<std::string>());
      if (!flag) throw Error(ErrorCode::parse, "unknown flag '" + f.get<std::string>() + "'");
      m.flags.set(*flag);
    }
    r.per_attribute.push_back(std::move(m));
  }
  return r;
}

template <typename Fn>
auto decode(std::string_view source, Fn&& fn)
{
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw e.with_context(source);
    throw;
  } catch (const ordered_json::exception& e) {
    parse_fail(source, 0, e.what());
  }
}

}  // namespace

std::string format_real(double v)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_real(std::string_view text)
{
  text = trim(text);
  if (text == "+inf" || text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::parse, "malformed number '" + std::string(text) + "'");
  }
  return v;
}

std::string read_text(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::io, "error while writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Dataset CSV

Dataset parse_dataset(std::istream& in, std::string_view source)
{
  struct Column {
    bool latent = false;
    std::size_t index = 0;  // latent dimension or attribute index
  };
  struct MapLine {
    std::string stem;
    std::size_t dim;
    std::size_t line;
  };

  std::string raw;
  std::size_t line_no = 0;
  bool have_format = false;
  bool have_header = false;
  std::vector<Column> columns;
  std::vector<std::string> stems;
  std::vector<Kind> kinds;
  std::size_t latent_count = 0;
  std::vector<MapLine> map_lines;
  std::vector<std::vector<double>> latents;
  std::vector<std::vector<double>> attrs;
  std::size_t rows = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (!have_format) {
      check_format_line(line, source);
      have_format = true;
      continue;
    }
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.substr(0, 5) == "#map ") {
        const auto body = trim(line.substr(5));
        const std::size_t arrow = body.find("->");
        if (arrow == std::string_view::npos) parse_fail(source, line_no, "map line must read '#map a<name> -> z<k>'");
        std::string_view lhs = trim(body.substr(0, arrow));
        const auto dim = parse_latent_token(trim(body.substr(arrow + 2)));
        if (lhs.size() < 2 || lhs.front() != 'a' || !dim) {
          parse_fail(source, line_no, "map line must read '#map a<name> -> z<k>'");
        }
        if (auto colon = lhs.find(':'); colon != std::string_view::npos) lhs = lhs.substr(0, colon);
        map_lines.push_back({std::string(lhs), *dim, line_no});
      }
      continue;
    }

    const auto fields = split(line, ',');
    if (!have_header) {
      std::vector<bool> seen;
      for (const auto tok : fields) {
        if (auto d = parse_latent_token(tok)) {
          if (*d >= seen.size()) seen.resize(*d + 1, false);
          if (seen[*d]) parse_fail(source, line_no, "duplicate latent column '" + std::string(tok) + "'");
          seen[*d] = true;
          columns.push_back({true, *d});
          ++latent_count;
        } else if (tok.size() > 1 && tok.front() == 'a' && tok.find(':') != std::string_view::npos) {
          const std::size_t colon = tok.find(':');
          const auto kind = tok.substr(colon + 1);
          const auto stem = std::string(tok.substr(0, colon));
          if (kind == "cont") {
            kinds.push_back(Kind::continuous);
          } else if (kind == "disc") {
            kinds.push_back(Kind::discrete);
          } else {
            parse_fail(source, line_no, "attribute kind must be 'cont' or 'disc' in '" + std::string(tok) + "'");
          }
          if (stem.size() < 2 || std::find(stems.begin(), stems.end(), stem) != stems.end()) {
            parse_fail(source, line_no, "invalid or duplicate attribute column '" + std::string(tok) + "'");
          }
          columns.push_back({false, stems.size()});
          stems.push_back(stem);
        } else {
          parse_fail(source, line_no,
                     "header column '" + std::string(tok) + "' is neither z<k> nor a<name>:<cont|disc>");
        }
      }
      if (latent_count == 0) parse_fail(source, line_no, "header declares no latent columns");
      if (seen.size() != latent_count) parse_fail(source, line_no, "latent columns must be z1..zD without gaps");
      latents.resize(latent_count);
      attrs.resize(stems.size());
      have_header = true;
      continue;
    }

    ++rows;
    if (fields.size() != columns.size()) {
      parse_fail(source, line_no,
                 "row " + std::to_string(rows) + " has " + std::to_string(fields.size()) + " fields, expected " +
                     std::to_string(columns.size()));
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      double v = 0.0;
      try {
        v = parse_real(fields[c]);
      } catch (const Error&) {
        parse_fail(source, line_no, "row " + std::to_string(rows) + ": malformed number '" + std::string(fields[c]) + "'");
      }
      if (!std::isfinite(v)) {
        parse_fail(source, line_no,
                   "row " + std::to_string(rows) + ": non-finite value '" + std::string(fields[c]) + "'");
      }
      if (columns[c].latent) {
        latents[columns[c].index].push_back(v);
      } else {
        if (kinds[columns[c].index] == Kind::discrete && std::trunc(v) != v) {
          parse_fail(source, line_no,
                     "row " + std::to_string(rows) + ": discrete attribute '" + stems[columns[c].index] +
                         "' has non-integer code '" + std::string(fields[c]) + "'");
        }
        attrs[columns[c].index].push_back(v);
      }
    }
  }
  if (!have_format) parse_fail(source, 0, "empty file");
  if (!have_header) parse_fail(source, 0, "missing header row");
  if (rows < 2) parse_fail(source, 0, "need at least 2 data rows, got " + std::to_string(rows));

  std::vector<std::size_t> map(stems.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  std::vector<bool> mapped(stems.size(), false);
  std::map<std::size_t, std::size_t> claimed;  // latent dim -> map line
  for (const auto& ml : map_lines) {
    auto it = std::find(stems.begin(), stems.end(), ml.stem);
    if (it == stems.end()) parse_fail(source, ml.line, "map refers to unknown attribute '" + ml.stem + "'");
    const auto i = static_cast<std::size_t>(it - stems.begin());
    if (mapped[i]) parse_fail(source, ml.line, "attribute '" + ml.stem + "' is mapped twice");
    if (ml.dim >= latent_count) {
      parse_fail(source, ml.line, "map target z" + std::to_string(ml.dim + 1) + " does not exist");
    }
    if (auto c = claimed.find(ml.dim); c != claimed.end()) {
      parse_fail(source, ml.line,
                 "map is not injective: z" + std::to_string(ml.dim + 1) + " already claimed on line " +
                     std::to_string(c->second));
    }
    claimed[ml.dim] = ml.line;
    mapped[i] = true;
    map[i] = ml.dim;
  }

  std::vector<SampleColumn> columns_out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    columns_out.emplace_back(std::move(attrs[i]), kinds[i]);
    names.push_back(name_from_stem(stems[i]));
  }
  try {
    return Dataset(std::move(latents), std::move(columns_out), std::move(names), std::move(map));
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, std::string(source) + ": " + e.what());
  }
}

Dataset read_dataset(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  return parse_dataset(in, path.string());
}

std::string format_dataset(const Dataset& ds)
{
  std::string out(kFormatLine);
  out += '\n';
  const auto& map = ds.regularized_map();
  bool identity = true;
  for (std::size_t i = 0; i < map.size(); ++i) identity = identity && map[i] == i;
  if (!identity) {
    for (std::size_t i = 0; i < map.size(); ++i) {
      out += "#map " + attribute_stem(ds.name(i)) + " -> z" + std::to_string(map[i] + 1) + "\n";
    }
  }
  for (std::size_t d = 0; d < ds.latent_dims(); ++d) {
    if (d) out += ',';
    out += "z" + std::to_string(d + 1);
  }
  for (std::size_t i = 0; i < ds.attribute_count(); ++i) {
    out += "," + attribute_stem(ds.name(i)) + (ds.attribute(i).is_discrete() ? ":disc" : ":cont");
  }
  out += '\n';
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t d = 0; d < ds.latent_dims(); ++d) {
      if (d) out += ',';
      out += format_real(ds.latent(d).values()[r]);
    }
    for (std::size_t i = 0; i < ds.attribute_count(); ++i) {
      out += ',';
      out += format_real(ds.attribute(i).values()[r]);
    }
    out += '\n';
  }
  return out;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) { write_text(path, format_dataset(ds)); }

// ---------------------------------------------------------------------------
// Reports and series

std::string format_report(const MetricReport& report) { return render_document(report_to_json(report)); }

MetricReport parse_report(std::string_view text, std::string_view source)
{
  const ordered_json doc = parse_document(text, source, "report");
  return decode(source, [&] { return report_from_json(doc); });
}

void write_report(const MetricReport& report, const std::filesystem::path& path)
{
  write_text(path, format_report(report));
}

MetricReport read_report(const std::filesystem::path& path)
{
  return parse_report(read_text(path), path.string());
}

void check_series(const Series& series)
{
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (series[t].epoch <= series[t - 1].epoch) {
      throw Error(ErrorCode::invalid_argument, "series epochs must be strictly increasing (epoch " +
                                                   std::to_string(series[t].epoch) + " follows " +
                                                   std::to_string(series[t - 1].epoch) + ")");
    }
  }
}

std::string format_series(const Series& series)
{
  check_series(series);
  ordered_json doc;
  doc["kind"] = "series";
  ordered_json epochs = ordered_json::array();
  for (const auto& e : series) {
    ordered_json rep = report_to_json(e.report);
    rep.erase("kind");
    epochs.push_back({{"epoch", e.epoch}, {"report", rep}});
  }
  doc["epochs"] = epochs;
  return render_document(doc);
}

Series parse_series(std::string_view text, std::string_view source)
{
  const ordered_json doc = parse_document(text, source, "series");
  Series series = decode(source, [&] {
    Series s;
    for (const auto& e : doc.at("epochs")) s.push_back({e.at("epoch").get<std::size_t>(), report_from_json(e.at("report"))});
    return s;
  });
  try {
    check_series(series);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, std::string(source) + ": " + e.what());
  }
  return series;
}

void write_series(const Series& series, const std::filesystem::path& path) { write_text(path, format_series(series)); }

Series read_series(const std::filesystem::path& path) { return parse_series(read_text(path), path.string()); }

// ---------------------------------------------------------------------------
// Ground-truth sidecars

std::filesystem::path truth_path_for(const std::filesystem::path& dataset)
{
  std::filesystem::path p = dataset;
  p += ".truth";
  return p;
}

std::string format_truth(const TruthFile& t)
{
  ordered_json doc;
  doc["kind"] = "truth";
  doc["family"] = t.family;
  doc["n"] = t.n;
  doc["unit"] = kUnit;
  ordered_json h_a = ordered_json::array();
  for (double h : t.truth.h_a) h_a.push_back(real_to_json(h));
  doc["h_a"] = h_a;
  doc["i_a1a2"] = real_to_json(t.truth.i_a1a2);
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < t.truth.h_cond.rows; ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < t.truth.h_cond.cols; ++c) row.push_back(real_to_json(t.truth.h_cond(r, c)));
    rows.push_back(row);
  }
  doc["h_cond"] = rows;
  doc["ideal_dmig"] = t.truth.ideal_dmig ? real_to_json(*t.truth.ideal_dmig) : ordered_json(nullptr);
  return render_document(doc);
}

TruthFile parse_truth(std::string_view text, std::string_view source)
{
  const ordered_json doc = parse_document(text, source, "truth");
  return decode(source, [&] {
    TruthFile t;
    t.family = doc.at("family").get<std::string>();
    t.n = doc.at("n").get<std::size_t>();
    for (const auto& h : doc.at("h_a")) t.truth.h_a.push_back(real_from_json(h));
    t.truth.i_a1a2 = real_from_json(doc.at("i_a1a2"));
    const auto& rows = doc.at("h_cond");
    const std::size_t n = rows.size();
    t.truth.h_cond = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) throw Error(ErrorCode::parse, "h_cond must be square");
      for (std::size_t c = 0; c < n; ++c) t.truth.h_cond(r, c) = real_from_json(rows[r][c]);
    }
    if (!doc.at("ideal_dmig").is_null()) t.truth.ideal_dmig = real_from_json(doc.at("ideal_dmig"));
    return t;
  });
}

void write_truth(const TruthFile& t, const std::filesystem::path& path) { write_text(path, format_truth(t)); }

TruthFile read_truth(const std::filesystem::path& path) { return parse_truth(read_text(path), path.string()); }

}  // namespace dmig::io
