#include "varinf/analysis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/metrics.hpp"
#include "varinf/parse.hpp"

namespace varinf {
namespace {

struct Accumulator {
  std::size_t n_q = 0;
  std::size_t n_a = 0;
  BinaryConfusion confusion;
  BinaryConfusion baseline_confusion;
  double adjusted_sum = 0;
  double baseline_sum = 0;
  std::size_t baseline_n = 0;
  // descriptive stats
  std::size_t gold_positive = 0;
  std::size_t response_positive = 0;
  double gold_size_sum = 0;
  double response_size_sum = 0;
  double variants_sum = 0;
  double jaccard_sum = 0;
};

std::set<int> gold_indices(const Corpus& corpus, const McQuestion& q) {
  const auto gold = gold_set(corpus, q.item, q.country);
  std::set<int> out;
  for (std::size_t i = 0; i < q.options.size(); ++i)
    if (gold.count(q.options[i])) out.insert(static_cast<int>(i + 1));
  return out;
}

std::string_view cell_name(bool gold, bool pred) {
  if (gold) return pred ? "tp" : "fn";
  return pred ? "fp" : "tn";
}

double mean_or_nan(double sum, std::size_t n) { return n == 0 ? kNaN : sum / static_cast<double>(n); }

// Column names are case-insensitive.
std::string canonical_column(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> aliases{
      {"f1", "metric"},          {"j_adj", "metric"},      {"jadj", "metric"}, {"delta_f1", "delta"},
      {"delta_j_adj", "delta"}, {"delta_jadj", "delta"}, {"gdp", "gdp_usd"},
  };
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  auto it = aliases.find(lower);
  return it == aliases.end() ? lower : it->second;
}

}  // namespace

Evaluation evaluate_run(const SurveyRun& run, const Corpus& corpus) {
  check_batch_against(run.batch, corpus);
  Evaluation ev;
  ev.format = run.batch.format;
  std::array<Accumulator, kCountryCount> acc{};

  for (std::size_t i = 0; i < run.batch.questions.size(); ++i) {
    const auto& q = run.batch.questions[i];
    const auto* response = run.find(question_id(q));
    if (response == nullptr) throw DataError("run has no response for question " + question_id(q));
    auto& a = acc[index_of(question_country(q))];
    ++a.n_q;

    ScoreRecord rec{question_id(q), question_country(q), question_item(q), {}, {}, {}, {}};

    if (const auto* yn = std::get_if<YnQuestion>(&q)) {
      const bool gold = gold_set(corpus, yn->item, yn->country).count(yn->variant) > 0;
      a.gold_positive += gold;
      a.baseline_confusion.add(gold, parse_ynqf(baseline_answer(q)).kind == ParsedResponse::Kind::Yes);
      if (!response->raw) {
        rec.kind = "failed";
        rec.detail = response->failure.value_or("");
      } else if (auto parsed = parse_ynqf(*response->raw); !parsed.valid()) {
        rec.kind = "invalid";
        rec.detail = parsed.reason;
      } else {
        const bool pred = parsed.kind == ParsedResponse::Kind::Yes;
        ++a.n_a;
        a.response_positive += pred;
        a.confusion.add(gold, pred);
        rec.kind = cell_name(gold, pred);
        rec.raw = gold == pred ? 1.0 : 0.0;
      }
    } else {
      const auto& mc = std::get<McQuestion>(q);
      const auto n = mc.options.size();
      const auto gold = gold_indices(corpus, mc);
      if (gold.empty()) throw DataError("question " + mc.id + " has an empty gold set");
      const auto base = parse_mcqf(baseline_answer(q), static_cast<int>(n));
      a.baseline_sum += adjusted_jaccard(gold, std::set<int>(base.selection.begin(), base.selection.end()), n);
      ++a.baseline_n;
      if (!response->raw) {
        rec.kind = "failed";
        rec.detail = response->failure.value_or("");
      } else if (auto parsed = parse_mcqf(*response->raw, static_cast<int>(n)); !parsed.valid()) {
        rec.kind = "invalid";
        rec.detail = parsed.reason;
      } else {
        const std::set<int> pred(parsed.selection.begin(), parsed.selection.end());
        const double j = jaccard(gold, pred);
        const double adj = adjusted_jaccard(gold, pred, n);
        ++a.n_a;
        a.adjusted_sum += adj;
        a.jaccard_sum += j;
        a.gold_size_sum += static_cast<double>(gold.size());
        a.response_size_sum += static_cast<double>(pred.size());
        a.variants_sum += static_cast<double>(n);
        rec.kind = "jaccard";
        rec.raw = j;
        rec.adjusted = adj;
      }
    }
    ev.scores.push_back(std::move(rec));
  }

  for (Country c : all_countries()) {
    const auto& a = acc[index_of(c)];
    if (a.n_q == 0) continue;
    CountryResult r{c, a.n_q, a.n_a, kNaN, kNaN, kNaN};
    CountryStats s{c, {}};
    if (ev.format == Format::Ynqf) {
      r.metric = a.n_a == 0 ? kNaN : a.confusion.f1();
      r.baseline = a.baseline_confusion.f1();
      s.values["gold_positive_rate"] = mean_or_nan(static_cast<double>(a.gold_positive), a.n_q);
      s.values["response_positive_rate"] = mean_or_nan(static_cast<double>(a.response_positive), a.n_a);
    } else {
      r.metric = mean_or_nan(a.adjusted_sum, a.n_a);
      r.baseline = mean_or_nan(a.baseline_sum, a.baseline_n);
      s.values["mean_gold_size"] = mean_or_nan(a.gold_size_sum, a.n_a);
      s.values["mean_response_size"] = mean_or_nan(a.response_size_sum, a.n_a);
      s.values["mean_variants"] = mean_or_nan(a.variants_sum, a.n_a);
      s.values["mean_jaccard"] = mean_or_nan(a.jaccard_sum, a.n_a);
    }
    r.delta = r.metric - r.baseline;
    ev.countries.push_back(r);
    ev.stats.push_back(std::move(s));
  }
  return ev;
}

std::vector<AreaResult> aggregate_area(const std::vector<CountryResult>& results) {
  std::vector<AreaResult> out;
  for (DialectalArea area : all_areas()) {
    AreaResult r{area, 0, kNaN, kNaN};
    double metric_sum = 0, delta_sum = 0;
    std::size_t metric_n = 0, delta_n = 0;
    for (const auto& c : results) {
      if (area_of(c.country) != area) continue;
      ++r.countries;
      if (!std::isnan(c.metric)) metric_sum += c.metric, ++metric_n;
      if (!std::isnan(c.delta)) delta_sum += c.delta, ++delta_n;
    }
    if (r.countries == 0) continue;
    r.mean_metric = mean_or_nan(metric_sum, metric_n);
    r.mean_delta = mean_or_nan(delta_sum, delta_n);
    out.push_back(r);
  }
  return out;
}

CountryTable parse_country_table(std::string_view tsv, const std::string& source) {
  CountryTable table;
  auto lines = io::split(tsv, '\n');
  std::size_t ln = 0;
  while (ln < lines.size() && io::trim(lines[ln]).empty()) ++ln;
  if (ln == lines.size()) throw DataError(source + ": empty table");
  auto header = io::split(io::trim(lines[ln]), '\t');
  if (header.empty() || (header[0] != "country" && header[0] != "country_code")) {
    throw DataError(source + ": first column must be 'country' or 'country_code'");
  }
  for (std::size_t i = 1; i < header.size(); ++i) table.columns.push_back(canonical_column(io::trim(header[i])));
  for (++ln; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (io::trim(line).empty()) continue;
    const auto where = source + ":" + std::to_string(ln + 1);
    auto cells = io::split(line, '\t');
    if (cells.size() != header.size()) throw DataError(where + ": wrong number of cells");
    auto country = parse_country(io::trim(cells[0]));
    if (!country) throw DataError(where + ": unknown country '" + cells[0] + "'");
    if (table.rows.count(*country)) throw DataError(where + ": duplicate country");
    auto& row = table.rows[*country];
    for (std::size_t i = 1; i < cells.size(); ++i) {
      try {
        row[table.columns[i - 1]] = io::parse_double(cells[i]);
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
    }
  }
  return table;
}

CountryTable read_country_table(const std::filesystem::path& path) {
  return parse_country_table(io::read_file(path), path.string());
}

CountryTable to_table(const std::vector<CountryResult>& results) {
  CountryTable t;
  t.columns = {"n_q", "n_a", "metric", "baseline", "delta"};
  for (const auto& r : results) {
    t.rows[r.country] = {{"n_q", static_cast<double>(r.n_q)},
                         {"n_a", static_cast<double>(r.n_a)},
                         {"metric", r.metric},
                         {"baseline", r.baseline},
                         {"delta", r.delta}};
  }
  return t;
}

CountryTable to_table(const std::vector<CountryStats>& stats) {
  CountryTable t;
  for (const auto& s : stats) {
    for (const auto& [k, v] : s.values) {
      if (std::find(t.columns.begin(), t.columns.end(), k) == t.columns.end()) t.columns.push_back(k);
      t.rows[s.country][k] = v;
    }
  }
  return t;
}

CountrySeries column(const CountryTable& table, std::string_view name) {
  const auto key = canonical_column(name);
  if (std::find(table.columns.begin(), table.columns.end(), key) == table.columns.end()) {
    throw UsageError("unknown column '" + std::string(name) + "'");
  }
  CountrySeries out;
  for (const auto& [c, row] : table.rows) {
    auto it = row.find(key);
    if (it != row.end() && !std::isnan(it->second)) out[c] = it->second;
  }
  return out;
}

std::vector<CountryResult> results_from_table(const CountryTable& table) {
  auto has = [&](const char* k) { return std::find(table.columns.begin(), table.columns.end(), k) != table.columns.end(); };
  if (!has("metric") || !has("baseline")) throw DataError("country table needs metric and baseline columns");
  std::vector<CountryResult> out;
  for (const auto& [c, row] : table.rows) {
    auto get = [&](const char* k) {
      auto it = row.find(k);
      return it == row.end() ? kNaN : it->second;
    };
    CountryResult r;
    r.country = c;
    r.metric = get("metric");
    r.baseline = get("baseline");
    r.delta = r.metric - r.baseline;
    const double n_a = get("n_a");
    const double n_q = has("n_q") ? get("n_q") : n_a;
    r.n_a = std::isnan(n_a) ? 0 : static_cast<std::size_t>(n_a);
    r.n_q = std::isnan(n_q) ? 0 : static_cast<std::size_t>(n_q);
    if (r.n_a > r.n_q) throw DataError(std::string(country_code(c)) + ": N_A exceeds N_Q");
    if (has("delta")) {
      const double stated = get("delta");
      if (!(std::isnan(stated) && std::isnan(r.delta)) && !(std::abs(stated - r.delta) <= 1e-9)) {
        throw DataError(std::string(country_code(c)) + ": delta " + io::format_double(stated) +
                        " differs from metric - baseline " + io::format_double(r.delta));
      }
    }
    out.push_back(r);
  }
  return out;
}

nlohmann::ordered_json Correlation::to_json() const {
  nlohmann::ordered_json j;
  j["x"] = x;
  j["y"] = y;
  j["n"] = n;
  j["rho"] = rho;
  j["p"] = p;
  auto& list = j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& pr : pairs) list.push_back({{"country", country_code(pr.country)}, {"x", pr.x}, {"y", pr.y}});
  return j;
}

Correlation correlate(const CountrySeries& xs, const CountrySeries& ys, std::string x_name, std::string y_name,
                      PValueMethod method) {
  Correlation out{std::move(x_name), std::move(y_name), 0, 0, 1, {}};
  for (Country c : all_countries()) {
    auto ix = xs.find(c);
    auto iy = ys.find(c);
    if (ix == xs.end() || iy == ys.end() || std::isnan(ix->second) || std::isnan(iy->second)) continue;
    out.pairs.push_back({c, ix->second, iy->second});
  }
  out.n = out.pairs.size();
  if (out.n < 3) {
    throw DataError("correlate " + out.x + " vs " + out.y + ": only " + std::to_string(out.n) +
                    " countries with both values (need 3)");
  }
  std::vector<double> a, b;
  for (const auto& pr : out.pairs) a.push_back(pr.x), b.push_back(pr.y);
  const auto r = spearman(a, b, method);
  out.rho = r.rho;
  out.p = r.p;
  return out;
}

std::string country_table_tsv(const std::vector<CountryResult>& results) {
  std::string out = "country\tN_Q\tN_A\tmetric\tbaseline\tdelta\n";
  for (const auto& r : results) {
    out += std::string(country_code(r.country)) + '\t' + std::to_string(r.n_q) + '\t' + std::to_string(r.n_a) +
           '\t' + io::format_double(r.metric) + '\t' + io::format_double(r.baseline) + '\t' +
           io::format_double(r.delta) + '\n';
  }
  return out;
}

std::string area_table_tsv(const std::vector<AreaResult>& areas) {
  std::string out = "area\tmean_metric\tmean_delta\n";
  for (const auto& a : areas) {
    out += std::string(area_name(a.area)) + '\t' + io::format_double(a.mean_metric) + '\t' +
           io::format_double(a.mean_delta) + '\n';
  }
  return out;
}

std::string stats_table_tsv(const std::vector<CountryStats>& stats) {
  const auto table = to_table(stats);
  std::string out = "country";
  for (const auto& c : table.columns) out += '\t' + c;
  out += '\n';
  for (const auto& [country, row] : table.rows) {
    out += country_code(country);
    for (const auto& c : table.columns) {
      auto it = row.find(c);
      out += '\t' + io::format_double(it == row.end() ? kNaN : it->second);
    }
    out += '\n';
  }
  return out;
}

std::string scores_jsonl(const std::vector<ScoreRecord>& scores) {
  std::string out;
  for (const auto& s : scores) {
    nlohmann::ordered_json j;
    j["id"] = s.question_id;
    j["country"] = country_code(s.country);
    j["item"] = s.item;
    j["kind"] = s.kind;
    j["raw"] = s.raw ? nlohmann::ordered_json(*s.raw) : nullptr;
    j["adjusted"] = s.adjusted ? nlohmann::ordered_json(*s.adjusted) : nullptr;
    if (!s.detail.empty()) j["detail"] = s.detail;
    out += j.dump() + '\n';
  }
  return out;
}

std::string scatter_csv(const Scatter& scatter) {
  std::string out = "country,x,y,area\n";
  for (Country c : all_countries()) {
    auto ix = scatter.xs.find(c);
    auto iy = scatter.ys.find(c);
    if (ix == scatter.xs.end() || iy == scatter.ys.end()) continue;
    out += std::string(country_code(c)) + ',' + io::format_double(ix->second) + ',' +
           io::format_double(iy->second) + ',' + std::string(area_name(area_of(c))) + '\n';
  }
  return out;
}

std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& out_dir) {
  if (report.countries.empty()) throw UsageError("report: no country results to write");
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  files.emplace_back(out_dir / "countries.tsv", country_table_tsv(report.countries));
  files.emplace_back(out_dir / "areas.tsv", area_table_tsv(report.areas));
  nlohmann::ordered_json corr = nlohmann::ordered_json::array();
  for (const auto& c : report.correlations) corr.push_back(c.to_json());
  files.emplace_back(out_dir / "correlations.json", corr.dump(2) + "\n");
  for (const auto& s : report.scatters) {
    files.emplace_back(out_dir / ("scatter_" + s.x + "_vs_" + s.y + ".csv"), scatter_csv(s));
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [path, contents] : files) {
    io::write_file_atomic(path, contents);
    written.push_back(path);
  }
  return written;
}

}  // namespace varinf
