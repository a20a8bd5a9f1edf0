#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "varinf/corpus.hpp"
#include "varinf/spearman.hpp"
#include "varinf/survey.hpp"

namespace varinf {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CountryResult {
  Country country = Country::ES;
  std::size_t n_q = 0;
  std::size_t n_a = 0;
  double metric = kNaN;  // F1 (yes/no) or mean adjusted Jaccard (multiple choice)
  double baseline = kNaN;
  double delta = kNaN;  // metric - baseline
};

struct AreaResult {
  DialectalArea area = DialectalArea::Spain;
  std::size_t countries = 0;
  double mean_metric = kNaN;
  double mean_delta = kNaN;
};

// One line of the scores file. Yes/no questions carry their confusion cell
// ("tp", "fp", "fn", "tn") as kind and 1/0 correctness as raw value;
// multiple-choice questions carry "jaccard" with raw J and adjusted J_adj.
// Unscorable questions use kind "invalid" or "failed".
struct ScoreRecord {
  std::string question_id;
  Country country = Country::ES;
  std::string item;
  std::string kind;
  std::optional<double> raw;
  std::optional<double> adjusted;
  std::string detail;
};

// Descriptive per-country quantities used by the correlation analyses.
// Yes/no: gold_positive_rate, response_positive_rate.
// Multiple choice: mean_gold_size, mean_response_size, mean_variants,
// mean_jaccard.
struct CountryStats {
  Country country = Country::ES;
  std::map<std::string, double> values;
};

struct Evaluation {
  Format format = Format::Ynqf;
  std::vector<ScoreRecord> scores;  // batch order
  std::vector<CountryResult> countries;
  std::vector<CountryStats> stats;
};

// Scores a run against the corpus. The baseline column re-scores the
// matching baseline informant on the identical batch. Throws DataError when
// the run references questions the corpus cannot answer.
Evaluation evaluate_run(const SurveyRun& run, const Corpus& corpus);

std::vector<AreaResult> aggregate_area(const std::vector<CountryResult>& results);

using CountrySeries = std::map<Country, double>;

// A TSV keyed by a "country" (or "country_code") column; every other column
// numeric, with "NA"/empty meaning missing.
struct CountryTable {
  std::vector<std::string> columns;
  std::map<Country, std::map<std::string, double>> rows;
};

CountryTable read_country_table(const std::filesystem::path& path);
CountryTable parse_country_table(std::string_view tsv, const std::string& source = "<tsv>");
CountryTable to_table(const std::vector<CountryResult>& results);
CountryTable to_table(const std::vector<CountryStats>& stats);

// Column lookup with aliases: f1/j_adj/jadj -> metric, delta_f1/delta_j_adj
// -> delta, gdp -> gdp_usd. Missing values are dropped. Throws UsageError
// for an unknown column.
CountrySeries column(const CountryTable& table, std::string_view name);

// Reads a country report TSV back into results; checks delta == metric -
// baseline to 1e-9 and N_A <= N_Q.
std::vector<CountryResult> results_from_table(const CountryTable& table);

struct CorrelationPair {
  Country country;
  double x;
  double y;
};

struct Correlation {
  std::string x;
  std::string y;
  std::size_t n = 0;
  double rho = 0;
  double p = 1;
  std::vector<CorrelationPair> pairs;

  nlohmann::ordered_json to_json() const;
};

// Pairwise-complete Spearman over countries present in both series.
// Throws DataError when fewer than 3 countries overlap.
Correlation correlate(const CountrySeries& xs, const CountrySeries& ys, std::string x_name, std::string y_name,
                      PValueMethod method = PValueMethod::TApprox);

std::string country_table_tsv(const std::vector<CountryResult>& results);
std::string area_table_tsv(const std::vector<AreaResult>& areas);
std::string stats_table_tsv(const std::vector<CountryStats>& stats);
std::string scores_jsonl(const std::vector<ScoreRecord>& scores);

struct Scatter {
  std::string x;
  std::string y;
  CountrySeries xs;
  CountrySeries ys;
};

std::string scatter_csv(const Scatter& scatter);

struct Report {
  std::vector<CountryResult> countries;
  std::vector<AreaResult> areas;
  std::vector<Correlation> correlations;
  std::vector<Scatter> scatters;
};

// Writes countries.tsv, areas.tsv, correlations.json and one
// scatter_<x>_vs_<y>.csv per scatter into out_dir. Nothing is written when
// the report has no country rows.
std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& out_dir);

}  // namespace varinf
