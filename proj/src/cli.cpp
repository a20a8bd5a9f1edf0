#include "varinf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "varinf/analysis.hpp"
#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/self_test.hpp"
#include "varinf/survey.hpp"

namespace varinf {
namespace {

struct IngestArgs {
  std::string tsv, out;
};

struct ValidateArgs {
  std::string corpus;
};

struct GenArgs {
  std::string corpus, format, out;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
};

struct SurveyArgs {
  std::string corpus, batch, informant, out;
  std::optional<std::uint64_t> seed;
  double epsilon = 0.0;
  RemoteConfig remote;
  std::size_t max_in_flight = 4;
  int max_attempts = 3;
  long backoff_ms = 500;
  std::string created_at;
};

struct EvalArgs {
  std::string corpus, run, out;
};

struct AnalyzeArgs {
  std::string x, y, table, covariates, out;
  bool exact = false;
};

struct ReportArgs {
  std::string table, stats, covariates, out;
  std::vector<std::string> correlate, scatter;
  bool exact = false;
};

struct SelfTestArgs {
  std::string corpus;
};

// "column" or "column@file". Columns found in the covariate file resolve
// there, everything else against the default table.
struct Selector {
  std::string name;
  CountrySeries series;
};

Selector resolve(const std::string& selector, const std::string& default_table, const std::string& covariates) {
  std::string col = selector;
  std::string file;
  if (auto at = selector.find('@'); at != std::string::npos) {
    col = selector.substr(0, at);
    file = selector.substr(at + 1);
  }
  std::string name = col;
  if (!file.empty()) {
    name += "@" + std::filesystem::path(file).stem().string();
    return {name, column(read_country_table(file), col)};
  }
  if (!covariates.empty()) {
    auto cov = read_country_table(covariates);
    try {
      return {name, column(cov, col)};
    } catch (const UsageError&) {
    }
  }
  if (default_table.empty()) throw UsageError("no table given for column '" + col + "' (use --table or col@file)");
  return {name, column(read_country_table(default_table), col)};
}

std::string file_safe(std::string s) {
  for (auto& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  return s;
}

std::pair<std::string, std::string> split_pair(const std::string& selector) {
  auto comma = selector.find(',');
  if (comma == std::string::npos) throw UsageError("expected X,Y but got '" + selector + "'");
  return {selector.substr(0, comma), selector.substr(comma + 1)};
}

// Replaces "survey --config FILE" by the file's key = value pairs, spliced in
// right after "survey" so that explicit flags (last occurrence wins) override
// them. Keys may sit at top level or under a [survey] section; underscores
// and dashes are interchangeable.
std::vector<std::string> expand_survey_config(const std::vector<std::string>& args) {
  const auto sub = std::find(args.begin(), args.end(), "survey");
  if (sub == args.end()) return args;
  std::vector<std::string> head(args.begin(), sub + 1);
  std::vector<std::string> rest;
  std::string file;
  for (auto it = sub + 1; it != args.end(); ++it) {
    if (*it == "--config") {
      if (it + 1 == args.end()) throw UsageError("--config needs a file name");
      file = *++it;
    } else if (it->rfind("--config=", 0) == 0) {
      file = it->substr(9);
    } else {
      rest.push_back(*it);
    }
  }
  if (file.empty()) return args;
  std::istringstream in(io::read_file(file));
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && item.parents != std::vector<std::string>{"survey"}) {
      throw UsageError(file + ": unexpected section for key '" + item.fullname() + "'");
    }
    std::string flag = "--" + item.name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    head.push_back(flag);
    head.insert(head.end(), item.inputs.begin(), item.inputs.end());
  }
  head.insert(head.end(), rest.begin(), rest.end());
  return head;
}

std::unique_ptr<Informant> make_informant(const SurveyArgs& a, const Corpus& corpus, std::uint64_t seed) {
  if (a.informant == "baseline-yes") return std::make_unique<BaselineYesInformant>();
  if (a.informant == "baseline-first3") return std::make_unique<BaselineFirst3Informant>();
  if (a.informant == "oracle") return std::make_unique<OracleInformant>(corpus);
  if (a.informant == "noisy-oracle") return std::make_unique<NoisyOracleInformant>(corpus, a.epsilon, seed);
  if (a.informant == "remote-llm") return std::make_unique<RemoteLlmInformant>(a.remote);
  throw UsageError("unknown informant '" + a.informant + "'");
}

int run_ingest(const IngestArgs& a, std::ostream& out) {
  auto corpus = ingest_tsv(a.tsv);
  auto report = validate_corpus(corpus);
  if (!report.valid()) throw DataError("ingested corpus is invalid: " + report.violations.front().describe());
  save_corpus(corpus, a.out);
  out << "wrote " << a.out << ": " << report.items << " items, " << report.variants << " variants\n";
  return kExitOk;
}

int run_validate(const ValidateArgs& a, std::ostream& out) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(io::read_file(a.corpus));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(a.corpus + ": malformed JSON: " + e.what());
  }
  const auto corpus = parse_corpus_json(doc);
  const auto report = validate_corpus(corpus);
  auto j = report.to_json();
  j["ynqf_universe"] = corpus.variant_total() * kCountryCount;
  out << j.dump(2) << "\n";
  return report.valid() ? kExitOk : kExitData;
}

int run_gen(const GenArgs& a, std::ostream& out) {
  const auto corpus = load_corpus(a.corpus);
  const auto format = parse_format(a.format);
  QuestionBatch batch;
  if (format == Format::Ynqf) {
    const auto universe = ynqf_universe(corpus);
    batch = sample_questions(universe, a.sample.value_or(universe.size()), a.seed);
    out << "sampled " << batch.questions.size() << " of " << universe.size() << " yes/no questions\n";
  } else {
    if (a.sample) throw UsageError("--sample applies to ynqf only; mcqf uses every eligible question");
    batch = mcqf_questions(corpus, a.seed);
    out << "generated " << batch.questions.size() << " multiple-choice questions\n";
  }
  save_batch(batch, a.out);
  return kExitOk;
}

int run_survey_cmd(const SurveyArgs& a, std::ostream& out) {
  const auto corpus = load_corpus(a.corpus);
  const auto batch = load_batch(a.batch);
  const std::uint64_t seed = a.seed.value_or(batch.seed);
  auto informant = make_informant(a, corpus, seed);

  SurveyConfig cfg;
  cfg.max_in_flight = a.max_in_flight;
  cfg.retry.max_attempts = a.max_attempts;
  cfg.retry.initial_backoff = std::chrono::milliseconds(a.backoff_ms);
  if (!a.created_at.empty()) cfg.created_at = a.created_at;

  // File names only, so the manifest does not depend on the working directory.
  auto& snap = cfg.snapshot;
  snap["corpus"] = std::filesystem::path(a.corpus).filename().string();
  snap["batch"] = std::filesystem::path(a.batch).filename().string();
  snap["format"] = to_string(batch.format);
  snap["sample"] = batch.questions.size();
  snap["seed"] = seed;
  snap["informant"] = a.informant;
  if (a.informant == "noisy-oracle") snap["epsilon"] = a.epsilon;
  if (a.informant == "remote-llm") {
    snap["model"] = a.remote.model;
    snap["base_url"] = a.remote.base_url;
    snap["api_key_env"] = a.remote.api_key_env;
    snap["temperature"] = a.remote.temperature;
    snap["timeout_s"] = a.remote.timeout_seconds;
  }
  snap["max_in_flight"] = a.max_in_flight;
  snap["max_attempts"] = a.max_attempts;
  snap["backoff_ms"] = a.backoff_ms;

  const auto run = run_survey(*informant, batch, corpus, cfg);
  save_run(run, a.out);
  const auto failed = run.failures();
  out << "answered " << run.responses.size() - failed << " of " << run.responses.size() << " questions\n";
  return failed == 0 ? kExitOk : kExitPartial;
}

int run_eval(const EvalArgs& a, std::ostream& out) {
  const auto corpus = load_corpus(a.corpus);
  const auto run = load_run(a.run);
  const auto ev = evaluate_run(run, corpus);
  const std::filesystem::path dir(a.out);
  io::write_file_atomic(dir / "scores.jsonl", scores_jsonl(ev.scores));
  io::write_file_atomic(dir / "countries.tsv", country_table_tsv(ev.countries));
  io::write_file_atomic(dir / "country_stats.tsv", stats_table_tsv(ev.stats));
  out << country_table_tsv(ev.countries);
  return kExitOk;
}

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto x = resolve(a.x, a.table, a.covariates);
  const auto y = resolve(a.y, a.table, a.covariates);
  const auto corr = correlate(x.series, y.series, x.name, y.name,
                              a.exact ? PValueMethod::Permutation : PValueMethod::TApprox);
  const auto text = corr.to_json().dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    io::write_file_atomic(a.out, text);
  }
  return kExitOk;
}

int run_report(const ReportArgs& a, std::ostream& out) {
  Report report;
  report.countries = results_from_table(read_country_table(a.table));
  report.areas = aggregate_area(report.countries);
  const auto method = a.exact ? PValueMethod::Permutation : PValueMethod::TApprox;
  for (const auto& selector : a.correlate) {
    auto [xs, ys] = split_pair(selector);
    const auto x = resolve(xs, a.table, a.covariates);
    const auto y = resolve(ys, a.table, a.covariates);
    report.correlations.push_back(correlate(x.series, y.series, x.name, y.name, method));
  }
  for (const auto& selector : a.scatter) {
    auto [xs, ys] = split_pair(selector);
    const auto x = resolve(xs, a.table, a.covariates);
    const auto y = resolve(ys, a.table, a.covariates);
    report.scatters.push_back({file_safe(x.name), file_safe(y.name), x.series, y.series});
  }
  for (const auto& path : emit_report(report, a.out)) out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int run_self_test(const SelfTestArgs& a, std::ostream& out, std::ostream& err) {
  const auto result = self_test(a.corpus.empty() ? bundled_fixture() : std::filesystem::path(a.corpus));
  if (result.exit_code == 2) {
    err << "error: fixture unusable: " << result.error << "\n";
    return kExitData;
  }
  for (const auto& c : result.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << "  " << c.detail;
    out << "\n";
  }
  return result.exit_code == 0 ? kExitOk : kExitSelfTestFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Survey harness for probing language models on geographic lexical variation"};
  app.name("varinf");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Convert a one-row-per-cell TSV export into a corpus JSON");
  c_ingest->add_option("--tsv", ingest.tsv, "Input TSV")->required();
  c_ingest->add_option("--out", ingest.out, "Output corpus JSON")->required();

  ValidateArgs validate;
  auto* c_validate = app.add_subcommand("validate", "Print corpus counts and invariant violations");
  c_validate->add_option("--corpus", validate.corpus)->required();

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a question batch manifest");
  c_gen->add_option("--corpus", gen.corpus)->required();
  c_gen->add_option("--format", gen.format, "ynqf or mcqf")->required()->check(CLI::IsMember({"ynqf", "mcqf"}));
  c_gen->add_option("--sample", gen.sample, "Number of yes/no questions to sample (default: all)");
  c_gen->add_option("--seed", gen.seed)->required();
  c_gen->add_option("--out", gen.out)->required();

  SurveyArgs survey;
  auto* c_survey = app.add_subcommand("survey", "Answer a batch with an informant and write a run manifest");
  c_survey->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_file;  // consumed by expand_survey_config; declared for --help
  c_survey->add_option("--config", config_file, "key = value file with survey options (flags override it)");
  c_survey->add_option("--corpus", survey.corpus)->required();
  c_survey->add_option("--batch", survey.batch)->required();
  c_survey->add_option("--informant", survey.informant)
      ->required()
      ->check(CLI::IsMember({"remote-llm", "baseline-yes", "baseline-first3", "oracle", "noisy-oracle"}));
  c_survey->add_option("--seed", survey.seed, "Seed for stochastic informants (default: batch seed)");
  c_survey->add_option("--epsilon", survey.epsilon, "Noise rate for noisy-oracle")->check(CLI::Range(0.0, 1.0));
  c_survey->add_option("--model", survey.remote.model);
  c_survey->add_option("--base-url", survey.remote.base_url);
  c_survey->add_option("--api-key-env", survey.remote.api_key_env, "Environment variable holding the API key");
  c_survey->add_option("--temperature", survey.remote.temperature);
  c_survey->add_option("--timeout", survey.remote.timeout_seconds, "Request timeout in seconds");
  c_survey->add_option("--max-in-flight", survey.max_in_flight)->check(CLI::PositiveNumber);
  c_survey->add_option("--max-attempts", survey.max_attempts)->check(CLI::PositiveNumber);
  c_survey->add_option("--backoff-ms", survey.backoff_ms)->check(CLI::NonNegativeNumber);
  c_survey->add_option("--created-at", survey.created_at, "Timestamp recorded in the manifest");
  c_survey->add_option("--out", survey.out)->required();

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Score a run: scores.jsonl, countries.tsv, country_stats.tsv");
  c_eval->add_option("--corpus", eval.corpus)->required();
  c_eval->add_option("--run", eval.run)->required();
  c_eval->add_option("--out", eval.out, "Output directory")->required();

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Spearman correlation between two country-level columns");
  c_analyze->add_option("--x", analyze.x, "column or column@file")->required();
  c_analyze->add_option("--y", analyze.y, "column or column@file")->required();
  c_analyze->add_option("--table", analyze.table, "Default country table");
  c_analyze->add_option("--covariates", analyze.covariates, "Covariate TSV (country_code, tokens, gdp_usd)");
  c_analyze->add_flag("--exact", analyze.exact, "Exact permutation p-value (n <= 10)");
  c_analyze->add_option("--out", analyze.out, "Write JSON here instead of stdout");

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Country and area tables, correlations and scatter data");
  c_report->add_option("--table", report.table, "Country table (countries.tsv)")->required();
  c_report->add_option("--covariates", report.covariates);
  c_report->add_option("--correlate", report.correlate, "X,Y pair (repeatable)");
  c_report->add_option("--scatter", report.scatter, "X,Y pair (repeatable)");
  c_report->add_flag("--exact", report.exact);
  c_report->add_option("--out", report.out, "Output directory")->required();

  SelfTestArgs selftest;
  auto* c_selftest = app.add_subcommand("selftest", "Run the bundled fixture checks");
  c_selftest->add_option("--corpus", selftest.corpus, "Fixture corpus (default: bundled)");

  std::vector<std::string> expanded;
  try {
    expanded = expand_survey_config(args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (c_ingest->parsed()) return run_ingest(ingest, out);
    if (c_validate->parsed()) return run_validate(validate, out);
    if (c_gen->parsed()) return run_gen(gen, out);
    if (c_survey->parsed()) return run_survey_cmd(survey, out);
    if (c_eval->parsed()) return run_eval(eval, out);
    if (c_analyze->parsed()) return run_analyze(analyze, out);
    if (c_report->parsed()) return run_report(report, out);
    if (c_selftest->parsed()) return run_self_test(selftest, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace varinf
