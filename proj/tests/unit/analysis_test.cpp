#include "doctest.h"
#include "support.hpp"
#include "varinf/analysis.hpp"
#include "varinf/error.hpp"
#include "varinf/io.hpp"

#include <cmath>

using namespace varinf;
using doctest::Approx;
using varinf::testing::fixture;

namespace {

// One item with `k` variants; Chile's gold holds the first `g`.
Corpus prevalence_corpus(std::size_t k, std::size_t g) {
  LexicalItem item{"P001", "cosa", "THING", {}, nlohmann::ordered_json::object()};
  for (std::size_t i = 0; i < k; ++i) item.variants.push_back("v" + std::to_string(i));
  GoldMap gold{{{"P001", Country::CL}, std::vector<std::string>(item.variants.begin(), item.variants.begin() + g)}};
  return Corpus({item}, gold);
}

SurveyRun answer_all(Informant& informant, const QuestionBatch& batch, const Corpus& corpus) {
  return run_survey(informant, batch, corpus, SurveyConfig{});
}

const CountryResult& row(const std::vector<CountryResult>& rs, Country c) {
  for (const auto& r : rs)
    if (r.country == c) return r;
  throw std::runtime_error("missing country");
}

}  // namespace

TEST_CASE("oracle run scores 1.0 everywhere") {
  const auto corpus = load_corpus(fixture("corpus_small.json"));
  OracleInformant oracle(corpus);

  const auto yn = evaluate_run(answer_all(oracle, sample_questions(ynqf_universe(corpus), 252, 1), corpus), corpus);
  CHECK(yn.countries.size() == 21);
  for (const auto& r : yn.countries) {
    CHECK(r.metric == 1.0);
    CHECK(r.n_a == r.n_q);
  }

  const auto mc = evaluate_run(answer_all(oracle, mcqf_questions(corpus, 1), corpus), corpus);
  for (const auto& r : mc.countries) CHECK(r.metric == 1.0);
  for (const auto& s : mc.scores) {
    CHECK(s.kind == "jaccard");
    CHECK(*s.adjusted == 1.0);
  }
}

TEST_CASE("baseline-yes F1 follows 2p/(1+p)") {
  for (auto [k, g] : {std::pair<std::size_t, std::size_t>{20, 2}, {20, 5}, {20, 10}, {4, 2}}) {
    const auto corpus = prevalence_corpus(k, g);
    QuestionBatch batch{Format::Ynqf, 0, {}};
    for (const auto& q : ynqf_universe(corpus))
      if (q.country == Country::CL) batch.questions.emplace_back(q);
    BaselineYesInformant yes;
    const auto ev = evaluate_run(answer_all(yes, batch, corpus), corpus);
    REQUIRE(ev.countries.size() == 1);
    const double p = static_cast<double>(g) / static_cast<double>(k);
    CHECK(ev.countries[0].metric == Approx(2 * p / (1 + p)).epsilon(1e-12));
    CHECK(ev.countries[0].baseline == ev.countries[0].metric);
    CHECK(ev.countries[0].delta == 0.0);
    CHECK(ev.stats[0].values.at("gold_positive_rate") == Approx(p));
  }
}

TEST_CASE("failed and invalid answers count toward N_Q only") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto batch = sample_questions(ynqf_universe(corpus), 126, 2);
  OracleInformant oracle(corpus);
  auto run = answer_all(oracle, batch, corpus);
  run.responses[0].raw.reset();
  run.responses[0].failure = "timeout";
  run.responses[1].raw = "Tal vez";
  const auto ev = evaluate_run(run, corpus);
  std::size_t n_q = 0, n_a = 0;
  for (const auto& r : ev.countries) n_q += r.n_q, n_a += r.n_a;
  CHECK(n_q == 126);
  CHECK(n_a == 124);
  CHECK(ev.scores[0].kind == "failed");
  CHECK(ev.scores[1].kind == "invalid");
  CHECK(ev.scores[1].detail == "extra tokens");
}

TEST_CASE("area averages from the published country tables") {
  const auto t4 = results_from_table(read_country_table(fixture("countries_ynqf.tsv")));
  const auto t5 = results_from_table(read_country_table(fixture("countries_mcqf.tsv")));
  CHECK(t4.size() == 21);
  CHECK(t5.size() == 21);
  const auto yn = aggregate_area(t4);
  const auto mc = aggregate_area(t5);
  REQUIRE(yn.size() == 8);
  REQUIRE(mc.size() == 8);
  CHECK(mc[2].area == DialectalArea::Antilles);
  CHECK(std::abs(mc[2].mean_metric - 0.321) < 0.0015);
  CHECK(std::abs(mc[7].mean_metric - 0.386) < 0.0015);
  CHECK(mc[6].mean_metric == row(t5, Country::CL).metric);
  CHECK(yn[6].mean_delta == row(t4, Country::CL).delta);
  CHECK(yn[2].countries == 3);
}

TEST_CASE("country table parsing") {
  const auto table = parse_country_table("country_code\tGDP\ttokens\nES\t30000\tNA\nAR\t\t12\n");
  CHECK(column(table, "gdp").size() == 1);
  CHECK(column(table, "tokens").at(Country::AR) == 12);
  CHECK_THROWS_AS(column(table, "nonsense"), UsageError);
  CHECK_THROWS_AS(parse_country_table("nation\tx\nES\t1\n"), DataError);
  CHECK_THROWS_AS(parse_country_table("country\tx\nAtlantis\t1\n"), DataError);
  CHECK_THROWS_AS(parse_country_table("country\tx\nES\tabc\n"), DataError);
  CHECK_THROWS_AS(results_from_table(parse_country_table("country\tN_A\tmetric\tbaseline\tdelta\nES\t3\t0.5\t0.2\t0.4\n")),
                  DataError);
}

TEST_CASE("correlations over the published country tables") {
  const auto t4 = read_country_table(fixture("countries_ynqf.tsv"));
  const auto t5 = read_country_table(fixture("countries_mcqf.tsv"));
  const auto a = correlate(column(t4, "F1"), column(t4, "baseline"), "F1", "baseline");
  CHECK(a.n == 21);
  CHECK(std::abs(a.rho - 0.794) < 0.0005);
  CHECK(a.p < 0.05);
  const auto b = correlate(column(t4, "delta_F1"), column(t5, "J_adj"), "delta_F1", "J_adj");
  CHECK(std::abs(b.rho - 0.679) < 0.0005);
  const auto c = correlate(column(t4, "delta_F1"), column(t4, "baseline"), "delta_F1", "baseline");
  CHECK(std::abs(c.rho - 0.169) < 0.0005);
  CHECK(std::abs(c.p - 0.464) < 0.0005);

  CountrySeries few{{Country::ES, 1}, {Country::AR, 2}};
  CHECK_THROWS_AS(correlate(few, few, "x", "y"), DataError);
}

TEST_CASE("correlation is pairwise complete") {
  CountrySeries x{{Country::ES, 1}, {Country::AR, 2}, {Country::CL, 3}, {Country::MX, 4}};
  CountrySeries y{{Country::ES, 1}, {Country::AR, 2}, {Country::CL, 3}, {Country::PE, 9}};
  const auto r = correlate(x, y, "x", "y");
  CHECK(r.n == 3);
  CHECK(r.rho == Approx(1.0));
  CHECK(r.to_json()["n"] == 3);
}

TEST_CASE("emit_report") {
  varinf::testing::TempDir tmp;
  const auto t4 = read_country_table(fixture("countries_ynqf.tsv"));
  const auto t5 = read_country_table(fixture("countries_mcqf.tsv"));
  Report report;
  report.countries = results_from_table(t5);
  report.areas = aggregate_area(report.countries);
  report.scatters.push_back({"delta_F1", "J_adj", column(t4, "delta_F1"), column(t5, "J_adj")});
  const auto files = emit_report(report, tmp.path());
  CHECK(files.size() == 4);

  const auto countries = io::split(io::read_file(tmp / "countries.tsv"), '\n');
  // header + 21 rows + trailing empty piece
  REQUIRE(countries.size() == 23);
  CHECK(countries[0] == "country\tN_Q\tN_A\tmetric\tbaseline\tdelta");
  CHECK(countries[1].rfind("ES\t907\t907\t0.508\t0.11\t0.398", 0) == 0);
  for (std::size_t i = 1; i <= 21; ++i) CHECK(io::split(countries[i], '\t').size() == 6);

  const auto scatter = io::split(io::read_file(tmp / "scatter_delta_F1_vs_J_adj.csv"), '\n');
  REQUIRE(scatter.size() == 23);
  CHECK(scatter[0] == "country,x,y,area");
  CHECK(scatter[1] == "ES,0.405,0.508,Spain");
  CHECK(scatter[21] == "AR,0.306,0.448,La Plata River");

  varinf::testing::TempDir empty;
  CHECK_THROWS_AS(emit_report(Report{}, empty / "out"), UsageError);
  CHECK_FALSE(std::filesystem::exists(empty / "out"));
}
