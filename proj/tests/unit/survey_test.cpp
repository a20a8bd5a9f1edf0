#include "doctest.h"
#include "support.hpp"
#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/survey.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

using namespace varinf;
using namespace std::chrono_literals;
using varinf::testing::fixture;

namespace {

// Fails selected ids: permanently, or transiently for the first k attempts.
class FaultyInformant final : public Informant {
 public:
  FaultyInformant(const Corpus& corpus, std::set<std::string> broken, int transient_failures, bool transient)
      : corpus_(corpus), broken_(std::move(broken)), transient_failures_(transient_failures), transient_(transient) {}

  std::string answer(const Question& q, std::string_view) override {
    const auto& id = question_id(q);
    int n;
    {
      std::lock_guard lock(mu_);
      n = ++calls_[id];
    }
    in_flight_peak(+1);
    std::this_thread::sleep_for(1ms);
    in_flight_peak(-1);
    if (broken_.count(id) != 0 && n <= transient_failures_) throw InformantError("injected", transient_);
    return oracle_answer(corpus_, q);
  }
  InformantDescriptor descriptor() const override { return {"fault-injection", {}, concurrent_safe, true}; }

  int calls(const std::string& id) {
    std::lock_guard lock(mu_);
    return calls_[id];
  }
  int peak() const { return peak_; }
  bool concurrent_safe = true;

 private:
  void in_flight_peak(int delta) {
    const int now = current_ += delta;
    int prev = peak_;
    while (now > prev && !peak_.compare_exchange_weak(prev, now)) {
    }
  }
  const Corpus& corpus_;
  std::set<std::string> broken_;
  int transient_failures_;
  bool transient_;
  std::mutex mu_;
  std::map<std::string, int> calls_;
  std::atomic<int> current_{0};
  std::atomic<int> peak_{0};
};

SurveyConfig fast_config(std::size_t in_flight = 4) {
  SurveyConfig config;
  config.max_in_flight = in_flight;
  config.retry.initial_backoff = 1ms;
  config.retry.max_backoff = 2ms;
  return config;
}

}  // namespace

TEST_CASE("retry policy backoff") {
  RetryPolicy p;
  CHECK(p.delay_before(1) == 0ms);
  CHECK(p.delay_before(2) == 500ms);
  CHECK(p.delay_before(3) == 1000ms);
  CHECK(p.delay_before(10) == 8000ms);
}

TEST_CASE("oracle survey over the 126-question universe") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto batch = sample_questions(ynqf_universe(corpus), 126, 1);
  OracleInformant oracle(corpus);
  const auto run = run_survey(oracle, batch, corpus, fast_config());
  REQUIRE(run.responses.size() == 126);
  CHECK(run.failures() == 0);
  for (std::size_t i = 0; i < 126; ++i) {
    CHECK(run.responses[i].question_id == question_id(batch.questions[i]));
    CHECK(run.responses[i].attempts == 1);
    CHECK_FALSE(run.responses[i].latency_ms.has_value());
  }
  CHECK_FALSE(run.created_at.has_value());
}

TEST_CASE("baseline-yes answers Sí everywhere") {
  const auto corpus = load_corpus(fixture("corpus_small.json"));
  const auto batch = sample_questions(ynqf_universe(corpus), 60, 2);
  BaselineYesInformant yes;
  for (const auto& r : run_survey(yes, batch, corpus, fast_config()).responses) CHECK(*r.raw == "Sí");
}

TEST_CASE("fault injection: two ids fail every attempt") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto batch = sample_questions(ynqf_universe(corpus), 126, 3);
  const std::string bad1 = question_id(batch.questions[5]);
  const std::string bad2 = question_id(batch.questions[77]);

  SUBCASE("transient errors exhaust retries") {
    FaultyInformant informant(corpus, {bad1, bad2}, 100, true);
    const auto run = run_survey(informant, batch, corpus, fast_config());
    CHECK(run.failures() == 2);
    CHECK(run.responses.size() - run.failures() == 126 - 2);
    CHECK(run.find(bad1)->failure.has_value());
    CHECK(run.find(bad1)->attempts == 3);
    CHECK(informant.calls(bad1) == 3);
  }
  SUBCASE("permanent errors are not retried") {
    FaultyInformant informant(corpus, {bad1, bad2}, 100, false);
    const auto run = run_survey(informant, batch, corpus, fast_config());
    CHECK(run.failures() == 2);
    CHECK(run.find(bad2)->attempts == 1);
  }
  SUBCASE("transient errors that clear are retried to success") {
    FaultyInformant informant(corpus, {bad1, bad2}, 2, true);
    const auto run = run_survey(informant, batch, corpus, fast_config());
    CHECK(run.failures() == 0);
    CHECK(run.find(bad1)->attempts == 3);
    CHECK(*run.find(bad1)->raw == oracle_answer(corpus, batch.questions[5]));
  }
}

TEST_CASE("bounded parallelism") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto batch = sample_questions(ynqf_universe(corpus), 126, 4);
  {
    FaultyInformant informant(corpus, {}, 0, true);
    run_survey(informant, batch, corpus, fast_config(3));
    CHECK(informant.peak() <= 3);
  }
  {
    FaultyInformant informant(corpus, {}, 0, true);
    informant.concurrent_safe = false;
    run_survey(informant, batch, corpus, fast_config(8));
    CHECK(informant.peak() == 1);
  }
}

TEST_CASE("run manifest round trip and validation") {
  varinf::testing::TempDir tmp;
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto batch = mcqf_questions(corpus, 9);
  NoisyOracleInformant noisy(corpus, 0.2, 9);
  auto config = fast_config();
  config.created_at = "2026-01-01T00:00:00Z";
  const auto run = run_survey(noisy, batch, corpus, config);
  save_run(run, tmp / "run.json");
  const auto back = load_run(tmp / "run.json");
  CHECK(back.batch == run.batch);
  CHECK(back.responses == run.responses);
  CHECK(back.informant == run.informant);
  CHECK(back.created_at == run.created_at);
  save_run(back, tmp / "again.json");
  CHECK(io::read_file(tmp / "run.json") == io::read_file(tmp / "again.json"));

  auto doc = nlohmann::json::parse(io::read_file(tmp / "run.json"));
  doc["responses"].erase(doc["responses"].begin());
  CHECK_THROWS_AS(run_from_json(doc), DataError);

  doc = nlohmann::json::parse(io::read_file(tmp / "run.json"));
  doc["batch_digest"] = "0000";
  CHECK_THROWS_AS(run_from_json(doc), DataError);
}
