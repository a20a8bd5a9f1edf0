#include "varinf/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <thread>

#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/rng.hpp"

namespace varinf {
namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResponseRecord ask(Informant& informant, const Question& q, const std::string& prompt, const RetryPolicy& retry,
                   bool timed) {
  ResponseRecord rec;
  rec.question_id = question_id(q);
  const auto start = std::chrono::steady_clock::now();
  std::string last_error;
  for (int attempt = 1; attempt <= std::max(1, retry.max_attempts); ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(retry.delay_before(attempt));
    rec.attempts = attempt;
    try {
      rec.raw = informant.answer(q, prompt);
      break;
    } catch (const InformantError& e) {
      last_error = e.what();
      if (!e.transient()) break;
    }
  }
  if (!rec.raw) rec.failure = last_error.empty() ? "unknown failure" : last_error;
  if (timed) {
    rec.latency_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

}  // namespace

std::chrono::milliseconds RetryPolicy::delay_before(int attempt) const {
  if (attempt <= 1) return std::chrono::milliseconds{0};
  const double ms = static_cast<double>(initial_backoff.count()) * std::pow(multiplier, attempt - 2);
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::min(ms, static_cast<double>(max_backoff.count()))));
}

std::size_t SurveyRun::failures() const {
  return static_cast<std::size_t>(
      std::count_if(responses.begin(), responses.end(), [](const auto& r) { return !r.raw.has_value(); }));
}

const ResponseRecord* SurveyRun::find(const std::string& question_id) const {
  for (const auto& r : responses)
    if (r.question_id == question_id) return &r;
  return nullptr;
}

SurveyRun run_survey(Informant& informant, const QuestionBatch& batch, const Corpus& corpus,
                     const SurveyConfig& config) {
  if (batch.questions.empty()) throw UsageError("cannot run a survey on an empty batch");
  check_batch_against(batch, corpus);

  SurveyRun run;
  run.batch = batch;
  run.informant = informant.descriptor();
  run.config = config.snapshot;
  run.created_at = config.created_at;
  if (!run.created_at && !run.informant.deterministic) run.created_at = utc_now();

  const bool timed = !run.informant.deterministic;
  run.responses.resize(batch.questions.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < batch.questions.size(); i = next++) {
      const auto& q = batch.questions[i];
      run.responses[i] = ask(informant, q, render_prompt(corpus, q), config.retry, timed);
    }
  };
  std::size_t workers = run.informant.concurrent_safe ? std::max<std::size_t>(1, config.max_in_flight) : 1;
  workers = std::min(workers, batch.questions.size());
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return run;
}

std::string batch_digest(const QuestionBatch& batch) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(batch_to_json(batch).dump())));
  return buf;
}

nlohmann::ordered_json run_to_json(const SurveyRun& run) {
  nlohmann::ordered_json doc;
  doc["informant"] = run.informant.to_json();
  doc["batch_digest"] = batch_digest(run.batch);
  doc["seed"] = run.batch.seed;
  doc["config"] = run.config;
  doc["created_at"] = run.created_at ? nlohmann::ordered_json(*run.created_at) : nullptr;
  doc["batch"] = batch_to_json(run.batch);
  auto& responses = doc["responses"] = nlohmann::ordered_json::array();
  for (const auto& r : run.responses) {
    nlohmann::ordered_json j;
    j["id"] = r.question_id;
    if (r.raw) {
      j["raw"] = *r.raw;
    } else {
      j["failure"] = r.failure.value_or("unknown failure");
    }
    j["attempts"] = r.attempts;
    if (r.latency_ms) j["latency_ms"] = *r.latency_ms;
    responses.push_back(std::move(j));
  }
  return doc;
}

SurveyRun run_from_json(const nlohmann::json& doc) {
  try {
    SurveyRun run;
    run.informant = InformantDescriptor::from_json(doc.at("informant"));
    run.batch = batch_from_json(doc.at("batch"));
    if (doc.contains("batch_digest") && doc["batch_digest"].get<std::string>() != batch_digest(run.batch)) {
      throw DataError("run manifest: batch digest mismatch");
    }
    run.config = nlohmann::ordered_json::parse(doc.at("config").dump());
    if (doc.contains("created_at") && doc["created_at"].is_string()) run.created_at = doc["created_at"];
    for (const auto& j : doc.at("responses")) {
      ResponseRecord r;
      r.question_id = j.at("id").get<std::string>();
      if (j.contains("raw")) {
        r.raw = j["raw"].get<std::string>();
      } else {
        r.failure = j.at("failure").get<std::string>();
      }
      r.attempts = j.value("attempts", 1);
      if (j.contains("latency_ms")) r.latency_ms = j["latency_ms"].get<std::int64_t>();
      run.responses.push_back(std::move(r));
    }
    if (run.responses.size() != run.batch.questions.size()) {
      throw DataError("run manifest: " + std::to_string(run.responses.size()) + " responses for " +
                      std::to_string(run.batch.questions.size()) + " questions");
    }
    for (std::size_t i = 0; i < run.responses.size(); ++i) {
      if (run.responses[i].question_id != question_id(run.batch.questions[i])) {
        throw DataError("run manifest: response " + std::to_string(i) + " does not match batch order");
      }
    }
    return run;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("run manifest: ") + e.what());
  }
}

void save_run(const SurveyRun& run, const std::filesystem::path& path) {
  io::write_file_atomic(path, run_to_json(run).dump(2) + "\n");
}

SurveyRun load_run(const std::filesystem::path& path) {
  try {
    return run_from_json(nlohmann::json::parse(io::read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
}

}  // namespace varinf
