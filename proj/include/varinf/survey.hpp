#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "varinf/informant.hpp"
#include "varinf/questionnaire.hpp"

namespace varinf {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  // Delay before attempt `attempt` (2-based; attempt 1 has no delay).
  std::chrono::milliseconds delay_before(int attempt) const;
};

struct SurveyConfig {
  std::size_t max_in_flight = 4;
  RetryPolicy retry;
  // Recorded verbatim; filled from the clock for non-deterministic
  // informants when unset.
  std::optional<std::string> created_at;
  // Caller's run configuration, copied into the manifest.
  nlohmann::ordered_json snapshot = nlohmann::ordered_json::object();
};

struct ResponseRecord {
  std::string question_id;
  std::optional<std::string> raw;      // set on success
  std::optional<std::string> failure;  // set when every attempt failed
  int attempts = 0;
  std::optional<std::int64_t> latency_ms;  // recorded for non-deterministic informants

  bool operator==(const ResponseRecord&) const = default;
};

struct SurveyRun {
  QuestionBatch batch;
  InformantDescriptor informant;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<std::string> created_at;
  std::vector<ResponseRecord> responses;  // one per batch question, batch order

  std::size_t failures() const;
  const ResponseRecord* find(const std::string& question_id) const;
};

// Answers every question; stateless single-turn calls, bounded parallelism.
// Questions failing every attempt are kept with a failure marker.
SurveyRun run_survey(Informant& informant, const QuestionBatch& batch, const Corpus& corpus,
                     const SurveyConfig& config);

nlohmann::ordered_json run_to_json(const SurveyRun& run);
SurveyRun run_from_json(const nlohmann::json& doc);  // throws DataError
void save_run(const SurveyRun& run, const std::filesystem::path& path);
SurveyRun load_run(const std::filesystem::path& path);

std::string batch_digest(const QuestionBatch& batch);

}  // namespace varinf
