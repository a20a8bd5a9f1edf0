#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "varinf/corpus.hpp"
#include "varinf/questionnaire.hpp"

namespace varinf {

struct InformantDescriptor {
  std::string kind;  // remote-llm | baseline-yes | baseline-first3 | oracle | noisy-oracle
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  bool concurrent_safe = true;
  // Same question, same raw text, regardless of call order or timing.
  bool deterministic = true;

  nlohmann::ordered_json to_json() const;
  static InformantDescriptor from_json(const nlohmann::json& j);
  bool operator==(const InformantDescriptor&) const = default;
};

// Raised by Informant::answer. Transient errors are retried by the runner.
class InformantError : public std::runtime_error {
 public:
  InformantError(const std::string& what, bool transient) : std::runtime_error(what), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

// A survey respondent. Each call is a single, stateless question.
class Informant {
 public:
  virtual ~Informant() = default;
  virtual std::string answer(const Question& question, std::string_view prompt) = 0;
  virtual InformantDescriptor descriptor() const = 0;
};

// "Sí" for yes/no; "1/2/3" (or every option when fewer exist) for multiple choice.
std::string baseline_answer(const Question& question);

// Reads the gold annotation directly.
std::string oracle_answer(const Corpus& corpus, const Question& question);

// Gold answer with each bit flipped independently with probability epsilon.
// For multiple choice an empty result is replaced by one uniform option.
// Deterministic in (seed, question id).
std::string noisy_answer(const Corpus& corpus, const Question& question, double epsilon, std::uint64_t seed);

class BaselineYesInformant final : public Informant {
 public:
  std::string answer(const Question& question, std::string_view prompt) override;
  InformantDescriptor descriptor() const override;
};

class BaselineFirst3Informant final : public Informant {
 public:
  std::string answer(const Question& question, std::string_view prompt) override;
  InformantDescriptor descriptor() const override;
};

class OracleInformant final : public Informant {
 public:
  explicit OracleInformant(const Corpus& corpus) : corpus_(corpus) {}
  std::string answer(const Question& question, std::string_view prompt) override;
  InformantDescriptor descriptor() const override;

 private:
  const Corpus& corpus_;
};

class NoisyOracleInformant final : public Informant {
 public:
  NoisyOracleInformant(const Corpus& corpus, double epsilon, std::uint64_t seed);
  std::string answer(const Question& question, std::string_view prompt) override;
  InformantDescriptor descriptor() const override;

 private:
  const Corpus& corpus_;
  double epsilon_;
  std::uint64_t seed_;
};

struct RemoteConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o";
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int timeout_seconds = 60;
};

// Chat-completions client: POST {base_url}/chat/completions with a single
// user message; the reply is choices[0].message.content.
class RemoteLlmInformant final : public Informant {
 public:
  // Reads the API key from the configured environment variable; throws
  // UsageError if it is unset.
  explicit RemoteLlmInformant(RemoteConfig config);
  std::string answer(const Question& question, std::string_view prompt) override;
  InformantDescriptor descriptor() const override;

  static nlohmann::json request_body(const RemoteConfig& config, std::string_view prompt);

 private:
  RemoteConfig config_;
  std::string api_key_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

}  // namespace varinf
