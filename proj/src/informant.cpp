#include "varinf/informant.hpp"

#include <algorithm>

#include "varinf/error.hpp"
#include "varinf/rng.hpp"

namespace varinf {
namespace {

std::string join_selection(const std::vector<int>& picks) {
  std::string out;
  for (int p : picks) {
    if (!out.empty()) out += '/';
    out += std::to_string(p);
  }
  return out;
}

std::vector<bool> gold_membership(const Corpus& corpus, const McQuestion& q) {
  const auto gold = gold_set(corpus, q.item, q.country);
  std::vector<bool> bits;
  bits.reserve(q.options.size());
  for (const auto& o : q.options) bits.push_back(gold.count(o) > 0);
  return bits;
}

std::vector<int> selected(const std::vector<bool>& bits) {
  std::vector<int> picks;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) picks.push_back(static_cast<int>(i + 1));
  return picks;
}

}  // namespace

nlohmann::ordered_json InformantDescriptor::to_json() const {
  return {{"kind", kind},
          {"parameters", parameters},
          {"concurrent_safe", concurrent_safe},
          {"deterministic", deterministic}};
}

InformantDescriptor InformantDescriptor::from_json(const nlohmann::json& j) {
  InformantDescriptor d;
  d.kind = j.at("kind").get<std::string>();
  d.parameters = nlohmann::ordered_json::parse(j.at("parameters").dump());
  d.concurrent_safe = j.value("concurrent_safe", true);
  d.deterministic = j.value("deterministic", true);
  return d;
}

std::string baseline_answer(const Question& question) {
  if (std::holds_alternative<YnQuestion>(question)) return "Sí";
  const auto k = std::get<McQuestion>(question).options.size();
  std::vector<int> picks;
  for (std::size_t i = 1; i <= std::min<std::size_t>(k, 3); ++i) picks.push_back(static_cast<int>(i));
  return join_selection(picks);
}

std::string oracle_answer(const Corpus& corpus, const Question& question) {
  if (const auto* yn = std::get_if<YnQuestion>(&question)) {
    return gold_set(corpus, yn->item, yn->country).count(yn->variant) ? "Sí" : "No";
  }
  return join_selection(selected(gold_membership(corpus, std::get<McQuestion>(question))));
}

std::string noisy_answer(const Corpus& corpus, const Question& question, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw UsageError("noise rate must lie in [0, 1]");
  auto rng = Rng::derive(seed, "noisy/" + question_id(question));
  if (const auto* yn = std::get_if<YnQuestion>(&question)) {
    bool verdict = gold_set(corpus, yn->item, yn->country).count(yn->variant) > 0;
    if (rng.bernoulli(epsilon)) verdict = !verdict;
    return verdict ? "Sí" : "No";
  }
  const auto& mc = std::get<McQuestion>(question);
  auto bits = gold_membership(corpus, mc);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (rng.bernoulli(epsilon)) bits[i] = !bits[i];
  }
  auto picks = selected(bits);
  if (picks.empty()) picks.push_back(static_cast<int>(rng.below(mc.options.size())) + 1);
  return join_selection(picks);
}

std::string BaselineYesInformant::answer(const Question& question, std::string_view) {
  if (!std::holds_alternative<YnQuestion>(question)) {
    throw InformantError("baseline-yes only answers yes/no questions", false);
  }
  return baseline_answer(question);
}

InformantDescriptor BaselineYesInformant::descriptor() const { return {"baseline-yes", {}, true, true}; }

std::string BaselineFirst3Informant::answer(const Question& question, std::string_view) {
  if (!std::holds_alternative<McQuestion>(question)) {
    throw InformantError("baseline-first3 only answers multiple-choice questions", false);
  }
  return baseline_answer(question);
}

InformantDescriptor BaselineFirst3Informant::descriptor() const { return {"baseline-first3", {}, true, true}; }

std::string OracleInformant::answer(const Question& question, std::string_view) {
  return oracle_answer(corpus_, question);
}

InformantDescriptor OracleInformant::descriptor() const { return {"oracle", {}, true, true}; }

NoisyOracleInformant::NoisyOracleInformant(const Corpus& corpus, double epsilon, std::uint64_t seed)
    : corpus_(corpus), epsilon_(epsilon), seed_(seed) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw UsageError("noise rate must lie in [0, 1]");
}

std::string NoisyOracleInformant::answer(const Question& question, std::string_view) {
  return noisy_answer(corpus_, question, epsilon_, seed_);
}

InformantDescriptor NoisyOracleInformant::descriptor() const {
  nlohmann::ordered_json params;
  params["epsilon"] = epsilon_;
  params["seed"] = seed_;
  return {"noisy-oracle", params, true, true};
}

}  // namespace varinf
