#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "varinf/corpus.hpp"

namespace varinf {

enum class Format { Ynqf, Mcqf };

std::string_view to_string(Format f);
Format parse_format(std::string_view text);  // throws UsageError

// "Do you usually use the term <variant> ..." — a yes/no question.
struct YnQuestion {
  std::string id;
  Country country;
  std::string item;
  std::string variant;

  bool operator==(const YnQuestion&) const = default;
};

// "Which expression(s) do you usually use ..." — options numbered 1..k in
// the order stored here (already shuffled).
struct McQuestion {
  std::string id;
  Country country;
  std::string item;
  std::vector<std::string> options;

  bool operator==(const McQuestion&) const = default;
};

using Question = std::variant<YnQuestion, McQuestion>;

const std::string& question_id(const Question& q);
Country question_country(const Question& q);
const std::string& question_item(const Question& q);

// 16 hex digits of fnv1a64 over the unit-separated fields
// (format, country code, item, variant | options...).
std::string ynqf_id(Country c, std::string_view item, std::string_view variant);
std::string mcqf_id(Country c, std::string_view item, const std::vector<std::string>& options);

struct QuestionBatch {
  Format format = Format::Ynqf;
  std::uint64_t seed = 0;
  std::vector<Question> questions;  // presentation order

  bool operator==(const QuestionBatch&) const = default;
};

// Every (country, item, variant) triple: countries in canonical order, items
// by index, variants in corpus order.
std::vector<YnQuestion> ynqf_universe(const Corpus& corpus);

// Uniform sample of n questions without replacement, then shuffled into
// presentation order. Both steps use independent streams of `seed`.
QuestionBatch sample_questions(const std::vector<YnQuestion>& universe, std::size_t n, std::uint64_t seed);

// One question per (country, item) with at least two variants and a
// non-empty gold set. Options are shuffled per question from `seed`.
QuestionBatch mcqf_questions(const Corpus& corpus, std::uint64_t seed);

std::string render_prompt(const Corpus& corpus, const Question& question);

nlohmann::ordered_json batch_to_json(const QuestionBatch& batch);
QuestionBatch batch_from_json(const nlohmann::json& doc);  // throws DataError
void save_batch(const QuestionBatch& batch, const std::filesystem::path& path);
QuestionBatch load_batch(const std::filesystem::path& path);

// Checks ids are unique and every question references the corpus consistently.
void check_batch_against(const QuestionBatch& batch, const Corpus& corpus);

}  // namespace varinf
