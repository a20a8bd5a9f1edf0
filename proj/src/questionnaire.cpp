#include "varinf/questionnaire.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/rng.hpp"
#include "varinf/unicode.hpp"

namespace varinf {
namespace {

constexpr char kUnitSep = '\x1f';

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class Q>
void ensure_unique_ids(const std::vector<Q>& questions) {
  std::unordered_set<std::string> ids;
  for (const auto& q : questions) {
    const auto& id = [&]() -> const std::string& {
      if constexpr (std::is_same_v<Q, Question>) {
        return question_id(q);
      } else {
        return q.id;
      }
    }();
    if (!ids.insert(id).second) throw DataError("duplicate question id " + id);
  }
}

constexpr std::string_view kPreamble =
    "Responda a la siguiente pregunta. No tenga en cuenta las preguntas anteriores.\n";

}  // namespace

std::string_view to_string(Format f) { return f == Format::Ynqf ? "ynqf" : "mcqf"; }

Format parse_format(std::string_view text) {
  if (text == "ynqf" || text == "YNQF") return Format::Ynqf;
  if (text == "mcqf" || text == "MCQF") return Format::Mcqf;
  throw UsageError("unknown format '" + std::string(text) + "' (expected ynqf or mcqf)");
}

const std::string& question_id(const Question& q) {
  return std::visit([](const auto& x) -> const std::string& { return x.id; }, q);
}

Country question_country(const Question& q) {
  return std::visit([](const auto& x) { return x.country; }, q);
}

const std::string& question_item(const Question& q) {
  return std::visit([](const auto& x) -> const std::string& { return x.item; }, q);
}

std::string ynqf_id(Country c, std::string_view item, std::string_view variant) {
  std::string key = "ynqf";
  key += kUnitSep;
  key += country_code(c);
  key += kUnitSep;
  key += item;
  key += kUnitSep;
  key += variant;
  return hex16(fnv1a64(key));
}

std::string mcqf_id(Country c, std::string_view item, const std::vector<std::string>& options) {
  std::string key = "mcqf";
  key += kUnitSep;
  key += country_code(c);
  key += kUnitSep;
  key += item;
  for (const auto& o : options) {
    key += kUnitSep;
    key += o;
  }
  return hex16(fnv1a64(key));
}

std::vector<YnQuestion> ynqf_universe(const Corpus& corpus) {
  std::vector<YnQuestion> out;
  out.reserve(corpus.variant_total() * kCountryCount);
  const auto items = corpus.items_by_index();
  for (Country c : all_countries()) {
    for (const auto* item : items) {
      for (const auto& v : item->variants) {
        out.push_back(YnQuestion{ynqf_id(c, item->index, v), c, item->index, v});
      }
    }
  }
  return out;
}

QuestionBatch sample_questions(const std::vector<YnQuestion>& universe, std::size_t n, std::uint64_t seed) {
  if (n > universe.size()) {
    throw UsageError("sample size " + std::to_string(n) + " exceeds universe of " +
                     std::to_string(universe.size()) + " questions");
  }
  std::vector<std::size_t> order(universe.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  // Partial Fisher-Yates: the first n slots become a uniform n-subset.
  auto select = Rng::derive(seed, "ynqf/select");
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(select.below(universe.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(n);
  std::sort(order.begin(), order.end());

  auto present = Rng::derive(seed, "ynqf/present");
  present.shuffle(std::span<std::size_t>(order));

  QuestionBatch batch{Format::Ynqf, seed, {}};
  batch.questions.reserve(n);
  for (auto idx : order) batch.questions.emplace_back(universe[idx]);
  ensure_unique_ids(batch.questions);
  return batch;
}

QuestionBatch mcqf_questions(const Corpus& corpus, std::uint64_t seed) {
  QuestionBatch batch{Format::Mcqf, seed, {}};
  const auto items = corpus.items_by_index();
  for (Country c : all_countries()) {
    for (const auto* item : items) {
      if (item->variants.size() < 2) continue;
      const auto* gold = corpus.gold_entry(item->index, c);
      if (gold == nullptr || gold->empty()) continue;
      std::vector<std::string> options = item->variants;
      std::string tag = "mcqf/options";
      tag += kUnitSep;
      tag += country_code(c);
      tag += kUnitSep;
      tag += item->index;
      auto rng = Rng::derive(seed, tag);
      rng.shuffle(std::span<std::string>(options));
      auto id = mcqf_id(c, item->index, options);
      batch.questions.emplace_back(McQuestion{std::move(id), c, item->index, std::move(options)});
    }
  }
  auto present = Rng::derive(seed, "mcqf/present");
  present.shuffle(std::span<Question>(batch.questions));
  ensure_unique_ids(batch.questions);
  return batch;
}

std::string render_prompt(const Corpus& corpus, const Question& question) {
  const auto& item = corpus.item(question_item(question));
  std::string out(kPreamble);
  out += "Usted es de ";
  out += spanish_name(question_country(question));
  out += ".\n";
  if (const auto* yn = std::get_if<YnQuestion>(&question)) {
    out += "¿Suele utilizar el término «" + yn->variant + "» para referirse a «" + item.description +
           "»? Responda únicamente con «Sí» o «No».";
    return out;
  }
  const auto& mc = std::get<McQuestion>(question);
  out += "¿Qué expresión(es) suele usar para referirse a «" + item.description + "»? Las opciones son:\n";
  for (std::size_t i = 0; i < mc.options.size(); ++i) {
    out += std::to_string(i + 1) + " " + mc.options[i] + "\n";
  }
  out +=
      "Conteste solo con el número correspondiente a la opción. Puede elegir más de una opción; en ese caso, "
      "los números deberán ir separados por el signo «/» en orden ascendente.";
  return out;
}

nlohmann::ordered_json batch_to_json(const QuestionBatch& batch) {
  nlohmann::ordered_json doc;
  doc["format"] = to_string(batch.format);
  doc["seed"] = batch.seed;
  auto& qs = doc["questions"] = nlohmann::ordered_json::array();
  for (const auto& q : batch.questions) {
    nlohmann::ordered_json j;
    j["id"] = question_id(q);
    j["country"] = country_code(question_country(q));
    j["item"] = question_item(q);
    if (const auto* yn = std::get_if<YnQuestion>(&q)) {
      j["variant"] = yn->variant;
    } else {
      j["options"] = std::get<McQuestion>(q).options;
    }
    qs.push_back(std::move(j));
  }
  return doc;
}

QuestionBatch batch_from_json(const nlohmann::json& doc) {
  try {
    QuestionBatch batch;
    batch.format = parse_format(doc.at("format").get<std::string>());
    batch.seed = doc.at("seed").get<std::uint64_t>();
    std::size_t i = 0;
    for (const auto& j : doc.at("questions")) {
      const std::string where = "questions[" + std::to_string(i++) + "]";
      const auto code = j.at("country").get<std::string>();
      auto c = parse_country(code);
      if (!c) throw DataError(where + ": unknown country '" + code + "'");
      auto id = j.at("id").get<std::string>();
      auto item = unicode::nfc(j.at("item").get<std::string>());
      if (batch.format == Format::Ynqf) {
        batch.questions.emplace_back(YnQuestion{std::move(id), *c, std::move(item),
                                                unicode::nfc(j.at("variant").get<std::string>())});
      } else {
        std::vector<std::string> options;
        for (const auto& o : j.at("options")) options.push_back(unicode::nfc(o.get<std::string>()));
        if (options.size() < 2) throw DataError(where + ": fewer than two options");
        batch.questions.emplace_back(McQuestion{std::move(id), *c, std::move(item), std::move(options)});
      }
    }
    ensure_unique_ids(batch.questions);
    return batch;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("batch manifest: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("batch manifest: ") + e.what());
  }
}

void save_batch(const QuestionBatch& batch, const std::filesystem::path& path) {
  io::write_file_atomic(path, batch_to_json(batch).dump(2) + "\n");
}

QuestionBatch load_batch(const std::filesystem::path& path) {
  try {
    return batch_from_json(nlohmann::json::parse(io::read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
}

void check_batch_against(const QuestionBatch& batch, const Corpus& corpus) {
  for (const auto& q : batch.questions) {
    const auto* item = corpus.find(question_item(q));
    if (item == nullptr) {
      throw DataError("question " + question_id(q) + " references unknown item '" + question_item(q) + "'");
    }
    if (const auto* yn = std::get_if<YnQuestion>(&q)) {
      if (std::find(item->variants.begin(), item->variants.end(), yn->variant) == item->variants.end()) {
        throw DataError("question " + yn->id + ": '" + yn->variant + "' is not a variant of " + item->index);
      }
    } else {
      auto options = std::get<McQuestion>(q).options;
      auto variants = item->variants;
      std::sort(options.begin(), options.end());
      std::sort(variants.begin(), variants.end());
      if (options != variants) {
        throw DataError("question " + question_id(q) + ": options are not a permutation of " + item->index);
      }
    }
  }
}

}  // namespace varinf
