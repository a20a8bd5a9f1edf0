#include "varinf/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/unicode.hpp"

namespace varinf {

Corpus::Corpus(std::vector<LexicalItem> items, GoldMap gold)
    : items_(std::move(items)), gold_(std::move(gold)) {
  for (std::size_t i = 0; i < items_.size(); ++i) by_index_.emplace(items_[i].index, i);
}

const LexicalItem* Corpus::find(std::string_view index) const {
  auto it = by_index_.find(index);
  return it == by_index_.end() ? nullptr : &items_[it->second];
}

const LexicalItem& Corpus::item(std::string_view index) const {
  if (const auto* found = find(index)) return *found;
  throw UsageError("unknown item index '" + std::string(index) + "'");
}

std::vector<const LexicalItem*> Corpus::items_by_index() const {
  std::vector<const LexicalItem*> out;
  out.reserve(by_index_.size());
  for (const auto& [index, pos] : by_index_) out.push_back(&items_[pos]);
  return out;
}

const std::vector<std::string>* Corpus::gold_entry(std::string_view index, Country c) const {
  auto it = gold_.find({std::string(index), c});
  return it == gold_.end() ? nullptr : &it->second;
}

std::size_t Corpus::variant_total() const {
  std::size_t n = 0;
  for (const auto& item : items_) n += item.variants.size();
  return n;
}

VariantSet gold_set(const Corpus& corpus, std::string_view item, Country country) {
  corpus.item(item);
  const auto* entry = corpus.gold_entry(item, country);
  if (entry == nullptr) return {};
  return VariantSet(entry->begin(), entry->end());
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyIndex: return "empty-index";
    case ViolationKind::DuplicateIndex: return "duplicate-index";
    case ViolationKind::EmptyVariants: return "empty-variants";
    case ViolationKind::DuplicateVariant: return "duplicate-variant";
    case ViolationKind::GoldUnknownItem: return "gold-unknown-item";
    case ViolationKind::GoldNotInVariants: return "gold-not-in-variants";
    case ViolationKind::DuplicateGold: return "duplicate-gold";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " in item " << (item.empty() ? "<unnamed>" : item);
  if (country) os << " / " << english_name(*country) << " (" << country_code(*country) << ")";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["items"] = items;
  j["variants"] = variants;
  auto& per_country = j["gold_entries"] = nlohmann::ordered_json::object();
  for (Country c : all_countries()) {
    per_country[std::string(country_code(c))] = {{"entries", gold_entries[index_of(c)]},
                                                 {"explicit_empty", explicit_empty[index_of(c)]}};
  }
  auto& list = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    nlohmann::ordered_json e{{"kind", to_string(v.kind)}, {"item", v.item}};
    e["country"] = v.country ? nlohmann::ordered_json(country_code(*v.country)) : nullptr;
    e["detail"] = v.detail;
    list.push_back(std::move(e));
  }
  return j;
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  report.items = corpus.size();
  std::unordered_set<std::string> seen_index;
  for (const auto& item : corpus.items()) {
    report.variants += item.variants.size();
    if (item.index.empty()) {
      report.violations.push_back({ViolationKind::EmptyIndex, item.index, std::nullopt, {}});
    } else if (!seen_index.insert(item.index).second) {
      report.violations.push_back({ViolationKind::DuplicateIndex, item.index, std::nullopt, {}});
    }
    if (item.variants.empty()) {
      report.violations.push_back({ViolationKind::EmptyVariants, item.index, std::nullopt, {}});
    }
    std::unordered_set<std::string> seen_variant;
    for (const auto& v : item.variants) {
      if (!seen_variant.insert(v).second) {
        report.violations.push_back({ViolationKind::DuplicateVariant, item.index, std::nullopt, "'" + v + "'"});
      }
    }
  }
  for (const auto& [key, entries] : corpus.gold()) {
    const auto& [index, country] = key;
    ++report.gold_entries[index_of(country)];
    if (entries.empty()) ++report.explicit_empty[index_of(country)];
    const auto* item = corpus.find(index);
    if (item == nullptr) {
      report.violations.push_back({ViolationKind::GoldUnknownItem, index, country, {}});
      continue;
    }
    std::unordered_set<std::string> seen;
    for (const auto& g : entries) {
      if (std::find(item->variants.begin(), item->variants.end(), g) == item->variants.end()) {
        report.violations.push_back({ViolationKind::GoldNotInVariants, index, country, "'" + g + "'"});
      }
      if (!seen.insert(g).second) {
        report.violations.push_back({ViolationKind::DuplicateGold, index, country, "'" + g + "'"});
      }
    }
  }
  return report;
}

namespace {

std::string locus(std::size_t record, std::string_view index) {
  std::string s = "items[" + std::to_string(record) + "]";
  if (!index.empty()) s += " (" + std::string(index) + ")";
  return s;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(where + ": missing field '" + key + "'");
  if (!it->is_string()) throw DataError(where + ": field '" + key + "' must be a string");
  return unicode::nfc(it->get<std::string>());
}

std::vector<std::string> string_list(const nlohmann::json& value, const std::string& where) {
  if (!value.is_array()) throw DataError(where + ": expected an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_string()) throw DataError(where + ": expected an array of strings");
    out.push_back(unicode::nfc(v.get<std::string>()));
  }
  return out;
}

}  // namespace

Corpus parse_corpus_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DataError("corpus: top-level value must be an object");
  auto items_it = doc.find("items");
  if (items_it == doc.end()) throw DataError("corpus: missing field 'items'");
  if (!items_it->is_array()) throw DataError("corpus: 'items' must be an array");

  std::vector<LexicalItem> items;
  GoldMap gold;
  std::size_t record = 0;
  for (const auto& rec : *items_it) {
    std::string where = locus(record, {});
    if (!rec.is_object()) throw DataError(where + ": item must be an object");
    LexicalItem item;
    item.index = require_string(rec, "index", where);
    where = locus(record, item.index);
    item.description = require_string(rec, "description", where);
    item.english = require_string(rec, "english", where);
    auto variants_it = rec.find("variants");
    if (variants_it == rec.end()) throw DataError(where + ": missing field 'variants'");
    item.variants = string_list(*variants_it, where + ".variants");

    auto gold_it = rec.find("gold");
    if (gold_it == rec.end()) throw DataError(where + ": missing field 'gold'");
    if (!gold_it->is_object()) throw DataError(where + ": 'gold' must be an object");
    for (const auto& [code, list] : gold_it->items()) {
      auto country = parse_country(code);
      if (!country || country_code(*country) != code) {
        throw DataError(where + ".gold: unknown country code '" + code + "'");
      }
      gold[{item.index, *country}] = string_list(list, where + ".gold." + code);
    }

    for (const auto& [key, value] : rec.items()) {
      if (key == "index" || key == "description" || key == "english" || key == "variants" || key == "gold") {
        continue;
      }
      item.metadata[key] = value;
    }
    items.push_back(std::move(item));
    ++record;
  }
  return Corpus(std::move(items), std::move(gold));
}

Corpus load_corpus(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
  Corpus corpus;
  try {
    corpus = parse_corpus_json(doc);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  auto report = validate_corpus(corpus);
  if (!report.valid()) {
    std::string msg = path.string() + ": " + std::to_string(report.violations.size()) + " invariant violation(s)";
    for (std::size_t i = 0; i < report.violations.size() && i < 10; ++i) {
      msg += "\n  " + report.violations[i].describe();
    }
    throw DataError(msg);
  }
  return corpus;
}

nlohmann::ordered_json corpus_to_json(const Corpus& corpus) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& item : corpus.items()) {
    nlohmann::ordered_json j;
    j["index"] = item.index;
    j["description"] = item.description;
    j["english"] = item.english;
    j["variants"] = item.variants;
    auto& gold = j["gold"] = nlohmann::ordered_json::object();
    for (Country c : all_countries()) {
      if (const auto* entry = corpus.gold_entry(item.index, c)) {
        gold[std::string(country_code(c))] = *entry;
      }
    }
    for (const auto& [key, value] : item.metadata.items()) j[key] = value;
    items.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["items"] = std::move(items);
  return doc;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  io::write_file_atomic(path, corpus_to_json(corpus).dump(2) + "\n");
}

Corpus ingest_tsv(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  auto lines = io::split(text, '\n');
  if (lines.empty() || io::trim(lines[0]).empty()) throw DataError(path.string() + ": empty TSV");

  const std::vector<std::string> expected{"index", "description", "english", "variant", "country", "mark"};
  auto header = io::split(io::trim(lines[0]), '\t');
  if (header != expected) {
    throw DataError(path.string() + ":1: header must be index, description, english, variant, country, mark");
  }

  std::vector<LexicalItem> items;
  std::map<std::string, std::size_t> pos;
  GoldMap gold;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (io::trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(ln + 1);
    auto cells = io::split(line, '\t');
    if (cells.size() != expected.size()) {
      throw DataError(where + ": expected 6 tab-separated cells, got " + std::to_string(cells.size()));
    }
    for (auto& cell : cells) cell = unicode::nfc(io::trim(cell));
    const auto& index = cells[0];
    if (index.empty()) throw DataError(where + ": empty item index");
    auto country = parse_country(cells[4]);
    if (!country) throw DataError(where + " (" + index + "): unknown country '" + cells[4] + "'");
    const auto& mark = cells[5];
    const bool plus = mark == "+";
    if (!plus && mark != "-" && mark != "–") {
      throw DataError(where + " (" + index + "): mark must be '+' or '-', got '" + mark + "'");
    }

    auto [it, inserted] = pos.emplace(index, items.size());
    if (inserted) {
      items.push_back(LexicalItem{index, cells[1], cells[2], {}, nlohmann::ordered_json::object()});
    }
    auto& item = items[it->second];
    if (item.description != cells[1] || item.english != cells[2]) {
      throw DataError(where + " (" + index + "): description/english differ from earlier rows");
    }
    const auto& variant = cells[3];
    if (variant.empty()) throw DataError(where + " (" + index + "): empty variant");
    if (std::find(item.variants.begin(), item.variants.end(), variant) == item.variants.end()) {
      item.variants.push_back(variant);
    }
    auto& entry = gold[{index, *country}];
    if (plus && std::find(entry.begin(), entry.end(), variant) == entry.end()) entry.push_back(variant);
  }

  // Gold lists follow the item's variant order.
  Corpus unordered(items, {});
  for (auto& [key, entry] : gold) {
    const auto& variants = unordered.item(key.first).variants;
    std::stable_sort(entry.begin(), entry.end(), [&](const std::string& a, const std::string& b) {
      return std::find(variants.begin(), variants.end(), a) < std::find(variants.begin(), variants.end(), b);
    });
  }
  return Corpus(std::move(items), std::move(gold));
}

}  // namespace varinf
