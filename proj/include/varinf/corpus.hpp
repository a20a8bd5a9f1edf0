#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "varinf/country.hpp"

namespace varinf {

using VariantSet = std::set<std::string>;

struct LexicalItem {
  std::string index;
  std::string description;
  std::string english;
  std::vector<std::string> variants;
  // Any extra keys of the item record (example sentences and the like).
  // Carried through serialization untouched.
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  bool operator==(const LexicalItem&) const = default;
};

// Gold annotations in file order; a key present with an empty list is an
// explicit "no predominant variant" annotation.
using GoldMap = std::map<std::pair<std::string, Country>, std::vector<std::string>>;

// Plain data holder. Construction does not validate; load_corpus() and
// validate_corpus() are responsible for the invariants.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<LexicalItem> items, GoldMap gold);

  const std::vector<LexicalItem>& items() const { return items_; }
  const GoldMap& gold() const { return gold_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const LexicalItem* find(std::string_view index) const;
  // Throws UsageError for an unknown index.
  const LexicalItem& item(std::string_view index) const;

  // Items ordered by index string; the generation order for questions.
  std::vector<const LexicalItem*> items_by_index() const;

  // nullopt when the corpus has no annotation for (item, country).
  const std::vector<std::string>* gold_entry(std::string_view index, Country c) const;

  std::size_t variant_total() const;

  bool operator==(const Corpus& other) const {
    return items_ == other.items_ && gold_ == other.gold_;
  }

 private:
  std::vector<LexicalItem> items_;
  GoldMap gold_;
  std::map<std::string, std::size_t, std::less<>> by_index_;
};

// Predominant ("+") variants of an item in a country. The empty set when no
// annotation exists. Throws UsageError for an unknown item.
VariantSet gold_set(const Corpus& corpus, std::string_view item, Country country);

enum class ViolationKind {
  EmptyIndex,
  DuplicateIndex,
  EmptyVariants,
  DuplicateVariant,
  GoldUnknownItem,
  GoldNotInVariants,
  DuplicateGold,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string item;
  std::optional<Country> country;
  std::string detail;

  std::string describe() const;
};

struct ValidationReport {
  std::size_t items = 0;
  std::size_t variants = 0;
  std::array<std::size_t, kCountryCount> gold_entries{};
  std::array<std::size_t, kCountryCount> explicit_empty{};
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  nlohmann::ordered_json to_json() const;
};

ValidationReport validate_corpus(const Corpus& corpus);

// Schema-level parsing only (field presence and types, country codes,
// NFC normalization of every string). Throws DataError naming the record.
Corpus parse_corpus_json(const nlohmann::json& doc);

// parse + validate; any violation is a DataError naming item and country.
Corpus load_corpus(const std::filesystem::path& path);

nlohmann::ordered_json corpus_to_json(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Converts the one-row-per-cell TSV export (columns index, description,
// english, variant, country, mark) into a Corpus. Marks are "+" or "-".
Corpus ingest_tsv(const std::filesystem::path& path);

}  // namespace varinf
