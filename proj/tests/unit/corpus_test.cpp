#include "doctest.h"
#include "support.hpp"
#include "varinf/corpus.hpp"
#include "varinf/error.hpp"
#include "varinf/io.hpp"
#include "varinf/unicode.hpp"

using namespace varinf;
using varinf::testing::fixture;

TEST_CASE("load A141 from Table-2 fixture") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  REQUIRE(corpus.size() == 1);
  const auto& item = corpus.item("A141");
  CHECK(item.variants == std::vector<std::string>{"auto", "automóvil", "carro", "coche", "concho", "máquina"});
  CHECK(item.english == "CAR");
  CHECK(gold_set(corpus, "A141", Country::ES) == VariantSet{"coche"});
  CHECK(gold_set(corpus, "A141", Country::AR) == VariantSet{"auto", "automóvil", "coche"});
  CHECK(gold_set(corpus, "A141", Country::CU).empty());
  CHECK_THROWS_AS(gold_set(corpus, "Z999", Country::ES), UsageError);
  // opaque metadata survives
  CHECK(item.metadata.contains("examples"));
}

TEST_CASE("empty corpus is valid") {
  const auto corpus = load_corpus(fixture("corpus_empty.json"));
  CHECK(corpus.empty());
  CHECK(validate_corpus(corpus).valid());
}

TEST_CASE("gold variant outside the item names item and country") {
  try {
    load_corpus(fixture("corpus_bad_gold.json"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("A141") != std::string::npos);
    CHECK(msg.find("Spain") != std::string::npos);
    CHECK(msg.find("cochee") != std::string::npos);
  }
}

TEST_CASE("validate_corpus counts and violations") {
  SUBCASE("valid 3-item fixture") {
    const auto report = validate_corpus(load_corpus(fixture("corpus_small.json")));
    CHECK(report.items == 3);
    CHECK(report.violations.empty());
    CHECK(report.variants == 6 + 3 + 3);
    CHECK(report.gold_entries[index_of(Country::ES)] == 3);
  }
  SUBCASE("duplicate variant") {
    const auto doc = nlohmann::json::parse(io::read_file(fixture("corpus_dup_variant.json")));
    const auto report = validate_corpus(parse_corpus_json(doc));
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::DuplicateVariant);
    CHECK(report.violations[0].item == "A141");
    CHECK_THROWS_AS(load_corpus(fixture("corpus_dup_variant.json")), DataError);
  }
  SUBCASE("explicit empty gold is reported separately") {
    GoldMap gold{{{"X1", Country::CL}, {}}};
    Corpus c({LexicalItem{"X1", "d", "e", {"a", "b"}, nlohmann::ordered_json::object()}}, gold);
    const auto report = validate_corpus(c);
    CHECK(report.valid());
    CHECK(report.explicit_empty[index_of(Country::CL)] == 1);
    CHECK(gold_set(c, "X1", Country::CL).empty());
  }
}

TEST_CASE("schema violations") {
  auto parse = [](const char* text) { return parse_corpus_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_WITH_AS(parse(R"({"items":[{"index":"A1","description":"d","english":"e","variants":["a"]}]})"),
                       doctest::Contains("gold"), DataError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"items":[{"index":"A1","description":"d","english":"e","variants":["a"],"gold":{"US":["a"]}}]})"),
      doctest::Contains("US"), DataError);
  CHECK_THROWS_AS(parse(R"({"things":[]})"), DataError);
  CHECK_THROWS_WITH_AS(parse(R"({"items":[{"index":"A1","english":"e","variants":["a"],"gold":{}}]})"),
                       doctest::Contains("items[0] (A1)"), DataError);
}

TEST_CASE("variants are NFC-normalized at load, so decomposed accents collide") {
  // "automóvil" spelled with o + combining acute accent
  const std::string decomposed = "automo\xCC\x81vil";
  CHECK_FALSE(unicode::is_nfc(decomposed));
  const std::string text = R"({"items":[{"index":"A1","description":"d","english":"e","variants":["automóvil",")" +
                           decomposed + R"("],"gold":{}}]})";
  const auto corpus = parse_corpus_json(nlohmann::json::parse(text));
  CHECK(corpus.items()[0].variants[1] == "automóvil");
  const auto report = validate_corpus(corpus);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::DuplicateVariant);
}

TEST_CASE("round trip through JSON is field-identical") {
  varinf::testing::TempDir tmp;
  for (const char* name : {"corpus_a141.json", "corpus_small.json"}) {
    const auto corpus = load_corpus(fixture(name));
    save_corpus(corpus, tmp / "out.json");
    CHECK(load_corpus(tmp / "out.json") == corpus);
  }
  const auto bundled = load_corpus(varinf::testing::bundled("fixture_corpus.json"));
  save_corpus(bundled, tmp / "bundled.json");
  CHECK(load_corpus(tmp / "bundled.json") == bundled);
}

TEST_CASE("gold_set is a subset of the item's variants everywhere") {
  const auto corpus = load_corpus(varinf::testing::bundled("fixture_corpus.json"));
  for (const auto& item : corpus.items()) {
    const VariantSet all(item.variants.begin(), item.variants.end());
    for (Country c : all_countries()) {
      for (const auto& g : gold_set(corpus, item.index, c)) CHECK(all.count(g) == 1);
    }
  }
}

TEST_CASE("TSV ingest") {
  varinf::testing::TempDir tmp;
  const std::string tsv =
      "index\tdescription\tenglish\tvariant\tcountry\tmark\n"
      "A141\tvehículo\tCAR\tcoche\tES\t+\n"
      "A141\tvehículo\tCAR\tcarro\tES\t-\n"
      "A141\tvehículo\tCAR\tcarro\tVE\t+\n"
      "A141\tvehículo\tCAR\tcoche\tVE\t–\n"
      "A141\tvehículo\tCAR\tauto\tAR\t+\n"
      "A141\tvehículo\tCAR\tcoche\tAR\t+\n"
      "B1\tpeanut\tPEANUT\tmaní\tCL\t-\n";
  io::write_file_atomic(tmp / "in.tsv", tsv);
  const auto corpus = ingest_tsv(tmp / "in.tsv");
  CHECK(validate_corpus(corpus).valid());
  CHECK(corpus.item("A141").variants == std::vector<std::string>{"coche", "carro", "auto"});
  CHECK(gold_set(corpus, "A141", Country::VE) == VariantSet{"carro"});
  // gold lists follow variant order
  CHECK(*corpus.gold_entry("A141", Country::AR) == std::vector<std::string>{"coche", "auto"});
  // only "-" marks: explicit empty entry
  REQUIRE(corpus.gold_entry("B1", Country::CL) != nullptr);
  CHECK(corpus.gold_entry("B1", Country::CL)->empty());

  io::write_file_atomic(tmp / "bad.tsv", "index\tdescription\tenglish\tvariant\tcountry\tmark\nA1\td\te\tv\tES\t?\n");
  CHECK_THROWS_WITH_AS(ingest_tsv(tmp / "bad.tsv"), doctest::Contains(":2"), DataError);
}

TEST_CASE("full-scale counts: 934 items, 9057 variants, 190197 yes/no triples") {
  // Synthetic corpus with the published dimensions.
  std::vector<LexicalItem> items;
  std::size_t remaining = 9057;
  for (std::size_t i = 0; i < 934; ++i) {
    const std::size_t k = i == 933 ? remaining : (i % 17 == 0 ? 1 : 9);
    LexicalItem item{"A" + std::to_string(1000 + i), "d", "e", {}, nlohmann::ordered_json::object()};
    for (std::size_t v = 0; v < k; ++v) item.variants.push_back("v" + std::to_string(v));
    remaining -= k;
    items.push_back(std::move(item));
  }
  const Corpus corpus(std::move(items), {});
  const auto report = validate_corpus(corpus);
  CHECK(report.valid());
  CHECK(report.items == 934);
  CHECK(report.variants == 9057);
  CHECK(corpus.variant_total() * kCountryCount == 190197);
}
