#include "doctest.h"
#include "support.hpp"
#include "varinf/informant.hpp"
#include "varinf/parse.hpp"

using namespace varinf;
using varinf::testing::fixture;

namespace {

Question yn(Country c, const char* item, const char* variant) {
  return YnQuestion{ynqf_id(c, item, variant), c, item, variant};
}

Question mc(Country c, const char* item, std::vector<std::string> options) {
  auto id = mcqf_id(c, item, options);
  return McQuestion{std::move(id), c, item, std::move(options)};
}

}  // namespace

TEST_CASE("baselines") {
  CHECK(baseline_answer(yn(Country::CL, "A141", "carro")) == "Sí");
  CHECK(baseline_answer(mc(Country::CL, "A141", {"a", "b", "c", "d", "e", "f"})) == "1/2/3");
  CHECK(baseline_answer(mc(Country::CL, "A141", {"a", "b"})) == "1/2");

  BaselineYesInformant yes;
  BaselineFirst3Informant first3;
  CHECK(yes.answer(yn(Country::ES, "A141", "coche"), "") == "Sí");
  CHECK(first3.answer(mc(Country::ES, "A141", {"a", "b", "c", "d"}), "") == "1/2/3");
  try {
    yes.answer(mc(Country::ES, "A141", {"a", "b"}), "");
    FAIL("expected InformantError");
  } catch (const InformantError& e) {
    CHECK_FALSE(e.transient());
  }
  CHECK(yes.descriptor().deterministic);
  CHECK(yes.descriptor().kind == "baseline-yes");
}

TEST_CASE("oracle reads gold") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  CHECK(oracle_answer(corpus, yn(Country::ES, "A141", "coche")) == "Sí");
  CHECK(oracle_answer(corpus, yn(Country::ES, "A141", "carro")) == "No");
  CHECK(oracle_answer(corpus, yn(Country::CU, "A141", "carro")) == "No");
  // Argentina: auto, automóvil, coche
  CHECK(oracle_answer(corpus, mc(Country::AR, "A141", {"carro", "coche", "auto", "concho", "automóvil", "máquina"})) ==
        "2/3/5");
}

TEST_CASE("noisy oracle") {
  const auto corpus = load_corpus(fixture("corpus_a141.json"));
  const auto universe = ynqf_universe(corpus);

  SUBCASE("epsilon 0 equals oracle") {
    for (const auto& q : universe) CHECK(noisy_answer(corpus, q, 0.0, 17) == oracle_answer(corpus, q));
    const auto batch = mcqf_questions(corpus, 3);
    for (const auto& q : batch.questions) CHECK(noisy_answer(corpus, q, 0.0, 17) == oracle_answer(corpus, q));
  }
  SUBCASE("epsilon 1 inverts every yes/no verdict") {
    for (const auto& q : universe) {
      const auto truth = parse_ynqf(oracle_answer(corpus, q)).kind;
      const auto noisy = parse_ynqf(noisy_answer(corpus, q, 1.0, 17)).kind;
      CHECK(noisy != truth);
    }
  }
  SUBCASE("deterministic per (seed, question)") {
    const Question q = universe[40];
    CHECK(noisy_answer(corpus, q, 0.5, 8) == noisy_answer(corpus, q, 0.5, 8));
    NoisyOracleInformant a(corpus, 0.5, 8);
    CHECK(a.answer(q, "") == noisy_answer(corpus, q, 0.5, 8));
  }
  SUBCASE("epsilon 0.5 makes option membership a coin flip") {
    const Question q = mc(Country::ES, "A141", {"auto", "automóvil", "carro", "coche", "concho", "máquina"});
    std::vector<int> chosen(6, 0);
    const int trials = 10000;
    for (int s = 0; s < trials; ++s) {
      const auto parsed = parse_mcqf(noisy_answer(corpus, q, 0.5, static_cast<std::uint64_t>(s)), 6);
      REQUIRE(parsed.kind == ParsedResponse::Kind::Selection);
      for (int i : parsed.selection) ++chosen[static_cast<std::size_t>(i - 1)];
    }
    // 4 sigma at n = 1e4 is 0.02; empty-set replacement adds 1/384.
    for (int c : chosen) CHECK(std::abs(c / double(trials) - 0.5) < 0.025);
  }
}

TEST_CASE("descriptor round trip") {
  InformantDescriptor d{"noisy-oracle", {{"epsilon", 0.3}, {"seed", 5}}, true, true};
  CHECK(InformantDescriptor::from_json(nlohmann::json(d.to_json())) == d);
}
