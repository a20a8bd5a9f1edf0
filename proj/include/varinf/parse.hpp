#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace varinf {

// A validated answer. Parsers are total: anything unparseable becomes
// Invalid with a short reason.
struct ParsedResponse {
  enum class Kind { Yes, No, Selection, Invalid };

  Kind kind = Kind::Invalid;
  std::vector<int> selection;  // 1-based, strictly ascending
  std::string reason;

  static ParsedResponse yes() { return {Kind::Yes, {}, {}}; }
  static ParsedResponse no() { return {Kind::No, {}, {}}; }
  static ParsedResponse select(std::vector<int> indices) { return {Kind::Selection, std::move(indices), {}}; }
  static ParsedResponse invalid(std::string why) { return {Kind::Invalid, {}, std::move(why)}; }

  bool valid() const { return kind != Kind::Invalid; }
  bool operator==(const ParsedResponse&) const = default;
};

std::string describe(const ParsedResponse& r);

// Accepts "sí"/"si"/"no" after trimming whitespace and trailing . ! …
// and case folding. Any further token is rejected.
ParsedResponse parse_ynqf(std::string_view raw);

// Accepts "/"-separated decimal option numbers, strictly ascending, each in
// 1..option_count.
ParsedResponse parse_mcqf(std::string_view raw, int option_count);

}  // namespace varinf
