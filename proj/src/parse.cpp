#include "varinf/parse.hpp"

#include <charconv>
#include <stdexcept>

#include "varinf/io.hpp"
#include "varinf/unicode.hpp"

namespace varinf {
namespace {

constexpr std::string_view kEllipsis = "…";

bool strip_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
    s.remove_suffix(suffix.size());
    return true;
  }
  return false;
}

std::string_view strip_terminal(std::string_view s) {
  while (true) {
    s = io::trim(s);
    if (strip_suffix(s, ".") || strip_suffix(s, "!") || strip_suffix(s, kEllipsis)) continue;
    return s;
  }
}

bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ';' || c == ':';
}

}  // namespace

std::string describe(const ParsedResponse& r) {
  switch (r.kind) {
    case ParsedResponse::Kind::Yes: return "yes";
    case ParsedResponse::Kind::No: return "no";
    case ParsedResponse::Kind::Selection: {
      std::string out;
      for (int i : r.selection) out += (out.empty() ? "" : "/") + std::to_string(i);
      return out;
    }
    case ParsedResponse::Kind::Invalid: return "invalid(" + r.reason + ")";
  }
  return "?";
}

ParsedResponse parse_ynqf(std::string_view raw) {
  std::string folded;
  try {
    folded = unicode::fold_case(strip_terminal(raw));
  } catch (const std::exception&) {
    return ParsedResponse::invalid("malformed text");
  }
  if (folded.empty()) return ParsedResponse::invalid("empty");

  auto classify = [](std::string_view token) -> int {
    if (token == "sí" || token == "si") return 1;
    if (token == "no") return 0;
    return -1;
  };
  if (int v = classify(folded); v >= 0) return v ? ParsedResponse::yes() : ParsedResponse::no();

  for (char c : folded) {
    if (is_separator(c)) return ParsedResponse::invalid("extra tokens");
  }
  return ParsedResponse::invalid("unrecognized answer");
}

ParsedResponse parse_mcqf(std::string_view raw, int option_count) {
  if (option_count < 2) throw std::invalid_argument("parse_mcqf: option_count must be >= 2");
  std::string_view s = io::trim(raw);
  if (s.empty()) return ParsedResponse::invalid("empty");

  std::vector<int> picks;
  std::size_t start = 0;
  while (true) {
    const auto slash = s.find('/', start);
    const auto token = s.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    if (token.empty()) return ParsedResponse::invalid("empty selection");
    for (char c : token) {
      if (c < '0' || c > '9') return ParsedResponse::invalid("not a number");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return ParsedResponse::invalid("out of range");
    picks.push_back(value);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }

  for (int p : picks) {
    if (p < 1 || p > option_count) return ParsedResponse::invalid("out of range");
  }
  for (std::size_t i = 1; i < picks.size(); ++i) {
    if (picks[i] == picks[i - 1]) return ParsedResponse::invalid("duplicate");
  }
  for (std::size_t i = 1; i < picks.size(); ++i) {
    if (picks[i] < picks[i - 1]) {
      // "2/1/2" is a duplicate before it is an ordering problem.
      for (std::size_t a = 0; a < picks.size(); ++a)
        for (std::size_t b = a + 1; b < picks.size(); ++b)
          if (picks[a] == picks[b]) return ParsedResponse::invalid("duplicate");
      return ParsedResponse::invalid("not ascending");
    }
  }
  return ParsedResponse::select(std::move(picks));
}

}  // namespace varinf
