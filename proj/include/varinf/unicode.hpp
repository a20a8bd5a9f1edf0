#pragma once

#include <string>
#include <string_view>

namespace varinf::unicode {

// Canonical composition (NFC). Throws DataError on malformed UTF-8.
std::string nfc(std::string_view utf8);

// Full Unicode case folding followed by NFC.
std::string fold_case(std::string_view utf8);

bool is_nfc(std::string_view utf8);

}  // namespace varinf::unicode
