#include "varinf/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>

#include "varinf/error.hpp"

namespace varinf::unicode {
namespace {

icu::UnicodeString decode(std::string_view utf8) {
  // Strict decode: ICU's fromUTF8 silently substitutes U+FFFD.
  UErrorCode status = U_ZERO_ERROR;
  int32_t length = 0;
  u_strFromUTF8(nullptr, 0, &length, utf8.data(), static_cast<int32_t>(utf8.size()), &status);
  if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
    throw DataError("invalid UTF-8 in text: " + std::string(utf8.substr(0, 64)));
  }
  return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU NFC normalizer unavailable");
  return *n;
}

std::string encode(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc_instance().normalize(decode(utf8), status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  return encode(normalized);
}

std::string fold_case(std::string_view utf8) {
  icu::UnicodeString s = decode(utf8);
  s.foldCase();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc_instance().normalize(s, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  return encode(normalized);
}

bool is_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  return nfc_instance().isNormalized(decode(utf8), status) && U_SUCCESS(status);
}

}  // namespace varinf::unicode
