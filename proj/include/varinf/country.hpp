#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace varinf {

// The 21 Spanish-speaking countries, in the canonical order used for
// question generation and for every country-level table.
enum class Country : std::uint8_t {
  ES,  // Spain
  GQ,  // Equatorial Guinea
  CU,  // Cuba
  DO,  // Dominican Republic
  PR,  // Puerto Rico (counted as a country)
  MX,  // Mexico
  GT,  // Guatemala
  HN,  // Honduras
  SV,  // El Salvador
  NI,  // Nicaragua
  CR,  // Costa Rica
  PA,  // Panama
  CO,  // Colombia
  VE,  // Venezuela
  EC,  // Ecuador
  PE,  // Peru
  BO,  // Bolivia
  CL,  // Chile
  PY,  // Paraguay
  UY,  // Uruguay
  AR,  // Argentina
};

inline constexpr std::size_t kCountryCount = 21;

enum class DialectalArea : std::uint8_t {
  Spain,
  EquatorialGuinea,
  Antilles,
  MexicoCentralAmerica,
  ContinentalCaribe,
  Andes,
  Chile,
  LaPlataRiver,
};

inline constexpr std::size_t kAreaCount = 8;

const std::array<Country, kCountryCount>& all_countries();
const std::array<DialectalArea, kAreaCount>& all_areas();

// ISO 3166-1 alpha-2 code, e.g. "ES".
std::string_view country_code(Country c);
std::string_view english_name(Country c);
// Exonym used inside prompts, e.g. "España".
std::string_view spanish_name(Country c);

// Accepts an alpha-2 code (case-insensitive) or the English name.
std::optional<Country> parse_country(std::string_view text);

DialectalArea area_of(Country c);
std::span<const Country> area_members(DialectalArea a);
std::string_view area_name(DialectalArea a);
std::optional<DialectalArea> parse_area(std::string_view text);

constexpr std::size_t index_of(Country c) { return static_cast<std::size_t>(c); }

}  // namespace varinf
