#include "varinf/country.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace varinf {
namespace {

struct CountryInfo {
  std::string_view code;
  std::string_view english;
  std::string_view spanish;
  DialectalArea area;
};

constexpr std::array<CountryInfo, kCountryCount> kCountries{{
    {"ES", "Spain", "España", DialectalArea::Spain},
    {"GQ", "Equatorial Guinea", "Guinea Ecuatorial", DialectalArea::EquatorialGuinea},
    {"CU", "Cuba", "Cuba", DialectalArea::Antilles},
    {"DO", "Dominican Republic", "República Dominicana", DialectalArea::Antilles},
    {"PR", "Puerto Rico", "Puerto Rico", DialectalArea::Antilles},
    {"MX", "Mexico", "México", DialectalArea::MexicoCentralAmerica},
    {"GT", "Guatemala", "Guatemala", DialectalArea::MexicoCentralAmerica},
    {"HN", "Honduras", "Honduras", DialectalArea::MexicoCentralAmerica},
    {"SV", "El Salvador", "El Salvador", DialectalArea::MexicoCentralAmerica},
    {"NI", "Nicaragua", "Nicaragua", DialectalArea::MexicoCentralAmerica},
    {"CR", "Costa Rica", "Costa Rica", DialectalArea::ContinentalCaribe},
    {"PA", "Panama", "Panamá", DialectalArea::ContinentalCaribe},
    {"CO", "Colombia", "Colombia", DialectalArea::Andes},
    {"VE", "Venezuela", "Venezuela", DialectalArea::ContinentalCaribe},
    {"EC", "Ecuador", "Ecuador", DialectalArea::Andes},
    {"PE", "Peru", "Perú", DialectalArea::Andes},
    {"BO", "Bolivia", "Bolivia", DialectalArea::Andes},
    {"CL", "Chile", "Chile", DialectalArea::Chile},
    {"PY", "Paraguay", "Paraguay", DialectalArea::LaPlataRiver},
    {"UY", "Uruguay", "Uruguay", DialectalArea::LaPlataRiver},
    {"AR", "Argentina", "Argentina", DialectalArea::LaPlataRiver},
}};

constexpr std::array<std::string_view, kAreaCount> kAreaNames{
    "Spain",      "Equatorial Guinea", "Antilles", "Mexico & Central America",
    "Continental Caribe", "Andes",     "Chile",    "La Plata River",
};

using C = Country;
constexpr std::array<Country, 1> kSpain{C::ES};
constexpr std::array<Country, 1> kEqGuinea{C::GQ};
constexpr std::array<Country, 3> kAntilles{C::CU, C::DO, C::PR};
constexpr std::array<Country, 5> kMexCa{C::MX, C::GT, C::HN, C::SV, C::NI};
constexpr std::array<Country, 3> kContCaribe{C::CR, C::PA, C::VE};
constexpr std::array<Country, 4> kAndes{C::CO, C::EC, C::PE, C::BO};
constexpr std::array<Country, 1> kChile{C::CL};
constexpr std::array<Country, 3> kLaPlata{C::PY, C::UY, C::AR};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

const std::array<Country, kCountryCount>& all_countries() {
  static const auto countries = [] {
    std::array<Country, kCountryCount> out{};
    for (std::size_t i = 0; i < kCountryCount; ++i) out[i] = static_cast<Country>(i);
    return out;
  }();
  return countries;
}

const std::array<DialectalArea, kAreaCount>& all_areas() {
  static const auto areas = [] {
    std::array<DialectalArea, kAreaCount> out{};
    for (std::size_t i = 0; i < kAreaCount; ++i) out[i] = static_cast<DialectalArea>(i);
    return out;
  }();
  return areas;
}

std::string_view country_code(Country c) { return kCountries[index_of(c)].code; }
std::string_view english_name(Country c) { return kCountries[index_of(c)].english; }
std::string_view spanish_name(Country c) { return kCountries[index_of(c)].spanish; }
DialectalArea area_of(Country c) { return kCountries[index_of(c)].area; }

std::optional<Country> parse_country(std::string_view text) {
  for (std::size_t i = 0; i < kCountryCount; ++i) {
    if (iequals(text, kCountries[i].code) || iequals(text, kCountries[i].english)) {
      return static_cast<Country>(i);
    }
  }
  return std::nullopt;
}

std::span<const Country> area_members(DialectalArea a) {
  switch (a) {
    case DialectalArea::Spain: return kSpain;
    case DialectalArea::EquatorialGuinea: return kEqGuinea;
    case DialectalArea::Antilles: return kAntilles;
    case DialectalArea::MexicoCentralAmerica: return kMexCa;
    case DialectalArea::ContinentalCaribe: return kContCaribe;
    case DialectalArea::Andes: return kAndes;
    case DialectalArea::Chile: return kChile;
    case DialectalArea::LaPlataRiver: return kLaPlata;
  }
  return {};
}

std::string_view area_name(DialectalArea a) { return kAreaNames[static_cast<std::size_t>(a)]; }

std::optional<DialectalArea> parse_area(std::string_view text) {
  for (std::size_t i = 0; i < kAreaCount; ++i) {
    if (iequals(text, kAreaNames[i])) return static_cast<DialectalArea>(i);
  }
  return std::nullopt;
}

}  // namespace varinf
