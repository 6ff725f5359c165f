#ifndef SOERGEL_JSONIO_HPP
#define SOERGEL_JSONIO_HPP

// JSON and CSV emitters for the computed tables, plus versioned module
// serialization used by the CLI cache. All emitters are byte-deterministic:
// keys are emitted in a fixed order and tables are keyed by canonical-form
// words.

#include <json.hpp>

#include "soergel/charcalc.hpp"

namespace soergel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "charcalc/v1";
inline constexpr const char* kModuleSchemaVersion = "soergel-module/v1";
inline constexpr const char* kEngineVersion = "1.0.0";

// Laurent polynomial as {"offset": lowest exponent, "coeffs": [low..high]}.
Json laurent_to_json(const Laurent& p);
Laurent laurent_from_json(const Json& j);

Json module_to_json(const GradedModule& m);
GradedModule module_from_json(const Json& j);

Json indec_table_to_json(const IndecTable& t);
// Validates shape, ring and schema; rebuilds modules and characters. The
// caller re-checks module invariants before trusting cached data.
struct CachedLibrary {
    CoefRing ring;
    std::vector<GradedModule> modules;
    std::vector<HeckeElt> characters;
    std::vector<std::vector<Laurent>> homs;
};
CachedLibrary indec_table_from_json(const Json& j, const WeylGroup& g);

// debug dump of the coinvariant bases (basis monomials, invariant and
// ideal dimensions per degree)
Json coinvariants_to_json(const Coinvariants& c);

// table emitters
Json klpoly_to_json(const WeylGroup& g, const KLTable& t, const InversionReport& rep);
std::string klpoly_to_csv(const WeylGroup& g, const KLTable& t);

Json stalks_to_json(const CharCalc& cc, const std::string& preset);
std::string stalks_to_csv(const CharCalc& cc);

Json mult_to_json(const CharCalc& cc, const std::string& preset);
std::string mult_to_csv(const CharCalc& cc);

Json decomp_to_json(const WeylGroup& g, const DecompMatrices& dm, const std::string& preset,
                    long ell);
std::string decomp_to_csv(const WeylGroup& g, const DecompMatrices& dm);

// deterministic file write (trailing newline, no locale dependence)
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace soergel

#endif
