#ifndef TOPKAT_JSON_IO_HPP
#define TOPKAT_JSON_IO_HPP

#include "topkat/domain.hpp"
#include "topkat/relmodel.hpp"

#include <json.hpp>

namespace topkat {

/// Version of every JSON document this library writes.
inline constexpr int json_schema_version = 1;

/// {"prim": [[i, j], ...], ...} over actions and tests.
nlohmann::json relations_json(const RelInterpretation& interp);

/// {"carrier", "relations", "violating_point", "witness", "side"}; carrier
/// entries are guarded strings over the extended alphabet.
nlohmann::json countermodel_json(const ComparisonVerdict::Refutation& refutation, const Alphabet& alphabet);

/// Search results have plain numeric carriers.
nlohmann::json countermodel_json(const RelCountermodel& model);

} // namespace topkat

#endif
