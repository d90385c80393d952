#include "topkat/json_io.hpp"

namespace topkat {

nlohmann::json relations_json(const RelInterpretation& interp) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto* group : {&interp.actions, &interp.tests})
        for (const auto& [name, rel] : *group) {
            nlohmann::json pairs = nlohmann::json::array();
            for (auto [i, j] : rel.pairs())
                pairs.push_back({i, j});
            out[name] = std::move(pairs);
        }
    return out;
}

nlohmann::json countermodel_json(const ComparisonVerdict::Refutation& refutation, const Alphabet& alphabet) {
    const Alphabet extended = alphabet.with_top_action();
    nlohmann::json carrier = nlohmann::json::array();
    for (const auto& s : refutation.model.carrier)
        carrier.push_back(render(s, extended));
    return {
        {"carrier", std::move(carrier)},
        {"relations", relations_json(refutation.model.interp)},
        {"violating_point", render(refutation.model.carrier.at(refutation.model.violating_point), extended)},
        {"witness", render(refutation.witness, extended)},
        {"side", refutation.side == Side::left ? "left" : "right"},
    };
}

nlohmann::json countermodel_json(const RelCountermodel& model) {
    nlohmann::json carrier = nlohmann::json::array();
    for (std::size_t i = 0; i < model.interp.carrier_size; ++i)
        carrier.push_back(i);
    return {
        {"carrier", std::move(carrier)},
        {"relations", relations_json(model.interp)},
        {"violation", model.report},
    };
}

} // namespace topkat
