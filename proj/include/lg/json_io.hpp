#pragma once

#include "lg/display.hpp"

#include "json.hpp"

namespace lg {

inline nlohmann::json proof_to_json(const SequentProof& p) {
    nlohmann::json premises = nlohmann::json::array();
    for (auto& q : p.premises()) premises.push_back(proof_to_json(q));
    return {{"rule", rule_name(p.rule())}, {"conclusion", to_string(p.conclusion())}, {"premises", premises}};
}

inline SequentProof proof_from_json(const nlohmann::json& j) {
    auto rule = parse_rule_name(j.at("rule").get<std::string>());
    if (!rule) throw ProofError("unknown rule " + j.at("rule").dump());
    std::vector<SequentProof> premises;
    for (auto& q : j.at("premises")) premises.push_back(proof_from_json(q));
    return SequentProof(parse_sequent(j.at("conclusion").get<std::string>()), *rule, std::move(premises));
}

} // namespace lg
