#pragma once

#include <json.hpp>

#include "classify.hpp"

namespace etakit {

/// JSON form of a CaseReport; keys are emitted in a fixed order so output is
/// byte-stable across runs.
inline nlohmann::ordered_json to_json(const CaseReport& rep) {
    nlohmann::ordered_json j;
    j["case"] = to_string(rep.case_tag);
    j["a1"] = rep.a1;
    j["al"] = rep.al;
    j["r_mod_24"] = rep.r_class;
    j["lambda_mod"] = rep.lambda_class;
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["depth"] = rep.depth;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["witness"] = c.witness ? nlohmann::ordered_json(*c.witness) : nlohmann::ordered_json(nullptr);
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

/// Process exit code for a classification: 0 for a classified (or zero) form,
/// 3 when the form is unclassified.
inline int exit_code(const CaseReport& rep) { return rep.case_tag == CaseTag::unclassified ? 3 : 0; }

}  // namespace etakit
