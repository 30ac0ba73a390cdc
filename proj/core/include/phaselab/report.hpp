#pragma once

#include <string>

#include <json.hpp>

namespace phaselab {

// Outcome of one check. Serialized as a single JSON line on stdout; the
// stderr summary (and wall time) is kept out of the JSON so seeded reruns
// are byte-identical.
struct Report {
    std::string check;
    std::string verdict;
    std::string tag;  // "PROOF" | "EVIDENCE"
    std::string backend;
    nlohmann::ordered_json witness;   // certificate payload, null if none
    nlohmann::ordered_json params;    // seed, restarts, tolerances, ...

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check"] = check;
        j["verdict"] = verdict;
        j["tag"] = tag;
        j["backend"] = backend;
        j["witness"] = witness.is_null() ? nlohmann::ordered_json() : witness;
        if (!params.is_null()) j["params"] = params;
        return j;
    }

    std::string line() const { return to_json().dump(); }
};

}  // namespace phaselab
