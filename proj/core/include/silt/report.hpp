#pragma once

#include "silt/json_io.hpp"

namespace silt {

inline constexpr const char* kToolVersion = "0.1.0";

/// One verifiable statement: an id, a stable locator naming the published
/// result it instantiates, the outcome, and witness data.
struct ClaimResult {
    std::string id;
    std::string locator;
    std::string status; // "pass" | "fail" | "skipped"
    Json witness;

    static ClaimResult make(const std::string& id, const std::string& locator, bool pass,
                            Json witness = Json::object()) {
        return {id, locator, pass ? "pass" : "fail", std::move(witness)};
    }
};

/// Deterministic report: same inputs and seed give byte-identical JSON.
struct ReportDocument {
    std::string command;
    Json inputs = Json::object(); // name -> digest
    std::string field = "Q";
    unsigned long seed = 2024;
    std::string iso_policy = "exhaustive"; // or "probabilistic allowed"
    std::vector<ClaimResult> claims;
    Json data = Json::object(); // command-specific payload

    bool all_pass() const;
    Json to_json() const;
    std::string to_table() const; // human-readable rendering
};

} // namespace silt
