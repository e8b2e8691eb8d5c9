#pragma once

#include "silt/fixtures.hpp"
#include "silt/report.hpp"
#include "silt/torsion.hpp"

namespace silt::claims {

struct Options {
    Field field = Field::rationals();
    unsigned long seed = 2024;
    int max_nodes = 256;
    bool assume_symmetric = false;
    IsoPolicy policy() const {
        IsoPolicy p;
        p.exhaustive_only = true; // verification runs never accept probabilistic negatives
        p.seed = seed;
        return p;
    }
};

struct CriterionOutcome {
    int number = 0;
    std::string title;
    std::vector<ClaimResult> claims;
    bool pass() const {
        for (const auto& c : claims)
            if (c.status == "fail") return false;
        return true;
    }
};

/// The complete verification battery over the built-in corpus.
std::vector<CriterionOutcome> run_acceptance(const Options& opts);

/// The battery scoped to one fixture, packaged for the CLI.
ReportDocument verify_fixture(const std::string& name, const Options& opts);

/// Report payload of the two-step construction for one (A, T).
Json pipeline_payload(const Pipeline& p, const TiltingConditions& cond);

/// Claims tying one pipeline to the published statements (c), (d), (e),
/// the annihilator identity and the sufficient tilting conditions.
std::vector<ClaimResult> pipeline_claims(const Pipeline& p, const TiltingConditions& cond);

/// Claims of the torsion/equivalence verification (a), (f), (g), (h).
std::vector<ClaimResult> torsion_claims(const TorsionReport& rep);

} // namespace silt::claims
