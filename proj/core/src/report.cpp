#include "silt/report.hpp"

#include <sstream>

namespace silt {

bool ReportDocument::all_pass() const {
    for (const auto& c : claims)
        if (c.status == "fail") return false;
    return true;
}

Json ReportDocument::to_json() const {
    Json j;
    j["tool"] = "silt";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    j["field"] = field;
    j["seed"] = seed;
    j["iso_policy"] = iso_policy;
    Json cl = Json::array();
    for (const auto& c : claims) {
        Json cj;
        cj["id"] = c.id;
        cj["locator"] = c.locator;
        cj["status"] = c.status;
        if (!c.witness.is_null() && !(c.witness.is_object() && c.witness.empty()))
            cj["witness"] = c.witness;
        cl.push_back(std::move(cj));
    }
    j["claims"] = std::move(cl);
    j["data"] = data;
    j["all_pass"] = all_pass();
    return j;
}

std::string ReportDocument::to_table() const {
    std::ostringstream os;
    os << "silt " << kToolVersion << "  command: " << command << "  field: " << field
       << "  seed: " << seed << "\n";
    for (const auto& [k, v] : inputs.items()) os << "  input " << k << "  digest " << v.dump() << "\n";
    os << "\n";
    size_t idw = 10, locw = 10;
    for (const auto& c : claims) {
        idw = std::max(idw, c.id.size());
        locw = std::max(locw, c.locator.size());
    }
    for (const auto& c : claims) {
        os << (c.status == "pass" ? "  PASS  " : c.status == "skipped" ? "  SKIP  " : "  FAIL  ");
        os << c.id;
        for (size_t i = c.id.size(); i < idw + 2; ++i) os << ' ';
        os << c.locator << "\n";
    }
    if (!data.empty()) os << "\n" << data.dump(2) << "\n";
    os << "\nresult: " << (all_pass() ? "all claims pass" : "SOME CLAIMS FAIL") << "\n";
    return os.str();
}

} // namespace silt
