#include "silt/fixtures.hpp"

#include <map>

#include "silt/errors.hpp"

namespace silt::fixtures {

namespace {

const std::string kExample57Alg = R"json({
  "field": "Q",
  "composition": "right_to_left",
  "quiver": {
    "vertices": ["1", "2", "3"],
    "arrows": [
      {"name": "a", "from": "2", "to": "1"},
      {"name": "b", "from": "3", "to": "2"}
    ]
  },
  "relations": [[{"coef": 1, "path": ["a", "b"]}]],
  "max_path_length": 8
})json";

// T = P1 + (P2 -> P1) + Sigma P3
const std::string kExample57T = R"json({
  "summands": [
    {"terms": {"0": [{"vertex": "1", "mult": 1}]}},
    {"terms": {"-1": [{"vertex": "2", "mult": 1}], "0": [{"vertex": "1", "mult": 1}]},
     "differentials": {"-1": [[[{"coef": 1, "path": ["a"]}]]]}},
    {"terms": {"-1": [{"vertex": "3", "mult": 1}]}}
  ]
})json";

const std::string kA2Alg = R"json({
  "field": "Q",
  "composition": "right_to_left",
  "quiver": {
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "2", "to": "1"}]
  },
  "relations": [],
  "max_path_length": 8
})json";

const std::string kA2T = R"json({
  "summands": [
    {"terms": {"0": [{"vertex": "1", "mult": 1}]}},
    {"terms": {"0": [{"vertex": "2", "mult": 1}]}}
  ]
})json";

const std::string kA3Alg = R"json({
  "field": "Q",
  "composition": "right_to_left",
  "quiver": {
    "vertices": ["1", "2", "3"],
    "arrows": [
      {"name": "a", "from": "2", "to": "1"},
      {"name": "b", "from": "3", "to": "2"}
    ]
  },
  "relations": [],
  "max_path_length": 8
})json";

const std::string kA3T = R"json({
  "summands": [
    {"terms": {"0": [{"vertex": "1", "mult": 1}]}},
    {"terms": {"0": [{"vertex": "2", "mult": 1}]}},
    {"terms": {"0": [{"vertex": "3", "mult": 1}]}}
  ]
})json";

const std::string kKx3Alg = R"json({
  "field": "Q",
  "composition": "right_to_left",
  "quiver": {
    "vertices": ["1"],
    "arrows": [{"name": "x", "from": "1", "to": "1"}]
  },
  "relations": [[{"coef": 1, "path": ["x", "x", "x"]}]],
  "max_path_length": 8
})json";

const std::string kKx3T = R"json({
  "summands": [
    {"terms": {"0": [{"vertex": "1", "mult": 1}]}}
  ]
})json";

const std::map<std::string, std::pair<const std::string*, const std::string*>> kTable = {
    {"example57", {&kExample57Alg, &kExample57T}},
    {"a2", {&kA2Alg, &kA2T}},
    {"a3", {&kA3Alg, &kA3T}},
    {"kx3", {&kKx3Alg, &kKx3T}},
};

} // namespace

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : kTable) out.push_back(k);
    return out;
}

const std::string& algebra_json(const std::string& name) {
    auto it = kTable.find(name);
    if (it == kTable.end()) throw InputError("unknown fixture '" + name + "'");
    return *it->second.first;
}

const std::string& silting_json(const std::string& name) {
    auto it = kTable.find(name);
    if (it == kTable.end()) throw InputError("unknown fixture '" + name + "'");
    return *it->second.second;
}

} // namespace silt::fixtures
