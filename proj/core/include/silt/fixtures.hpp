#pragma once

#include <string>
#include <vector>

namespace silt::fixtures {

/// Built-in verification inputs, also shipped as files under fixtures/.
/// All of them are representation-finite, so the default module corpora are
/// exhaustive.
std::vector<std::string> names();
const std::string& algebra_json(const std::string& name);
/// The distinguished two-term silting input of the fixture (for example57
/// the worked complex; elsewhere the free module).
const std::string& silting_json(const std::string& name);

} // namespace silt::fixtures
