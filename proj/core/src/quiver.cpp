#include "silt/quiver.hpp"

#include <set>

namespace silt {

int Quiver::vertex_index(const std::string& label) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return static_cast<int>(i);
    throw InputError("unknown vertex '" + label + "'");
}

int Quiver::arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    throw InputError("unknown arrow '" + name + "'");
}

void Quiver::validate() const {
    if (vertices.empty()) throw InputError("quiver has no vertices");
    std::set<std::string> seen(vertices.begin(), vertices.end());
    if (seen.size() != vertices.size()) throw InputError("duplicate vertex labels");
    std::set<std::string> anames;
    for (const auto& a : arrows) {
        if (!anames.insert(a.name).second) throw InputError("duplicate arrow name '" + a.name + "'");
        if (seen.count(a.name)) throw InputError("arrow name '" + a.name + "' clashes with a vertex label");
        if (a.src < 0 || a.src >= n_vertices() || a.tgt < 0 || a.tgt >= n_vertices())
            throw InputError("arrow '" + a.name + "' has an undeclared endpoint");
    }
}

} // namespace silt
