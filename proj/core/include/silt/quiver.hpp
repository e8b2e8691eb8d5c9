#pragma once

#include <string>
#include <vector>

#include "silt/errors.hpp"

namespace silt {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

/// Finite directed graph. Vertex/arrow order is the declaration order and is
/// part of every downstream canonical basis choice.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int vertex_index(const std::string& label) const;
    int arrow_index(const std::string& name) const;
    void validate() const;
};

} // namespace silt
