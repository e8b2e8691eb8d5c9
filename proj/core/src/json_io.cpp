#include "silt/json_io.hpp"

#include <fstream>
#include <sstream>

namespace silt {

namespace {

Rat scalar_from_json(const Field& f, const Json& j) {
    if (j.is_number_integer()) return f.from_long(j.get<long>());
    if (j.is_string()) return f.parse(j.get<std::string>());
    throw InputError("scalar must be an integer or a string like \"2/3\"");
}

std::vector<int> path_from_json(const Quiver& q, const Json& j) {
    // arrow names, rightmost applied first -> application order
    std::vector<int> arrows;
    if (!j.is_array()) throw InputError("path must be an array of arrow names");
    for (auto it = j.rbegin(); it != j.rend(); ++it) {
        if (!it->is_string()) throw InputError("path entries must be arrow names");
        arrows.push_back(q.arrow_index(it->get<std::string>()));
    }
    return arrows;
}

Json path_to_json(const Quiver& q, const std::vector<int>& app_order) {
    Json out = Json::array();
    for (auto it = app_order.rbegin(); it != app_order.rend(); ++it) out.push_back(q.arrows[*it].name);
    return out;
}

AlgElt entry_from_json(const PathAlgebra& a, const Json& j, int tgt_vertex, int src_vertex) {
    AlgElt e = a.zero();
    if (j.is_null()) return e;
    if (!j.is_array()) throw InputError("differential entry must be a list of {coef, path} terms");
    for (const auto& term : j) {
        Rat coef = scalar_from_json(a.field(), term.at("coef"));
        std::vector<int> arrows = path_from_json(a.quiver(), term.at("path"));
        int src = arrows.empty() ? src_vertex : a.quiver().arrows[arrows.front()].src;
        AlgElt p = a.path_elt(src, arrows);
        e = a.add(e, a.scale(coef, p));
    }
    if (!a.in_block(e, tgt_vertex, src_vertex))
        throw InputError("differential entry lies outside its Peirce block");
    return e;
}

Json entry_to_json(const PathAlgebra& a, const AlgElt& e) {
    Json out = Json::array();
    for (int b = 0; b < a.dim(); ++b) {
        if (sgn(e[b]) == 0) continue;
        Json term;
        term["coef"] = Field::to_string(e[b]);
        term["path"] = path_to_json(a.quiver(), a.basis_path(b));
        out.push_back(std::move(term));
    }
    return out;
}

} // namespace

Field parse_field(const std::string& s) {
    if (s.empty() || s == "Q" || s == "q" || s == "rationals") return Field::rationals();
    if (s.rfind("fp:", 0) == 0) {
        try {
            return Field::prime(std::stol(s.substr(3)));
        } catch (const std::invalid_argument&) {
            throw InputError("bad field spec '" + s + "'");
        }
    }
    throw InputError("bad field spec '" + s + "' (use Q or fp:<prime>)");
}

std::string field_to_string(const Field& f) {
    return f.kind == FieldKind::Rationals ? "Q" : "fp:" + std::to_string(f.p);
}

PathAlgebraPtr algebra_from_json(const Json& j, std::optional<Field> field_override) {
    if (!j.is_object()) throw InputError("algebra file must be a JSON object");
    Field f = field_override ? *field_override : parse_field(j.value("field", std::string("Q")));
    if (j.contains("composition") && j["composition"] != "right_to_left")
        throw InputError("composition must be \"right_to_left\"");
    Quiver q;
    const Json& qj = j.at("quiver");
    for (const auto& v : qj.at("vertices")) {
        if (v.is_string()) q.vertices.push_back(v.get<std::string>());
        else q.vertices.push_back(v.dump());
    }
    if (qj.contains("arrows"))
        for (const auto& aj : qj["arrows"]) {
            Arrow a;
            a.name = aj.at("name").get<std::string>();
            a.src = q.vertex_index(aj.at("from").is_string() ? aj["from"].get<std::string>() : aj["from"].dump());
            a.tgt = q.vertex_index(aj.at("to").is_string() ? aj["to"].get<std::string>() : aj["to"].dump());
            q.arrows.push_back(std::move(a));
        }
    q.validate();
    std::vector<PathAlgebra::Relation> rels;
    if (j.contains("relations"))
        for (const auto& rj : j["relations"]) {
            PathAlgebra::Relation r;
            for (const auto& term : rj)
                r.push_back({scalar_from_json(f, term.at("coef")), path_from_json(q, term.at("path"))});
            rels.push_back(std::move(r));
        }
    int maxlen = j.value("max_path_length", 12);
    return PathAlgebra::build(f, q, rels, maxlen);
}

Json algebra_to_json(const PathAlgebra& a) {
    Json j;
    j["field"] = field_to_string(a.field());
    Json qj;
    qj["vertices"] = a.quiver().vertices;
    Json arrows = Json::array();
    for (const auto& ar : a.quiver().arrows) {
        Json aj;
        aj["name"] = ar.name;
        aj["from"] = a.quiver().vertices[ar.src];
        aj["to"] = a.quiver().vertices[ar.tgt];
        arrows.push_back(std::move(aj));
    }
    qj["arrows"] = std::move(arrows);
    j["quiver"] = std::move(qj);
    j["composition"] = "right_to_left";
    j["dim"] = a.dim();
    j["nilpotency_bound"] = a.nilpotency_bound();
    return j;
}

ProjComplex complex_from_json(const Json& j, const PathAlgebraPtr& a) {
    if (!j.is_object() || !j.contains("terms")) throw InputError("complex file needs a terms object");
    std::map<int, std::vector<int>> terms;
    for (const auto& [key, val] : j.at("terms").items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (const std::exception&) {
            throw InputError("complex degree keys must be integers, got '" + key + "'");
        }
        std::vector<int> list;
        for (const auto& s : val) {
            std::string vname = s.at("vertex").is_string() ? s["vertex"].get<std::string>() : s["vertex"].dump();
            int v = a->quiver().vertex_index(vname);
            int mult = s.value("mult", 1);
            if (mult < 0) throw InputError("negative multiplicity");
            for (int c = 0; c < mult; ++c) list.push_back(v);
        }
        terms[d] = std::move(list);
    }
    if (terms.empty()) return ProjComplex::zero_complex(a);
    int lo = terms.begin()->first, hi = terms.rbegin()->first;
    std::vector<std::vector<int>> summands;
    for (int d = lo; d <= hi; ++d) summands.push_back(terms.count(d) ? terms[d] : std::vector<int>{});
    std::vector<AlgMat> diffs;
    for (int d = lo; d < hi; ++d) {
        AlgMat m(a, static_cast<int>(summands[d - lo + 1].size()), static_cast<int>(summands[d - lo].size()));
        if (j.contains("differentials")) {
            const Json& dj = j["differentials"];
            std::string key = std::to_string(d);
            if (dj.contains(key)) {
                const Json& mat = dj[key];
                if (!mat.is_array() || static_cast<int>(mat.size()) != m.rows)
                    throw InputError("differential at degree " + key + " has wrong row count");
                for (int r = 0; r < m.rows; ++r) {
                    if (static_cast<int>(mat[r].size()) != m.cols)
                        throw InputError("differential at degree " + key + " has wrong column count");
                    for (int c = 0; c < m.cols; ++c)
                        m.at(r, c) = entry_from_json(*a, mat[r][c], summands[d - lo + 1][r], summands[d - lo][c]);
                }
            }
        }
        diffs.push_back(std::move(m));
    }
    return ProjComplex::build(a, lo, std::move(summands), std::move(diffs), true);
}

Json complex_to_json(const ProjComplex& x) {
    auto a = std::dynamic_pointer_cast<const PathAlgebra>(x.owner());
    if (!a) throw ComputeError("only complexes over path algebras serialize to files");
    Json terms;
    for (int d = x.lo(); d <= x.hi(); ++d) {
        Json list = Json::array();
        const auto& s = x.summands_at(d);
        for (size_t i = 0; i < s.size();) {
            size_t jx = i;
            while (jx < s.size() && s[jx] == s[i]) ++jx;
            Json e;
            e["vertex"] = a->quiver().vertices[s[i]];
            e["mult"] = static_cast<int>(jx - i);
            list.push_back(std::move(e));
            i = jx;
        }
        terms[std::to_string(d)] = std::move(list);
    }
    Json diffs;
    for (int d = x.lo(); d < x.hi(); ++d) {
        AlgMat m = x.diff_from(d);
        Json mat = Json::array();
        for (int r = 0; r < m.rows; ++r) {
            Json row = Json::array();
            for (int c = 0; c < m.cols; ++c) row.push_back(entry_to_json(*a, m.at(r, c)));
            mat.push_back(std::move(row));
        }
        diffs[std::to_string(d)] = std::move(mat);
    }
    Json out;
    out["terms"] = std::move(terms);
    out["differentials"] = std::move(diffs);
    return out;
}

std::vector<ProjComplex> silting_summands_from_json(const Json& j, const PathAlgebraPtr& a) {
    std::vector<ProjComplex> parts;
    if (j.contains("summands")) {
        for (const auto& sj : j["summands"]) parts.push_back(complex_from_json(sj, a));
    } else {
        ProjComplex x = complex_from_json(j, a);
        for (auto& p : decompose_complex(x)) parts.push_back(std::move(p));
    }
    return parts;
}

Json silting_to_json(const SiltingObject& t) {
    Json out;
    Json summands = Json::array();
    for (const auto& s : t.summands) summands.push_back(complex_to_json(s));
    out["summands"] = std::move(summands);
    return out;
}

FdModule module_from_json(const Json& j, const PathAlgebraPtr& a) {
    const Field& f = a->field();
    const Quiver& q = a->quiver();
    std::vector<int> dims(q.n_vertices(), 0);
    for (const auto& [key, val] : j.at("dims").items()) dims[q.vertex_index(key)] = val.get<int>();
    std::vector<Matrix> arrow_act;
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const Arrow& ar = q.arrows[ai];
        Matrix m(f, dims[ar.src], dims[ar.tgt]);
        if (j.contains("actions") && j["actions"].contains(ar.name)) {
            const Json& mat = j["actions"][ar.name];
            if (static_cast<int>(mat.size()) != m.rows())
                throw InputError("action of '" + ar.name + "' has wrong row count");
            for (int r = 0; r < m.rows(); ++r) {
                if (static_cast<int>(mat[r].size()) != m.cols())
                    throw InputError("action of '" + ar.name + "' has wrong column count");
                for (int c = 0; c < m.cols(); ++c) m.at(r, c) = scalar_from_json(f, mat[r][c]);
            }
        }
        arrow_act.push_back(std::move(m));
    }
    std::vector<Matrix> act;
    for (int b = 0; b < a->dim(); ++b) {
        const auto& path = a->basis_path(b);
        const auto& info = a->basis(b);
        Matrix m = Matrix::identity(f, dims[info.src]);
        if (!path.empty()) {
            m = arrow_act[path[0]];
            for (size_t k = 1; k < path.size(); ++k) m = m * arrow_act[path[k]];
        }
        act.push_back(std::move(m));
    }
    try {
        return FdModule::from_actions(a, dims, std::move(act), true);
    } catch (const ComputeError& e) {
        throw InputError(std::string("module does not satisfy the relations: ") + e.what());
    }
}

Json module_to_json(const FdModule& m) {
    auto a = std::dynamic_pointer_cast<const PathAlgebra>(m.owner());
    if (!a) throw ComputeError("only modules over path algebras serialize to files");
    Json out;
    Json dims;
    for (int i = 0; i < a->n_vertices(); ++i) dims[a->quiver().vertices[i]] = m.dim(i);
    out["dims"] = std::move(dims);
    Json actions;
    for (size_t ai = 0; ai < a->quiver().arrows.size(); ++ai) {
        int b = a->arrow_basis_index(static_cast<int>(ai));
        const Matrix& mm = m.action(b);
        Json mat = Json::array();
        for (int r = 0; r < mm.rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < mm.cols(); ++c) row.push_back(Field::to_string(mm.at(r, c)));
            mat.push_back(std::move(row));
        }
        actions[a->quiver().arrows[ai].name] = std::move(mat);
    }
    out["actions"] = std::move(actions);
    return out;
}

std::vector<FdModule> modules_from_json(const Json& j, const PathAlgebraPtr& a) {
    std::vector<FdModule> out;
    if (j.contains("modules"))
        for (const auto& mj : j["modules"]) out.push_back(module_from_json(mj, a));
    else out.push_back(module_from_json(j, a));
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("JSON parse error in '" + path + "': " + e.what());
    }
}

std::string content_digest(const std::string& bytes) {
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

} // namespace silt
