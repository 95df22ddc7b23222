#include "torusrank/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace torusrank {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse,
                    "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

long long get_int(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw Error(ErrorKind::Parse, std::string("missing integer field \"") + key + "\"");
    return j[key].get<long long>();
}

} // namespace

std::string lattice_to_json(const Lattice& L) {
    ordered_json j;
    j["n"] = L.n();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < L.n(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < L.n(); ++k)
            row.push_back((long long)L.basis().at(i, k));
        rows.push_back(std::move(row));
    }
    j["basis"] = std::move(rows);
    return dump(j);
}

Lattice lattice_from_json(const std::string& text) {
    ordered_json j = parse_json(text);
    int n = int(get_int(j, "n"));
    if (n < 1 || !j.contains("basis") || !j["basis"].is_array() || int(j["basis"].size()) != n)
        throw Error(ErrorKind::Parse, "lattice file needs an n x n basis");
    MatrixZ m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j["basis"][i];
        if (!row.is_array() || int(row.size()) != n)
            throw Error(ErrorKind::Parse, "lattice basis row of wrong length");
        for (int k = 0; k < n; ++k) {
            if (!row[k].is_number_integer())
                throw Error(ErrorKind::Parse, "lattice basis entry is not an integer");
            m.at(i, k) = Int(row[k].get<long long>());
        }
    }
    return Lattice(std::move(m));
}

std::string complex_to_json(const SimplicialCellComplex& X) {
    ordered_json j;
    j["dims"] = X.top_dim();
    ordered_json cells = ordered_json::array();
    for (int d = 0; d <= X.top_dim(); ++d)
        for (int id : X.cells_of_dim(d)) {
            const Cell& c = X.cell(id);
            ordered_json jc;
            jc["id"] = c.id;
            jc["dim"] = c.dim;
            jc["facets"] = c.facets;
            if (c.dim == 0)
                jc["order_label"] = X.order_label(c.id);
            cells.push_back(std::move(jc));
        }
    j["cells"] = std::move(cells);
    return dump(j);
}

SimplicialCellComplex complex_from_json(const std::string& text) {
    ordered_json j = parse_json(text);
    if (!j.contains("cells") || !j["cells"].is_array())
        throw Error(ErrorKind::Parse, "complex file needs a cells array");
    std::vector<CellSpec> specs;
    for (const auto& jc : j["cells"]) {
        CellSpec s;
        s.id = int(get_int(jc, "id"));
        s.dim = int(get_int(jc, "dim"));
        if (jc.contains("facets")) {
            if (!jc["facets"].is_array())
                throw Error(ErrorKind::Parse, "facets must be an array");
            for (const auto& f : jc["facets"])
                s.facets.push_back(f.get<int>());
        }
        if (jc.contains("order_label"))
            s.order_label = jc["order_label"].get<long long>();
        specs.push_back(std::move(s));
    }
    try {
        return SimplicialCellComplex::build(std::move(specs));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Shape)
            throw Error(ErrorKind::Parse, std::string("bad complex file: ") + e.what());
        throw;
    }
}

std::string periodic_to_json(const PeriodicTriangulation& T) {
    ordered_json j;
    j["n"] = T.n;
    ordered_json verts = ordered_json::array();
    for (const auto& p : T.vertex_reps) {
        ordered_json v = ordered_json::array();
        for (const auto& c : p)
            v.push_back(rat_to_string(c));
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    ordered_json simplices = ordered_json::array();
    for (const auto& s : T.simplex_reps) {
        ordered_json js = ordered_json::array();
        for (const auto& ref : s) {
            ordered_json off = ordered_json::array();
            for (const auto& o : ref.offset)
                off.push_back((long long)o);
            js.push_back(ordered_json::array({ref.rep, std::move(off)}));
        }
        simplices.push_back(std::move(js));
    }
    j["simplices"] = std::move(simplices);
    return dump(j);
}

PeriodicTriangulation periodic_from_json(const std::string& text) {
    ordered_json j = parse_json(text);
    PeriodicTriangulation T;
    T.n = int(get_int(j, "n"));
    if (!j.contains("vertices") || !j["vertices"].is_array() || !j.contains("simplices") ||
        !j["simplices"].is_array())
        throw Error(ErrorKind::Parse, "periodic file needs vertices and simplices arrays");
    for (const auto& jv : j["vertices"]) {
        QPoint p;
        for (const auto& c : jv)
            p.push_back(rat_from_string(c.get<std::string>()));
        T.vertex_reps.push_back(std::move(p));
    }
    for (const auto& js : j["simplices"]) {
        std::vector<PeriodicVertexRef> s;
        for (const auto& jr : js) {
            if (!jr.is_array() || jr.size() != 2 || !jr[1].is_array())
                throw Error(ErrorKind::Parse, "simplex vertex must be [index, [offsets]]");
            PeriodicVertexRef ref;
            ref.rep = jr[0].get<int>();
            for (const auto& o : jr[1])
                ref.offset.push_back(Int(o.get<long long>()));
            s.push_back(std::move(ref));
        }
        T.simplex_reps.push_back(std::move(s));
    }
    try {
        validate_periodic(T);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, std::string("bad periodic file: ") + e.what());
    }
    return T;
}

std::string cochain_to_json(const CochainF2& a) {
    ordered_json j;
    j["dim"] = a.dim;
    j["field"] = "F2";
    ordered_json vals = ordered_json::object();
    for (const auto& [id, v] : a.vals)
        vals[std::to_string(id)] = int(v.v);
    j["values"] = std::move(vals);
    return dump(j);
}

std::string cochain_to_json(const CochainQ& a) {
    ordered_json j;
    j["dim"] = a.dim;
    j["field"] = "Q";
    ordered_json vals = ordered_json::object();
    for (const auto& [id, v] : a.vals)
        vals[std::to_string(id)] = rat_to_string(v);
    j["values"] = std::move(vals);
    return dump(j);
}

TaggedCochain cochain_from_json(const std::string& text) {
    ordered_json j = parse_json(text);
    TaggedCochain out;
    int dim = int(get_int(j, "dim"));
    std::string field = j.value("field", std::string());
    if (!j.contains("values") || !j["values"].is_object())
        throw Error(ErrorKind::Parse, "cochain file needs a values object");
    if (field == "F2") {
        out.field = Field::F2;
        out.f2.dim = dim;
        for (const auto& [key, val] : j["values"].items())
            out.f2.set(std::stoi(key), F2(val.get<int>()));
    } else if (field == "Q") {
        out.field = Field::Q;
        out.q.dim = dim;
        for (const auto& [key, val] : j["values"].items())
            out.q.set(std::stoi(key), rat_from_string(val.get<std::string>()));
    } else {
        throw Error(ErrorKind::Parse, "cochain field must be \"F2\" or \"Q\"");
    }
    return out;
}

std::string decomposition_to_json(const DetDecomposition& D) {
    ordered_json j;
    j["n"] = D.n;
    ordered_json terms = ordered_json::array();
    for (const auto& t : D.terms) {
        ordered_json jt;
        jt["coeff"] = rat_to_string(t.coeff);
        ordered_json factors = ordered_json::array();
        for (const auto& f : t.factors) {
            ordered_json jf = ordered_json::array();
            for (const auto& x : f)
                jf.push_back(rat_to_string(x));
            factors.push_back(std::move(jf));
        }
        jt["factors"] = std::move(factors);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    j["provenance"] = D.provenance;
    j["verified"] = D.verified;
    return dump(j);
}

DetDecomposition decomposition_from_json(const std::string& text) {
    ordered_json j = parse_json(text);
    DetDecomposition D;
    D.n = int(get_int(j, "n"));
    D.provenance = j.value("provenance", std::string());
    D.verified = j.value("verified", false);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw Error(ErrorKind::Parse, "decomposition file needs a terms array");
    for (const auto& jt : j["terms"]) {
        Rank1Term t;
        t.coeff = rat_from_string(jt.at("coeff").get<std::string>());
        for (const auto& jf : jt.at("factors")) {
            std::vector<Rat> f;
            for (const auto& x : jf)
                f.push_back(rat_from_string(x.get<std::string>()));
            t.factors.push_back(std::move(f));
        }
        D.terms.push_back(std::move(t));
    }
    return D;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Parse, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Domain, "cannot write file: " + path);
    out << content;
    if (!out)
        throw Error(ErrorKind::Domain, "write failed: " + path);
}

} // namespace torusrank
