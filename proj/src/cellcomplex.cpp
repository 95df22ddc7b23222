#include "torusrank/cellcomplex.hpp"

#include <algorithm>

namespace torusrank {

namespace {

struct IntVecHash {
    size_t operator()(const std::vector<int>& v) const {
        uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= uint64_t(uint32_t(x));
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

} // namespace

std::string classification_name(Classification c) {
    switch (c) {
    case Classification::SimplicialComplex:
        return "SimplicialComplex";
    case Classification::SimplicialCellComplexOnly:
        return "SimplicialCellComplexOnly";
    case Classification::Invalid:
        return "Invalid";
    }
    return "?";
}

SimplicialCellComplex SimplicialCellComplex::build(std::vector<CellSpec> specs) {
    SimplicialCellComplex X;
    std::stable_sort(specs.begin(), specs.end(), [](const CellSpec& a, const CellSpec& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.id < b.id;
    });
    X.cells_.reserve(specs.size());
    int top = -1;
    for (const auto& s : specs)
        top = std::max(top, s.dim);
    X.by_dim_.assign(top + 1, {});

    for (const auto& s : specs) {
        if (s.dim < 0)
            throw Error(ErrorKind::Shape, "negative cell dimension");
        if (X.id_to_index_.count(s.id))
            throw Error(ErrorKind::Shape, "duplicate cell id " + std::to_string(s.id));
        Cell c;
        c.id = s.id;
        c.dim = s.dim;
        c.facets = s.facets;
        if (s.dim == 0) {
            if (!c.facets.empty())
                throw Error(ErrorKind::Shape, "vertex with facets: id " + std::to_string(s.id));
            if (!s.order_label)
                throw Error(ErrorKind::Shape,
                            "vertex without order_label: id " + std::to_string(s.id));
            c.vertices = {s.id};
            X.labels_[s.id] = *s.order_label;
        } else {
            if (int(c.facets.size()) != s.dim + 1)
                throw Error(ErrorKind::Shape, "cell " + std::to_string(s.id) + " of dim " +
                                                  std::to_string(s.dim) + " needs " +
                                                  std::to_string(s.dim + 1) + " facets");
            for (int f : c.facets) {
                auto it = X.id_to_index_.find(f);
                if (it == X.id_to_index_.end())
                    throw Error(ErrorKind::Shape, "cell " + std::to_string(s.id) +
                                                      " references missing facet " +
                                                      std::to_string(f));
                if (X.cells_[it->second].dim != s.dim - 1)
                    throw Error(ErrorKind::Shape, "cell " + std::to_string(s.id) +
                                                      " facet of wrong dimension");
            }
            // Vertex tuple from the facet structure: facet 0 omits vertex 0,
            // facet 1 omits vertex 1, so the tuple is recoverable from two.
            const Cell& f0 = X.cells_[X.id_to_index_[c.facets[0]]];
            const Cell& f1 = X.cells_[X.id_to_index_[c.facets[1]]];
            c.vertices.resize(s.dim + 1);
            c.vertices[0] = f1.vertices[0];
            for (int i = 1; i <= s.dim; ++i)
                c.vertices[i] = f0.vertices[i - 1];
        }
        X.dim_index_.push_back(int(X.by_dim_[s.dim].size()));
        X.by_dim_[s.dim].push_back(s.id);
        X.id_to_index_[s.id] = int(X.cells_.size());
        X.cells_.push_back(std::move(c));
    }
    return X;
}

int SimplicialCellComplex::index_of(int id) const {
    auto it = id_to_index_.find(id);
    if (it == id_to_index_.end())
        throw Error(ErrorKind::Shape, "unknown cell id " + std::to_string(id));
    return it->second;
}

long long SimplicialCellComplex::order_label(int vertex_id) const {
    auto it = labels_.find(vertex_id);
    if (it == labels_.end())
        throw Error(ErrorKind::NoValidOrder,
                    "vertex " + std::to_string(vertex_id) + " has no order label");
    return it->second;
}

int SimplicialCellComplex::face_by_positions(int id, int lo, int hi) const {
    const Cell* c = &cell(id);
    if (lo < 0 || hi > c->dim || lo > hi)
        throw Error(ErrorKind::Shape, "face position range out of bounds");
    int a = 0, b = c->dim;
    while (b > hi) {
        c = &cell(c->facets[b - a]);
        --b;
    }
    while (a < lo) {
        c = &cell(c->facets[0]);
        ++a;
    }
    return c->id;
}

ValidationResult SimplicialCellComplex::validate() const {
    for (const Cell& c : cells_) {
        if (c.dim == 0)
            continue;
        // face-map consistency: facet i's tuple is the cell's tuple minus
        // position i
        for (int i = 0; i <= c.dim; ++i) {
            const Cell& f = cell(c.facets[i]);
            for (int p = 0, q = 0; p <= c.dim; ++p) {
                if (p == i)
                    continue;
                if (f.vertices[q++] != c.vertices[p])
                    return {Classification::Invalid,
                            "facet vertex tuple mismatch at cell " + std::to_string(c.id)};
            }
        }
        // simplicial identity d_i d_j = d_{j-1} d_i for i < j
        for (int j = 1; j <= c.dim && c.dim >= 2; ++j)
            for (int i = 0; i < j; ++i) {
                const Cell& fj = cell(c.facets[j]);
                const Cell& fi = cell(c.facets[i]);
                if (fj.facets[i] != fi.facets[j - 1])
                    return {Classification::Invalid,
                            "simplicial identity fails at cell " + std::to_string(c.id)};
            }
    }
    for (const Cell& c : cells_) {
        std::vector<int> vs = c.vertices;
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            return {Classification::Invalid,
                    "regularity fails: repeated vertex in cell " + std::to_string(c.id)};
    }
    for (const Cell& c : cells_) {
        for (int v : c.vertices)
            if (!labels_.count(v))
                return {Classification::Invalid,
                        "vertex " + std::to_string(v) + " lacks an order label"};
        for (int p = 0; p + 1 <= c.dim; ++p)
            if (labels_.at(c.vertices[p]) >= labels_.at(c.vertices[p + 1]))
                return {Classification::Invalid,
                        "order labels not strictly increasing on cell " + std::to_string(c.id)};
    }

    // Simplicial iff every cell is determined by its vertex set. Tuples are
    // label-sorted at this point, so the tuple is a canonical set key; with
    // regularity this also forces any two cells to meet in the single face
    // spanned by their common vertices.
    std::unordered_map<std::vector<int>, int, IntVecHash> seen;
    for (const Cell& c : cells_) {
        if (c.dim == 0)
            continue;
        auto [it, fresh] = seen.try_emplace(c.vertices, c.id);
        if (!fresh)
            return {Classification::SimplicialCellComplexOnly, ""};
    }
    return {Classification::SimplicialComplex, ""};
}

std::vector<long long> SimplicialCellComplex::f_vector() const {
    std::vector<long long> f(by_dim_.size());
    for (size_t d = 0; d < by_dim_.size(); ++d)
        f[d] = (long long)by_dim_[d].size();
    return f;
}

long long SimplicialCellComplex::euler_characteristic() const {
    long long chi = 0;
    int sign = 1;
    for (long long fk : f_vector()) {
        chi += sign * fk;
        sign = -sign;
    }
    return chi;
}

MatrixF2 SimplicialCellComplex::boundary_matrix_f2(int k) const {
    if (k < 1 || k > top_dim())
        throw Error(ErrorKind::Domain, "boundary_matrix: k out of range");
    MatrixF2 m(int(by_dim_[k - 1].size()), int(by_dim_[k].size()));
    for (int col = 0; col < int(by_dim_[k].size()); ++col) {
        const Cell& c = cell(by_dim_[k][col]);
        for (int f : c.facets)
            m.flip(dim_index(f), col);
    }
    return m;
}

MatrixQ SimplicialCellComplex::boundary_matrix_q(int k) const {
    if (k < 1 || k > top_dim())
        throw Error(ErrorKind::Domain, "boundary_matrix: k out of range");
    MatrixQ m(int(by_dim_[k - 1].size()), int(by_dim_[k].size()));
    for (int col = 0; col < int(by_dim_[k].size()); ++col) {
        const Cell& c = cell(by_dim_[k][col]);
        for (int i = 0; i <= c.dim; ++i) {
            Rat& e = m.at(dim_index(c.facets[i]), col);
            e += (i % 2 == 0) ? Rat(1) : Rat(-1);
        }
    }
    return m;
}

namespace {

template <class V>
SparseVec<V> boundary_impl(const SimplicialCellComplex& X, const SparseVec<V>& c) {
    if (c.dim < 1)
        throw Error(ErrorKind::Domain, "boundary of a 0-chain");
    SparseVec<V> out;
    out.dim = c.dim - 1;
    for (const auto& [id, coeff] : c.vals) {
        const Cell& cc = X.cell(id);
        if (cc.dim != c.dim)
            throw Error(ErrorKind::Shape, "chain references cell of wrong dimension");
        for (int i = 0; i <= cc.dim; ++i) {
            V term = (i % 2 == 0) ? coeff : V(-coeff);
            out.set(cc.facets[i], out.get(cc.facets[i]) + term);
        }
    }
    return out;
}

} // namespace

ChainF2 SimplicialCellComplex::boundary(const ChainF2& c) const { return boundary_impl(*this, c); }
ChainQ SimplicialCellComplex::boundary(const ChainQ& c) const { return boundary_impl(*this, c); }

} // namespace torusrank
