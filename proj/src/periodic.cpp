#include "torusrank/periodic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace torusrank {

QPoint point_add(const QPoint& a, const std::vector<Int>& t) {
    QPoint out = a;
    for (size_t i = 0; i < out.size(); ++i)
        out[i] += Rat(t[i]);
    return out;
}

QPoint point_sub(const QPoint& a, const QPoint& b) {
    QPoint out = a;
    for (size_t i = 0; i < out.size(); ++i)
        out[i] -= b[i];
    return out;
}

bool point_lex_less(const QPoint& a, const QPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i])
            return true;
        if (a[i] > b[i])
            return false;
    }
    return false;
}

bool ref_less(const PeriodicVertexRef& a, const PeriodicVertexRef& b) {
    if (a.rep != b.rep)
        return a.rep < b.rep;
    for (size_t i = 0; i < a.offset.size(); ++i) {
        if (a.offset[i] != b.offset[i])
            return a.offset[i] < b.offset[i];
    }
    return false;
}

QPoint PeriodicTriangulation::point_of(const PeriodicVertexRef& r) const {
    return point_add(vertex_reps[r.rep], r.offset);
}

bool PeriodicTriangulation::integer_coordinates() const {
    for (const auto& p : vertex_reps)
        for (const auto& c : p)
            if (denominator(c) != 1)
                return false;
    return true;
}

namespace {

using Face = std::vector<PeriodicVertexRef>;

bool face_less(const Face& a, const Face& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i])
            return ref_less(a[i], b[i]);
    }
    return false;
}

struct FaceLess {
    bool operator()(const Face& a, const Face& b) const { return face_less(a, b); }
};

// Canonical representative of a face's translation orbit: refs sorted, then
// translated so the first offset is zero. Returns (key, translate) with
// instance = key + translate.
std::pair<Face, std::vector<Int>> canonical_face(Face f) {
    std::sort(f.begin(), f.end(), ref_less);
    std::vector<Int> t = f[0].offset;
    for (auto& r : f)
        for (size_t i = 0; i < t.size(); ++i)
            r.offset[i] -= t[i];
    return {std::move(f), std::move(t)};
}

struct FaceOrbits {
    std::vector<std::vector<Face>> by_dim;          // canonical keys per dimension
    std::map<Face, std::pair<int, int>, FaceLess> lookup; // key -> (dim, index)
};

FaceOrbits enumerate_face_orbits(const PeriodicTriangulation& T) {
    FaceOrbits fo;
    fo.by_dim.assign(T.n + 1, {});
    std::set<Face, FaceLess> seen;
    // vertex orbits first, in representative order
    for (int r = 0; r < int(T.vertex_reps.size()); ++r) {
        Face key{PeriodicVertexRef{r, std::vector<Int>(T.n, 0)}};
        seen.insert(key);
        fo.by_dim[0].push_back(key);
    }
    for (const auto& simplex : T.simplex_reps) {
        int m = int(simplex.size());
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            Face inst;
            for (int j = 0; j < m; ++j)
                if (mask & (1u << j))
                    inst.push_back(simplex[j]);
            auto [key, t] = canonical_face(std::move(inst));
            if (seen.insert(key).second)
                fo.by_dim[key.size() - 1].push_back(std::move(key));
        }
    }
    // canonical listing: within a dimension, keys in lexicographic order
    for (auto& list : fo.by_dim)
        std::sort(list.begin(), list.end(), face_less);
    for (int d = 0; d <= T.n; ++d)
        for (int i = 0; i < int(fo.by_dim[d].size()); ++i)
            fo.lookup.emplace(fo.by_dim[d][i], std::make_pair(d, i));
    return fo;
}

} // namespace

void validate_periodic(const PeriodicTriangulation& T) {
    if (T.n < 1)
        throw Error(ErrorKind::Domain, "periodic triangulation needs n >= 1");
    for (const auto& p : T.vertex_reps) {
        if (int(p.size()) != T.n)
            throw Error(ErrorKind::Shape, "vertex representative of wrong dimension");
        for (const auto& c : p)
            if (c < 0 || c >= 1)
                throw Error(ErrorKind::Domain,
                            "vertex representative not a canonical residue in [0,1)^n");
    }
    std::set<Face, FaceLess> canon;
    for (const auto& s : T.simplex_reps) {
        if (int(s.size()) != T.n + 1)
            throw Error(ErrorKind::Shape, "simplex must have n+1 vertices");
        for (const auto& r : s) {
            if (r.rep < 0 || r.rep >= int(T.vertex_reps.size()))
                throw Error(ErrorKind::Shape, "simplex references unknown vertex orbit");
            if (int(r.offset.size()) != T.n)
                throw Error(ErrorKind::Shape, "offset of wrong dimension");
        }
        auto [key, t] = canonical_face(s);
        for (size_t i = 0; i + 1 < key.size(); ++i)
            if (key[i] == key[i + 1])
                throw Error(ErrorKind::Degenerate, "simplex with a repeated vertex");
        if (!canon.insert(key).second)
            throw Error(ErrorKind::Degenerate,
                        "simplex representatives are not orbit-unique");
    }
}

PeriodicTriangulation staircase(int n) {
    if (n < 1)
        throw Error(ErrorKind::Domain, "staircase requires n >= 1");
    PeriodicTriangulation T;
    T.n = n;
    T.vertex_reps = {QPoint(n, Rat(0))};
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    do {
        std::vector<PeriodicVertexRef> simplex;
        std::vector<Int> pos(n, 0);
        simplex.push_back({0, pos});
        for (int i = 0; i < n; ++i) {
            pos[perm[i]] += 1;
            simplex.push_back({0, pos});
        }
        T.simplex_reps.push_back(std::move(simplex));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return T;
}

Lattice integer_lattice(int n) { return Lattice(MatrixZ::identity(n)); }

DistanceClass classify_distance(const PeriodicTriangulation& T, const Lattice& L) {
    if (L.n() != T.n)
        throw Error(ErrorKind::Shape, "lattice dimension mismatch");
    int V = int(T.vertex_reps.size());
    std::vector<std::set<std::pair<int, std::vector<Int>>>> neigh(V);
    for (const auto& s : T.simplex_reps)
        for (const auto& a : s)
            for (const auto& b : s) {
                if (a == b)
                    continue;
                std::vector<Int> d(T.n);
                for (int i = 0; i < T.n; ++i)
                    d[i] = b.offset[i] - a.offset[i];
                if (a.rep == b.rep) {
                    bool zero = std::all_of(d.begin(), d.end(), [](const Int& x) { return x == 0; });
                    if (zero)
                        continue;
                }
                neigh[a.rep].insert({b.rep, std::move(d)});
            }

    auto is_zero = [](const std::vector<Int>& v) {
        return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    };
    for (int r = 0; r < V; ++r)
        for (const auto& [r2, d] : neigh[r])
            if (r2 == r && !is_zero(d) && L.contains(d))
                return {1, std::make_pair(r, d)};
    for (int r = 0; r < V; ++r)
        for (const auto& [r2, d2] : neigh[r])
            for (const auto& [r3, d3] : neigh[r2]) {
                if (r3 != r)
                    continue;
                std::vector<Int> g(T.n);
                for (int i = 0; i < T.n; ++i)
                    g[i] = d2[i] + d3[i];
                if (!is_zero(g) && L.contains(g))
                    return {2, std::make_pair(r, g)};
            }
    return {3, std::nullopt};
}

int staircase_distance_via_families(const Lattice& L) {
    if (!forbidden_vector_check(L, VectorFamily::ZeroOne).clean())
        return 1;
    if (!forbidden_vector_check(L, VectorFamily::ZeroOneTwo).clean() ||
        !forbidden_vector_check(L, VectorFamily::PlusMinusOne).clean())
        return 2;
    return 3;
}

namespace {

struct LabelAssignment {
    // label per quotient vertex id
    std::vector<long long> labels;
    LabelStrategy used = LabelStrategy::LexRank;
};

} // namespace

QuotientComplex quotient(const PeriodicTriangulation& T, const Lattice& L,
                         LabelStrategy strategy) {
    validate_periodic(T);
    if (L.n() != T.n)
        throw Error(ErrorKind::Shape, "lattice dimension mismatch");
    int n = T.n;
    auto dist = classify_distance(T, L);
    if (dist.d == 1) {
        std::string msg = "quotient is not a cell complex: vertex orbit " +
                          std::to_string(dist.witness->first) + " meets itself along edge (";
        for (int i = 0; i < n; ++i)
            msg += (i ? "," : "") + dist.witness->second[i].str();
        msg += ")";
        throw Error(ErrorKind::NotACellComplex, msg);
    }

    FaceOrbits fo = enumerate_face_orbits(T);
    auto residues = L.residues();
    long long R = (long long)residues.size();
    int V = int(T.vertex_reps.size());

    auto res_pos = [&](const std::vector<Int>& z) {
        Int pos = 0;
        for (int i = 0; i < n; ++i)
            pos = pos * L.hnf_basis().at(i, i) + z[i];
        return (long long)pos;
    };
    auto vertex_id = [&](const PeriodicVertexRef& ref) {
        return (long long)ref.rep * R + res_pos(L.residue(ref.offset));
    };

    // ----- order labels -----
    bool summod_applicable = T.integer_coordinates();
    if (summod_applicable) {
        for (int i = 0; i < n && summod_applicable; ++i) {
            Int s = 0;
            for (int j = 0; j < n; ++j)
                s += L.basis().at(i, j);
            if (floor_mod(s, Int(n + 1)) != 0)
                summod_applicable = false;
        }
    }
    auto summod_labels = [&]() {
        std::vector<long long> lab(V * R);
        for (int r = 0; r < V; ++r)
            for (long long zi = 0; zi < R; ++zi) {
                Int s = 0;
                for (int i = 0; i < n; ++i)
                    s += numerator(T.vertex_reps[r][i]) + residues[zi][i];
                lab[r * R + zi] = (long long)floor_mod(s, Int(n + 1));
            }
        return lab;
    };
    auto lexrank_labels = [&](bool desc) {
        // residues are listed in box-lex order, so (rep, residue) rank is the
        // vertex id itself
        std::vector<long long> lab(V * R);
        for (long long v = 0; v < (long long)V * R; ++v)
            lab[v] = desc ? (long long)V * R - 1 - v : v;
        return lab;
    };
    auto labels_valid = [&](const std::vector<long long>& lab) {
        for (const auto& key : fo.by_dim[n])
            for (long long zi = 0; zi < R; ++zi) {
                std::vector<long long> ls;
                for (const auto& ref : key) {
                    PeriodicVertexRef abs{ref.rep, ref.offset};
                    for (int i = 0; i < n; ++i)
                        abs.offset[i] += residues[zi][i];
                    ls.push_back(lab[vertex_id(abs)]);
                }
                std::sort(ls.begin(), ls.end());
                if (std::adjacent_find(ls.begin(), ls.end()) != ls.end())
                    return false;
            }
        return true;
    };

    LabelAssignment la;
    switch (strategy) {
    case LabelStrategy::SumMod: {
        if (!summod_applicable)
            throw Error(ErrorKind::NoValidOrder,
                        "sum-mod labeling needs integer coordinates and basis row sums "
                        "divisible by n+1");
        la.labels = summod_labels();
        la.used = LabelStrategy::SumMod;
        if (!labels_valid(la.labels))
            throw Error(ErrorKind::NoValidOrder,
                        "sum-mod labeling is not a total order on some cell");
        break;
    }
    case LabelStrategy::LexRank:
        la.labels = lexrank_labels(false);
        la.used = LabelStrategy::LexRank;
        break;
    case LabelStrategy::LexRankDesc:
        la.labels = lexrank_labels(true);
        la.used = LabelStrategy::LexRankDesc;
        break;
    case LabelStrategy::Auto: {
        if (summod_applicable) {
            la.labels = summod_labels();
            if (labels_valid(la.labels)) {
                la.used = LabelStrategy::SumMod;
                break;
            }
        }
        la.labels = lexrank_labels(false);
        la.used = LabelStrategy::LexRank;
        break;
    }
    }

    // ----- cells -----
    std::vector<long long> base(n + 2, 0);
    for (int d = 0; d <= n; ++d)
        base[d + 1] = base[d] + (long long)fo.by_dim[d].size() * R;

    std::vector<CellSpec> specs;
    specs.reserve(size_t(base[n + 1]));
    std::vector<std::vector<PeriodicVertexRef>> lifts(size_t(base[n + 1]));

    for (int r = 0; r < V; ++r)
        for (long long zi = 0; zi < R; ++zi) {
            long long id = r * R + zi;
            CellSpec s;
            s.id = int(id);
            s.dim = 0;
            s.order_label = la.labels[id];
            specs.push_back(std::move(s));
            PeriodicVertexRef ref{r, residues[zi]};
            lifts[id] = {ref};
        }

    for (int d = 1; d <= n; ++d) {
        for (int o = 0; o < int(fo.by_dim[d].size()); ++o) {
            const Face& key = fo.by_dim[d][o];
            for (long long zi = 0; zi < R; ++zi) {
                long long id = base[d] + (long long)o * R + zi;
                // lift: key translated by this residue, vertices label-ordered
                std::vector<std::pair<long long, PeriodicVertexRef>> verts;
                for (const auto& ref : key) {
                    PeriodicVertexRef abs{ref.rep, ref.offset};
                    for (int i = 0; i < n; ++i)
                        abs.offset[i] += residues[zi][i];
                    verts.emplace_back(la.labels[vertex_id(abs)], std::move(abs));
                }
                std::sort(verts.begin(), verts.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                if (std::adjacent_find(verts.begin(), verts.end(),
                                       [](const auto& a, const auto& b) {
                                           return a.first == b.first;
                                       }) != verts.end())
                    throw Error(ErrorKind::NoValidOrder,
                                "labeling is not a total order on a quotient cell");

                CellSpec s;
                s.id = int(id);
                s.dim = d;
                for (int drop = 0; drop <= d; ++drop) {
                    Face facet;
                    for (int j = 0; j <= d; ++j)
                        if (j != drop)
                            facet.push_back(verts[j].second);
                    auto [fkey, t] = canonical_face(std::move(facet));
                    auto it = fo.lookup.find(fkey);
                    if (it == fo.lookup.end())
                        throw Error(ErrorKind::Degenerate,
                                    "face closure violated in periodic triangulation");
                    auto [fd, fidx] = it->second;
                    s.facets.push_back(
                        int(base[fd] + (long long)fidx * R + res_pos(L.residue(t))));
                }
                std::vector<PeriodicVertexRef> lift;
                for (auto& [lab, ref] : verts)
                    lift.push_back(std::move(ref));
                lifts[id] = std::move(lift);
                specs.push_back(std::move(s));
            }
        }
    }

    std::vector<int> top_orbit_source(fo.by_dim[n].size(), -1);
    for (int m = 0; m < int(T.simplex_reps.size()); ++m) {
        auto [key, t] = canonical_face(T.simplex_reps[m]);
        top_orbit_source[fo.lookup.at(key).second] = m;
    }

    QuotientComplex Q{SimplicialCellComplex::build(std::move(specs)), L, T, std::move(lifts),
                      std::move(top_orbit_source), dist.d};
    return Q;
}

QPoint QuotientComplex::lift_point(int cell_id, int vertex_pos) const {
    const auto& ref = lifts.at(size_t(cell_id)).at(size_t(vertex_pos));
    return source.point_of(ref);
}

SimplicialCellComplex cross_polytope_rp(int n) {
    if (n < 1)
        throw Error(ErrorKind::Domain, "cross_polytope_rp requires n >= 1");
    // cells are (S, signs) with S a nonempty subset of the n+1 coordinates
    // and signs canonical: + on the smallest element of S
    std::map<std::pair<unsigned, unsigned>, int> ids;
    std::vector<CellSpec> specs;
    int next_id = 0;
    for (int k = 0; k <= n; ++k) {
        for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
            if (std::popcount(mask) != k + 1)
                continue;
            std::vector<int> elems;
            for (int i = 0; i <= n; ++i)
                if (mask & (1u << i))
                    elems.push_back(i);
            for (unsigned pat = 0; pat < (1u << k); ++pat) {
                int id = next_id++;
                ids[{mask, pat}] = id;
                CellSpec s;
                s.id = id;
                s.dim = k;
                if (k == 0) {
                    s.order_label = elems[0];
                } else {
                    for (int drop = 0; drop <= k; ++drop) {
                        // signs of the remaining elements, then re-canonicalize
                        std::vector<int> sign(k + 1);
                        sign[0] = +1;
                        for (int t = 1; t <= k; ++t)
                            sign[t] = (pat >> (t - 1)) & 1 ? -1 : +1;
                        unsigned m2 = mask & ~(1u << elems[drop]);
                        std::vector<int> s2;
                        for (int t = 0; t <= k; ++t)
                            if (t != drop)
                                s2.push_back(sign[t]);
                        if (s2[0] == -1)
                            for (auto& x : s2)
                                x = -x;
                        unsigned pat2 = 0;
                        for (size_t t = 1; t < s2.size(); ++t)
                            if (s2[t] == -1)
                                pat2 |= 1u << (t - 1);
                        s.facets.push_back(ids.at({m2, pat2}));
                    }
                }
                specs.push_back(std::move(s));
            }
        }
    }
    return SimplicialCellComplex::build(std::move(specs));
}

ChainF2 fundamental_cycle_f2(const QuotientComplex& Q) {
    ChainF2 z;
    int top = Q.complex.top_dim();
    z.dim = top;
    for (int id : Q.complex.cells_of_dim(top))
        z.set(id, F2(1));
    ChainF2 b = Q.complex.boundary(z);
    if (!b.is_zero())
        throw Error(ErrorKind::Verify, "mod-2 fundamental chain has nonzero boundary");
    return z;
}

ChainQ fundamental_cycle_q(const QuotientComplex& Q) {
    int n = Q.source.n;
    ChainQ z;
    z.dim = n;
    Rat index = Rat(Q.lattice.index());
    Rat scale_probe = 0; // value of dx_1 cup ... cup dx_n on the raw cycle
    for (int id : Q.complex.cells_of_dim(n)) {
        const auto& lift = Q.lifts[size_t(id)];
        MatrixQ m(n, n);
        QPoint prev = Q.source.point_of(lift[0]);
        Rat diag = 1;
        for (int i = 0; i < n; ++i) {
            QPoint cur = Q.source.point_of(lift[i + 1]);
            for (int j = 0; j < n; ++j)
                m.at(i, j) = cur[j] - prev[j];
            diag *= m.at(i, i);
            prev = std::move(cur);
        }
        Rat det = determinant(m);
        if (det == 0)
            throw Error(ErrorKind::Degenerate,
                        "degenerate lifted simplex at cell " + std::to_string(id));
        Rat coeff = (det > 0 ? Rat(1) : Rat(-1)) / index;
        z.set(id, coeff);
        scale_probe += coeff * diag;
    }
    if (scale_probe != 1 && scale_probe != -1)
        throw Error(ErrorKind::Verify,
                    "volume cup product on the orientation cycle is not unimodular: " +
                        rat_to_string(scale_probe));
    if (scale_probe == -1)
        for (auto& [id, c] : z.vals)
            c = -c;
    ChainQ b = Q.complex.boundary(z);
    if (!b.is_zero())
        throw Error(ErrorKind::Verify, "rational fundamental chain has nonzero boundary");
    return z;
}

EpsSubdivision barycentric_subdivide_eps(const PeriodicTriangulation& T, const Rat& eps) {
    if (eps <= 0 || eps >= 1)
        throw Error(ErrorKind::Domain, "eps must lie strictly between 0 and 1");
    validate_periodic(T);
    if (!T.integer_coordinates())
        throw Error(ErrorKind::Domain, "subdivision requires integer vertex coordinates");
    int n = T.n;

    FaceOrbits fo = enumerate_face_orbits(T);
    // global orbit index in dimension order; per orbit: canonical barycenter
    // (reduced to [0,1)^n) and the integer shift removed by the reduction
    std::map<Face, int, FaceLess> global;
    std::vector<QPoint> bary;
    std::vector<std::vector<Int>> shift;
    for (int d = 0; d <= n; ++d)
        for (const auto& key : fo.by_dim[d]) {
            QPoint lexmax = T.point_of(key[0]);
            QPoint centroid(n, Rat(0));
            for (const auto& ref : key) {
                QPoint p = T.point_of(ref);
                if (point_lex_less(lexmax, p))
                    lexmax = p;
                for (int i = 0; i < n; ++i)
                    centroid[i] += p[i];
            }
            for (int i = 0; i < n; ++i)
                centroid[i] /= int(key.size());
            QPoint b(n);
            for (int i = 0; i < n; ++i)
                b[i] = (1 - eps) * lexmax[i] + eps * centroid[i];
            std::vector<Int> s(n);
            for (int i = 0; i < n; ++i) {
                s[i] = rat_floor(b[i]);
                b[i] -= Rat(s[i]);
            }
            global.emplace(key, int(bary.size()));
            bary.push_back(std::move(b));
            shift.push_back(std::move(s));
        }
    {
        std::set<std::vector<std::string>> distinct;
        for (const auto& p : bary) {
            std::vector<std::string> k;
            for (const auto& c : p)
                k.push_back(rat_to_string(c));
            if (!distinct.insert(k).second)
                throw Error(ErrorKind::Degenerate, "barycenter collision between face orbits");
        }
    }

    EpsSubdivision out;
    out.tri.n = n;
    out.tri.vertex_reps = bary;

    for (int m = 0; m < int(T.simplex_reps.size()); ++m) {
        const auto& simplex = T.simplex_reps[m];
        std::vector<int> order(n + 1);
        for (int i = 0; i <= n; ++i)
            order[i] = i;
        std::vector<QPoint> pts;
        for (const auto& ref : simplex)
            pts.push_back(T.point_of(ref));
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return point_lex_less(pts[a], pts[b]);
        });
        for (int i = 0; i < n; ++i)
            if (!point_lex_less(pts[order[i]], pts[order[i + 1]]))
                throw Error(ErrorKind::Degenerate, "coincident vertices in simplex");

        std::vector<int> perm(n + 1);
        for (int i = 0; i <= n; ++i)
            perm[i] = i;
        do {
            std::vector<PeriodicVertexRef> chain;
            Face face;
            for (int i = 0; i <= n; ++i) {
                face.push_back(simplex[order[perm[i]]]);
                auto [key, t] = canonical_face(face);
                int g = global.at(key);
                PeriodicVertexRef ref{g, shift[g]};
                for (int j = 0; j < n; ++j)
                    ref.offset[j] += t[j];
                chain.push_back(std::move(ref));
            }
            // orbit-canonical translate: move the 0-dimensional barycenter's
            // offset to zero
            std::vector<Int> t0 = chain[0].offset;
            for (auto& r : chain)
                for (int j = 0; j < n; ++j)
                    r.offset[j] -= t0[j];
            out.tri.simplex_reps.push_back(std::move(chain));
            out.provenance.emplace_back(m, perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    validate_periodic(out.tri);
    return out;
}

} // namespace torusrank
