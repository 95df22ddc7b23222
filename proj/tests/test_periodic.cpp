#include <doctest.h>

#include <algorithm>
#include <set>

#include "torusrank/periodic.hpp"

using namespace torusrank;

namespace {

// Independent oracle: the number of k-simplex orbits per fundamental domain
// of the staircase triangulation equals the number of ordered sequences of k
// disjoint nonempty subsets of [n], by inclusion-exclusion.
long long staircase_orbit_count(int n, int k) {
    auto binom = [](long long a, long long b) {
        long long r = 1;
        for (long long i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    };
    long long total = 0;
    for (int i = 0; i <= k; ++i) {
        long long term = binom(k, i);
        long long p = 1;
        for (int t = 0; t < n; ++t)
            p *= (k + 1 - i);
        total += (i % 2 == 0 ? 1 : -1) * term * p;
    }
    return total;
}

std::vector<Int> iv(std::vector<long long> v) { return std::vector<Int>(v.begin(), v.end()); }

std::set<std::vector<long long>> simplex_offsets(const PeriodicTriangulation& T, size_t i) {
    std::set<std::vector<long long>> out;
    for (const auto& ref : T.simplex_reps[i]) {
        std::vector<long long> o;
        for (const auto& x : ref.offset)
            o.push_back((long long)x);
        out.insert(o);
    }
    return out;
}

} // namespace

TEST_CASE("staircase: pinned examples") {
    auto t1 = staircase(1);
    CHECK(t1.vertex_reps.size() == 1);
    REQUIRE(t1.simplex_reps.size() == 1);
    CHECK(simplex_offsets(t1, 0) == std::set<std::vector<long long>>{{0}, {1}});

    auto t2 = staircase(2);
    REQUIRE(t2.simplex_reps.size() == 2);
    std::set<std::set<std::vector<long long>>> tris{simplex_offsets(t2, 0),
                                                    simplex_offsets(t2, 1)};
    std::set<std::set<std::vector<long long>>> expect{{{0, 0}, {1, 0}, {1, 1}},
                                                      {{0, 0}, {0, 1}, {1, 1}}};
    CHECK(tris == expect);

    CHECK(staircase(3).simplex_reps.size() == 6);
    for (int n = 1; n <= 5; ++n)
        CHECK_NOTHROW(validate_periodic(staircase(n)));
}

TEST_CASE("staircase edges are {0,1} vectors") {
    auto T = staircase(4);
    for (const auto& s : T.simplex_reps)
        for (const auto& a : s)
            for (const auto& b : s) {
                if (a == b)
                    continue;
                for (int i = 0; i < T.n; ++i) {
                    Int d = b.offset[i] - a.offset[i];
                    CHECK((d == 0 || d == 1 || d == -1));
                }
            }
}

TEST_CASE("classify_distance: pinned examples") {
    CHECK(classify_distance(staircase(2), integer_lattice(2)).d == 1);
    for (int n = 2; n <= 4; ++n) {
        CHECK(classify_distance(staircase(n), matrix_A(n)).d == 2);
        CHECK(classify_distance(staircase(n), matrix_B(n)).d == 3);
    }
    // the d=2 witness family membership: (2,1,...,1) = e_1 + (1,...,1)
    auto dc = classify_distance(staircase(3), matrix_A(3));
    REQUIRE(dc.witness.has_value());
    CHECK(matrix_A(3).contains(dc.witness->second));
}

TEST_CASE("BFS distance agrees with the staircase forbidden-vector shortcut") {
    for (int n = 2; n <= 3; ++n) {
        auto T = staircase(n);
        CHECK(classify_distance(T, integer_lattice(n)).d ==
              staircase_distance_via_families(integer_lattice(n)));
        CHECK(classify_distance(T, matrix_A(n)).d ==
              staircase_distance_via_families(matrix_A(n)));
        CHECK(classify_distance(T, matrix_B(n)).d ==
              staircase_distance_via_families(matrix_B(n)));
        for (long long k = 2; k <= 9; ++k)
            enumerate_sublattices(n, Int(k), [&](const Lattice& L) {
                CHECK(classify_distance(T, L).d == staircase_distance_via_families(L));
                return true;
            });
    }
}

TEST_CASE("quotient: pinned cell counts") {
    auto qa = quotient(staircase(2), matrix_A(2));
    CHECK(qa.complex.f_vector() == std::vector<long long>{3, 9, 6});
    CHECK(qa.distance == 2);

    auto qb = quotient(staircase(2), matrix_B(2));
    CHECK(qb.complex.f_vector() == std::vector<long long>{7, 21, 14});
    CHECK(qb.distance == 3);
    CHECK(qb.complex.validate().kind == Classification::SimplicialComplex);

    for (int n = 2; n <= 4; ++n) {
        auto q = quotient(staircase(n), matrix_A(n));
        long long fact = 1;
        for (int i = 2; i <= n + 1; ++i)
            fact *= i;
        CHECK(q.complex.count(n) == fact); // (n+1)!
        CHECK(q.complex.count(0) == n + 1);
        CHECK(q.complex.validate().kind == Classification::SimplicialCellComplexOnly);
    }
}

TEST_CASE("quotient cell counts equal index times per-domain orbit counts") {
    for (int n = 2; n <= 6; ++n) {
        auto q = quotient(staircase(n), matrix_A(n));
        auto f = q.complex.f_vector();
        for (int k = 0; k <= n; ++k)
            CHECK(Int(f[size_t(k)]) == matrix_A(n).index() * staircase_orbit_count(n, k));
    }
    for (int n = 2; n <= 5; ++n) {
        auto q = quotient(staircase(n), matrix_B(n));
        auto f = q.complex.f_vector();
        for (int k = 0; k <= n; ++k)
            CHECK(Int(f[size_t(k)]) == matrix_B(n).index() * staircase_orbit_count(n, k));
    }
}

TEST_CASE("quotient at distance one refuses with a witness edge") {
    CHECK_THROWS_AS(quotient(staircase(2), integer_lattice(2)), Error);
    try {
        quotient(staircase(3), integer_lattice(3));
        FAIL("expected NotACellComplex");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotACellComplex);
    }
}

TEST_CASE("quotient classification follows the distance table") {
    // d = 2: cell complex but not simplicial; d >= 3: simplicial complex
    for (int n = 2; n <= 4; ++n) {
        CHECK(quotient(staircase(n), matrix_A(n)).complex.validate().kind ==
              Classification::SimplicialCellComplexOnly);
        CHECK(quotient(staircase(n), matrix_B(n)).complex.validate().kind ==
              Classification::SimplicialComplex);
    }
}

TEST_CASE("lifted facets differ from stored facet lifts by lattice vectors") {
    for (auto q : {quotient(staircase(2), matrix_A(2)), quotient(staircase(2), matrix_B(2)),
                   quotient(staircase(3), matrix_A(3))}) {
        const auto& X = q.complex;
        for (int d = 1; d <= X.top_dim(); ++d)
            for (int id : X.cells_of_dim(d)) {
                const Cell& c = X.cell(id);
                for (int i = 0; i <= c.dim; ++i) {
                    const auto& flift = q.lifts[size_t(c.facets[i])];
                    // drop vertex i from the cell's lift
                    std::vector<PeriodicVertexRef> dropped;
                    for (int j = 0; j <= c.dim; ++j)
                        if (j != i)
                            dropped.push_back(q.lifts[size_t(id)][size_t(j)]);
                    REQUIRE(dropped.size() == flift.size());
                    // all vertex pairs must differ by one common lattice vector
                    std::vector<Int> delta;
                    for (size_t j = 0; j < dropped.size(); ++j) {
                        CHECK(dropped[j].rep == flift[j].rep);
                        std::vector<Int> d2;
                        for (int t = 0; t < q.source.n; ++t)
                            d2.push_back(dropped[j].offset[t] - flift[j].offset[t]);
                        if (j == 0)
                            delta = d2;
                        else
                            CHECK(delta == d2);
                    }
                    CHECK(q.lattice.contains(delta));
                }
            }
    }
}

TEST_CASE("vertex lifts reduce to their stored residues") {
    auto q = quotient(staircase(2), matrix_B(2));
    for (int id : q.complex.cells_of_dim(0)) {
        const auto& ref = q.lifts[size_t(id)][0];
        CHECK(q.lattice.residue(ref.offset) == ref.offset);
    }
}

TEST_CASE("cross_polytope_rp: pinned examples") {
    CHECK(cross_polytope_rp(2).f_vector() == std::vector<long long>{3, 6, 4});
    CHECK(cross_polytope_rp(3).f_vector() == std::vector<long long>{4, 12, 16, 8});
    auto rp1 = cross_polytope_rp(1);
    CHECK(rp1.f_vector() == std::vector<long long>{2, 2});
    CHECK(rp1.validate().kind == Classification::SimplicialCellComplexOnly);

    // f_k = C(n+1, k+1) * 2^k, half the cross-polytope boundary counts
    for (int n = 2; n <= 5; ++n) {
        auto f = cross_polytope_rp(n).f_vector();
        for (int k = 0; k <= n; ++k) {
            long long binom = 1;
            for (int i = 0; i < k + 1; ++i)
                binom = binom * (n + 1 - i) / (i + 1);
            CHECK(f[size_t(k)] == binom * (1ll << k));
        }
    }
}

TEST_CASE("fundamental cycles: pinned examples") {
    auto q = quotient(staircase(2), matrix_A(2));
    ChainQ z = fundamental_cycle_q(q);
    CHECK(z.vals.size() == 6);
    int plus = 0, minus = 0;
    for (const auto& [id, c] : z.vals) {
        CHECK((c == Rat(1, 3) || c == Rat(-1, 3)));
        (c > 0 ? plus : minus)++;
    }
    CHECK(plus == 3);
    CHECK(minus == 3);
    CHECK(q.complex.boundary(z).is_zero());

    ChainF2 z2 = fundamental_cycle_f2(q);
    CHECK((long long)z2.vals.size() == q.complex.count(2));
    CHECK(q.complex.boundary(z2).is_zero());

    auto qb = quotient(staircase(3), matrix_B(3));
    ChainQ zb = fundamental_cycle_q(qb);
    for (const auto& [id, c] : zb.vals)
        CHECK((c == Rat(1, 15) || c == Rat(-1, 15)));
    CHECK(qb.complex.boundary(zb).is_zero());
}

TEST_CASE("validate_periodic rejects broken data") {
    auto T = staircase(2);
    auto bad = T;
    bad.simplex_reps.push_back(bad.simplex_reps[0]); // duplicate orbit
    CHECK_THROWS_AS(validate_periodic(bad), Error);

    auto bad2 = T;
    bad2.vertex_reps[0][0] = Rat(3, 2); // not a canonical residue
    CHECK_THROWS_AS(validate_periodic(bad2), Error);

    auto bad3 = T;
    bad3.simplex_reps[0][1] = bad3.simplex_reps[0][0]; // repeated vertex
    CHECK_THROWS_AS(validate_periodic(bad3), Error);
}

TEST_CASE("barycentric_subdivide_eps: structure") {
    auto T = staircase(2);
    auto sub = barycentric_subdivide_eps(T, Rat(1, 16));
    CHECK(sub.tri.simplex_reps.size() == 12); // 3! * 2
    // vertex orbits of T' = face orbits of T per fundamental domain: 1 + 3 + 2
    CHECK(sub.tri.vertex_reps.size() == 6);
    CHECK(sub.provenance.size() == 12);
    CHECK_NOTHROW(validate_periodic(sub.tri));
    CHECK(classify_distance(sub.tri, integer_lattice(2)).d == 2);

    auto sub3 = barycentric_subdivide_eps(staircase(3), Rat(1, 16));
    CHECK(sub3.tri.simplex_reps.size() == 24 * 6);
    CHECK(sub3.tri.vertex_reps.size() == 1 + 7 + 12 + 6);

    CHECK_THROWS_AS(barycentric_subdivide_eps(T, Rat(0)), Error);
    CHECK_THROWS_AS(barycentric_subdivide_eps(T, Rat(1)), Error);
    CHECK_THROWS_AS(barycentric_subdivide_eps(T, Rat(17, 16)), Error);
}

TEST_CASE("subdivision quotient is a cell complex with dimensional order") {
    auto sub = barycentric_subdivide_eps(staircase(2), Rat(1, 16));
    auto q = quotient(sub.tri, integer_lattice(2));
    CHECK(q.distance == 2);
    CHECK(q.complex.validate().kind == Classification::SimplicialCellComplexOnly);
    CHECK(q.complex.count(2) == 12);
    // every top cell walks one barycenter per dimension
    for (int id : q.complex.cells_of_dim(2)) {
        const auto& lift = q.lifts[size_t(id)];
        CHECK(lift.size() == 3);
    }
}

TEST_CASE("label strategies: explicit requests") {
    // SumMod applies to staircase/matrix_A and yields labels 0..n
    auto q = quotient(staircase(2), matrix_A(2), LabelStrategy::SumMod);
    std::set<long long> labels;
    for (int id : q.complex.cells_of_dim(0))
        labels.insert(q.complex.order_label(id));
    CHECK(labels == std::set<long long>{0, 1, 2});

    // SumMod is refused where row sums are not divisible by n+1
    CHECK_THROWS_AS(quotient(staircase(2), matrix_B(2), LabelStrategy::SumMod), Error);

    // LexRank and LexRankDesc both build valid complexes
    CHECK(quotient(staircase(2), matrix_A(2), LabelStrategy::LexRank)
              .complex.validate()
              .kind == Classification::SimplicialCellComplexOnly);
    CHECK(quotient(staircase(2), matrix_A(2), LabelStrategy::LexRankDesc)
              .complex.validate()
              .kind == Classification::SimplicialCellComplexOnly);
}
