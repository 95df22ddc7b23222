/*
 * Z^n-periodic triangulations and their quotients.
 *
 * A periodic triangulation is stored by orbit representatives: one rational
 * point per vertex orbit (canonical residue in [0,1)^n) and one simplex per
 * translation orbit, each vertex given as (representative index, integer
 * offset). Quotients by full-rank sublattices produce simplicial cell
 * complexes with per-cell lifts retained for cohomology and tensor work.
 */
#ifndef TORUSRANK_PERIODIC_HPP
#define TORUSRANK_PERIODIC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusrank/cellcomplex.hpp"
#include "torusrank/lattice.hpp"

namespace torusrank {

using QPoint = std::vector<Rat>;

QPoint point_add(const QPoint& a, const std::vector<Int>& t);
QPoint point_sub(const QPoint& a, const QPoint& b);
bool point_lex_less(const QPoint& a, const QPoint& b);

// One vertex of a lifted simplex: vertex_reps[rep] + offset.
struct PeriodicVertexRef {
    int rep = 0;
    std::vector<Int> offset;

    bool operator==(const PeriodicVertexRef&) const = default;
};

bool ref_less(const PeriodicVertexRef& a, const PeriodicVertexRef& b);

struct PeriodicTriangulation {
    int n = 0;
    std::vector<QPoint> vertex_reps;
    std::vector<std::vector<PeriodicVertexRef>> simplex_reps;

    QPoint point_of(const PeriodicVertexRef& r) const;
    bool integer_coordinates() const;
};

// Checks the stored-representative invariants: shapes, canonical residues,
// distinct vertices per simplex, orbit-unique simplex reps. Throws on
// violation.
void validate_periodic(const PeriodicTriangulation& T);

// The standard staircase triangulation: one vertex orbit at the origin and
// n! simplex orbits, one per permutation, with prefix sums of permuted basis
// vectors as vertices.
PeriodicTriangulation staircase(int n);

Lattice integer_lattice(int n); // Z^n itself

struct DistanceClass {
    int d = 3; // 1, 2, or 3 meaning "at least 3"
    // a same-orbit pair realizing d, as (vertex rep, lattice vector)
    std::optional<std::pair<int, std::vector<Int>>> witness;
};

// Minimum edge-distance between distinct vertices of T in the same L-orbit,
// explored to depth 2 by breadth-first search on lifts.
DistanceClass classify_distance(const PeriodicTriangulation& T, const Lattice& L);

// Forbidden-vector shortcut valid for the staircase: d>=2 iff L has no
// nonzero {0,1} vector, d>=3 iff additionally no nonzero {0,1,2} or {-1,0,1}
// vector.
int staircase_distance_via_families(const Lattice& L);

enum class LabelStrategy {
    Auto,        // SumMod when applicable, else LexRank
    SumMod,      // (sum of lift coordinates) mod (n+1); staircase/matrix_A path
    LexRank,     // rank of (vertex orbit, canonical residue), ascending
    LexRankDesc, // the reverse ranking; exercises order-independence
};

struct QuotientComplex {
    SimplicialCellComplex complex;
    Lattice lattice;
    PeriodicTriangulation source;
    // Per cell id: the chosen lift, vertices in the cell's label order.
    std::vector<std::vector<PeriodicVertexRef>> lifts;
    // Per top-dimension cell orbit (in cell order): which source simplex rep
    // generated it. Top cell ids are laid out orbit-major over residues.
    std::vector<int> top_orbit_source;
    int distance = 0; // d at construction time (2 or 3)

    QPoint lift_point(int cell_id, int vertex_pos) const;
};

// Quotient of T by L as a simplicial cell complex. Requires d(T,L) >= 2;
// throws ErrorKind::NotACellComplex naming a same-orbit edge when d = 1,
// ErrorKind::NoValidOrder when an explicitly requested labeling is not a
// total order on some cell.
QuotientComplex quotient(const PeriodicTriangulation& T, const Lattice& L,
                         LabelStrategy strategy = LabelStrategy::Auto);

// Crystallization of RP^n: antipodal quotient of the cross-polytope
// boundary. n+1 vertices, 2^n top cells, order label = coordinate index.
SimplicialCellComplex cross_polytope_rp(int n);

// Fundamental cycle of a torus quotient. Over F2 every top cell has
// coefficient 1; over Q coefficients are orientation signs divided by the
// lattice index, normalized so the full dx cup product evaluates to 1.
// The boundary is verified to vanish.
ChainF2 fundamental_cycle_f2(const QuotientComplex& Q);
ChainQ fundamental_cycle_q(const QuotientComplex& Q);

struct EpsSubdivision {
    PeriodicTriangulation tri;
    // per simplex rep of `tri`: (parent simplex orbit, permutation of 0..n)
    std::vector<std::pair<int, std::vector<int>>> provenance;
};

// Barycentric subdivision with every barycenter placed at
// (1-eps)*(lexicographically largest vertex) + eps*(centroid). Requires
// integer-coordinate T and 0 < eps < 1. Vertex orbits of the result are the
// face orbits of T, listed in dimension order so that the default quotient
// labeling is the dimensional order.
EpsSubdivision barycentric_subdivide_eps(const PeriodicTriangulation& T, const Rat& eps);

} // namespace torusrank

#endif
