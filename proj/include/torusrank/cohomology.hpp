/*
 * Cochain calculus on simplicial cell complexes: coboundaries, cup products
 * by the ordered-segment formula, GF(2) Betti numbers and cohomology bases,
 * the coordinate-difference 1-cocycles of torus quotients, and the exhaustive
 * coboundary-perturbation sweep.
 */
#ifndef TORUSRANK_COHOMOLOGY_HPP
#define TORUSRANK_COHOMOLOGY_HPP

#include <cstdint>
#include <vector>

#include "torusrank/cellcomplex.hpp"
#include "torusrank/periodic.hpp"

namespace torusrank {

CochainF2 coboundary(const SimplicialCellComplex& X, const CochainF2& a);
CochainQ coboundary(const SimplicialCellComplex& X, const CochainQ& a);

F2 evaluate(const CochainF2& a, const ChainF2& c);
Rat evaluate(const CochainQ& a, const ChainQ& c);

// Cup product of cochains a_1, ..., a_k: on each cell of dimension
// d_1 + ... + d_k the product of the a_i over the consecutive vertex-tuple
// segments, taken in the cell's label order.
CochainF2 cup(const SimplicialCellComplex& X, const std::vector<CochainF2>& as);
CochainQ cup(const SimplicialCellComplex& X, const std::vector<CochainQ>& as);

// The 1-cocycles dx_i of a torus quotient: on an edge, the difference of the
// i-th coordinates of the lifted endpoint and startpoint (label order).
std::vector<CochainQ> dx_cocycles(const QuotientComplex& Q);

// dx_i reduced modulo 2; requires integer lift coordinates.
std::vector<CochainF2> dx_cocycles_mod2(const QuotientComplex& Q);

int betti_f2(const SimplicialCellComplex& X, int k);
int betti_q(const SimplicialCellComplex& X, int k);

// A cohomology basis in degree k over GF(2): cocycle representatives of a
// basis of ker(delta_k) / im(delta_{k-1}), deterministic (lowest cell ids as
// free coordinates first).
std::vector<CochainF2> cohomology_basis_f2(const SimplicialCellComplex& X, int k);

struct PerturbationReport {
    long long total_tuples = 0;
    std::vector<long long> witness_counts; // per examined tuple
    long long min_witnesses = 0;
    long long witness_union_size = 0; // distinct cells that ever evaluate to 1
    long long top_cell_count = 0;     // number of cells of the cup dimension
    int n_factors = 0;
    bool exhaustive = true;
    bool all_tuples_witnessed = false; // min_witnesses >= 1
    bool meets_pow2_bound = false;     // top_cell_count >= 2^n_factors
};

struct Theorem1Options {
    bool exhaustive = true;
    long long sample_count = 0; // used when !exhaustive
    uint64_t seed = 0;
    long long tuple_cap = 1ll << 24;
};

// For every tuple of subsets S_i of the (d_i - 1)-cells, perturbs a_i by the
// coboundary of the indicator of S_i, evaluates the cup product of the
// perturbed cocycles on every top-sum-dimension cell, and reports witness
// statistics. Exhaustive mode throws ErrorKind::Budget when the tuple count
// exceeds the cap.
PerturbationReport theorem1_witness_check(const SimplicialCellComplex& X,
                                          const std::vector<CochainF2>& cocycles,
                                          const Theorem1Options& opts = {});

} // namespace torusrank

#endif
