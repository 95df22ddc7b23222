/*
 * Rank-one decompositions of the n x n determinant tensor from periodic
 * triangulations and torus quotients, entrywise verification against the
 * Levi-Civita tensor, eps-subdivision limit checks, and rank bound reports.
 */
#ifndef TORUSRANK_DETDECOMP_HPP
#define TORUSRANK_DETDECOMP_HPP

#include <optional>
#include <string>
#include <vector>

#include "torusrank/periodic.hpp"

namespace torusrank {

struct Rank1Term {
    Rat coeff;
    std::vector<std::vector<Rat>> factors; // n covectors of length n
};

struct DetDecomposition {
    int n = 0;
    std::vector<Rank1Term> terms;
    std::string provenance;
    bool verified = false; // set only by a successful verify_levi_civita
};

// One term per top cell: coefficient from the rational fundamental cycle,
// factor i the i-th consecutive lift-edge vector in the cell's label order.
DetDecomposition decompose_from_quotient(const QuotientComplex& Q);

// One term per simplex orbit: vertices of a lift sorted lexicographically,
// factors the consecutive differences, coefficient the sign of their
// determinant. Lexicographic ties raise an invalid-triangulation error.
DetDecomposition decompose_periodic_lex(const PeriodicTriangulation& T);

struct LeviCivitaResult {
    bool exact_equal = false;
    std::vector<int> mismatch_index; // empty when exact_equal
    Rat got, expected;
};

// Assembles sum(coeff * prod factor_i[j_i]) over every multi-index in [n]^n
// and compares exactly with the permutation-sign tensor. Marks D verified on
// success. Throws ErrorKind::Budget above the cap.
LeviCivitaResult verify_levi_civita(DetDecomposition& D, int cap = 7);

struct RankBoundReport {
    int n = 0;
    Rat lower_bound;   // n^(n-1) / (n-1)!
    Int lower_ceiling;
    Int leibniz_count; // n!
    std::optional<long long> decomposition_length;
    std::optional<bool> length_consistent; // length >= ceiling
};

RankBoundReport rank_bound_report(int n, const DetDecomposition* D = nullptr);

struct EpsTermBoundReport {
    int n = 0;
    Rat eps;
    Int diameter;          // max coordinate span over the simplex orbits
    Rat constant;          // C, independent of eps
    Rat bound;             // C * eps
    long long terms_total = 0;
    long long identity_terms = 0;
    Rat max_nonidentity_sup;  // measured sup-norm over permuted terms
    Rat max_identity_dev;     // measured entrywise deviation from the lex terms
    bool pass = false;
    std::string violation;    // first offending term, when !pass
};

// Decomposes the eps-barycentric subdivision of T through its full quotient,
// groups the terms by parent simplex and permutation, and checks that every
// permuted term is bounded by C*eps in sup-norm while identity terms stay
// within C*eps of the lexicographic decomposition, entrywise.
EpsTermBoundReport eps_term_bound(const PeriodicTriangulation& T, const Rat& eps);

} // namespace torusrank

#endif
