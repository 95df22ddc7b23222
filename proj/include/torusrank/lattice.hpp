/*
 * Full-rank sublattices of Z^n: membership through the cached Hermite form,
 * the named generator families (all-ones-plus-identity and the power-of-two
 * column), forbidden-vector sweeps, and exhaustive duplicate-free sublattice
 * enumeration in HNF coordinates.
 */
#ifndef TORUSRANK_LATTICE_HPP
#define TORUSRANK_LATTICE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torusrank/exactmath.hpp"

namespace torusrank {

// Entry alphabets for forbidden-vector sweeps.
enum class VectorFamily { ZeroOne, ZeroOneTwo, PlusMinusOne };

std::string family_name(VectorFamily f);
std::vector<Int> family_alphabet(VectorFamily f);

class Lattice {
  public:
    // Basis rows must span a full-rank sublattice of Z^n.
    explicit Lattice(MatrixZ basis);

    int n() const { return n_; }
    const MatrixZ& basis() const { return basis_; }
    const MatrixZ& hnf_basis() const { return hnf_.h; }
    const std::vector<int>& pivot_cols() const { return hnf_.pivot_cols; }

    // [Z^n : L], the absolute determinant of the basis.
    const Int& index() const { return index_; }

    bool contains(const std::vector<Int>& v) const;

    // Canonical coset representative of v in Z^n / L: each coordinate i is
    // reduced into [0, hnf[i][i]) by integer back-substitution.
    std::vector<Int> residue(const std::vector<Int>& v) const;

    // All canonical residues, in lexicographic order of the reduced box.
    std::vector<std::vector<Int>> residues() const;

  private:
    int n_;
    MatrixZ basis_;
    HnfResult hnf_;
    Int index_;
};

struct ForbiddenVectorReport {
    VectorFamily family;
    std::vector<std::vector<Int>> witnesses; // nonzero family vectors inside L
    Int vectors_checked = 0;

    bool clean() const { return witnesses.empty(); }
};

// The lattice generated by the n x n matrix with 2 on the diagonal and 1
// elsewhere: integer vectors with coordinate sum divisible by n+1. Index n+1.
Lattice matrix_A(int n);

// The lattice with identity upper-left block, last column
// (-2, -4, ..., -2^(n-1), 2^(n+1)-1). Index 2^(n+1)-1. Requires n >= 2.
Lattice matrix_B(int n);

// Enumerates every nonzero vector with entries in the family's alphabet and
// reports the ones lying in L.
ForbiddenVectorReport forbidden_vector_check(const Lattice& L, VectorFamily family);

// Streams one HNF representative per sublattice of Z^n of index k to `sink`;
// stops early if the sink returns false. Returns the number delivered.
long long enumerate_sublattices(int n, const Int& k,
                                const std::function<bool(const Lattice&)>& sink);

// Classical count of index-k sublattices of Z^n (sum over diagonal
// factorizations), used to cross-check the enumeration.
Int sublattice_count(int n, const Int& k);

struct IndexCensusEntry {
    Int index;
    long long lattices = 0;
    long long passing = 0;
};

struct MinIndexSearchResult {
    std::optional<Int> smallest_passing_index;
    std::vector<IndexCensusEntry> census;
    long long membership_tests = 0;
};

// Scans indices 1..max_index over all sublattices of Z^n and returns the
// first index admitting a lattice with no nonzero vector from any listed
// family. Throws ErrorKind::Budget once `budget` membership tests have been
// spent, naming the offending index.
MinIndexSearchResult min_index_search(int n, const std::vector<VectorFamily>& families,
                                      const Int& max_index,
                                      long long budget = 10'000'000);

} // namespace torusrank

#endif
