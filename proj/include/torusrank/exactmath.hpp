/*
 * Exact integer, rational, and GF(2) matrix kernels.
 *
 * Everything here is arbitrary precision and deterministic: integer
 * determinants via fraction-free (Bareiss) elimination, row-style Hermite
 * normal form with a unimodular transform, exact rank over Q and GF(2),
 * and integer row-combination solving through the HNF.
 */
#ifndef TORUSRANK_EXACTMATH_HPP
#define TORUSRANK_EXACTMATH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torusrank/errors.hpp"

namespace torusrank {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor division and non-negative remainder for arbitrary-precision integers.
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

// Floor of an exact rational.
Int rat_floor(const Rat& q);

// Smallest integer >= q.
Int rat_ceil(const Rat& q);

// Canonical "p/q" form, "p" when the denominator is 1.
std::string rat_to_string(const Rat& q);

// Parses "p" or "p/q"; throws ErrorKind::Parse on anything else.
Rat rat_from_string(const std::string& s);

// Dense row-major integer matrix.
class MatrixZ {
  public:
    MatrixZ() : rows_(0), cols_(0) {}
    MatrixZ(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
    MatrixZ(int rows, int cols, std::vector<Int> entries);

    static MatrixZ identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Int& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }
    Int& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }

    std::vector<Int> row(int r) const;

    MatrixZ mul(const MatrixZ& other) const;

    bool operator==(const MatrixZ& other) const = default;

  private:
    int rows_, cols_;
    std::vector<Int> e_;
};

// Dense row-major rational matrix; entries stay reduced with positive
// denominators (the representation canonicalizes on every operation).
class MatrixQ {
  public:
    MatrixQ() : rows_(0), cols_(0) {}
    MatrixQ(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rat& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }
    Rat& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }

  private:
    int rows_, cols_;
    std::vector<Rat> e_;
};

// GF(2) matrix with bit-packed rows.
class MatrixF2 {
  public:
    MatrixF2() : rows_(0), cols_(0), words_(0) {}
    MatrixF2(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          bits_(size_t(rows) * words_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (bits_[size_t(r) * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(int r, int c, bool v) {
        uint64_t& w = bits_[size_t(r) * words_ + c / 64];
        uint64_t m = uint64_t(1) << (c % 64);
        if (v)
            w |= m;
        else
            w &= ~m;
    }
    void flip(int r, int c) { bits_[size_t(r) * words_ + c / 64] ^= uint64_t(1) << (c % 64); }

    // r ^= s, as row operations.
    void xor_rows(int r, int s);

  private:
    int rows_, cols_, words_;
    std::vector<uint64_t> bits_;
};

// Exact determinant of a square integer matrix by fraction-free elimination.
// Throws ErrorKind::Shape if the input is not square.
Int determinant(const MatrixZ& m);

// Exact determinant of a square rational matrix (Gaussian elimination).
Rat determinant(const MatrixQ& m);

struct HnfResult {
    MatrixZ h; // row-style Hermite normal form of the input
    MatrixZ u; // unimodular transform with h = u * m
    std::vector<int> pivot_cols;
};

// Row-style HNF of a full-row-rank integer matrix: h = u*m with u unimodular,
// h in echelon form with positive pivots and entries above each pivot reduced
// into [0, pivot). Throws ErrorKind::Degenerate on rank-deficient input.
HnfResult hnf(const MatrixZ& m);

// Exact rank by elimination over the respective field.
int rank(const MatrixF2& m);
int rank(const MatrixQ& m);

// Solves x * m = v over the integers (v as a row-combination of m's rows).
// Requires m full row rank; returns std::nullopt when no integer solution
// exists. Throws ErrorKind::Shape on a length mismatch.
std::optional<std::vector<Int>> solve_integer(const MatrixZ& m, const std::vector<Int>& v);

// Same solve against a matrix already in HNF with known pivot columns.
std::optional<std::vector<Int>> solve_against_hnf(const MatrixZ& h,
                                                  const std::vector<int>& pivot_cols,
                                                  const std::vector<Int>& v);

} // namespace torusrank

#endif
