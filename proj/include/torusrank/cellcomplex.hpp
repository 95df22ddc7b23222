/*
 * Regular simplicial cell complexes with ordered facet lists.
 *
 * A cell of dimension k stores k+1 facet ids, entry i being the face that
 * omits vertex i of the cell's (label-ordered) vertex tuple. Cells are NOT
 * determined by their vertex sets; vertex tuples are derived from the facet
 * structure and cached. Complexes are immutable once built.
 */
#ifndef TORUSRANK_CELLCOMPLEX_HPP
#define TORUSRANK_CELLCOMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "torusrank/exactmath.hpp"

namespace torusrank {

// The two-element field.
struct F2 {
    uint8_t v = 0;
    constexpr F2() = default;
    constexpr F2(int x) : v(uint8_t(x & 1)) {}
    F2 operator+(F2 o) const { return F2(v ^ o.v); }
    F2 operator-(F2 o) const { return F2(v ^ o.v); }
    F2 operator-() const { return *this; }
    F2 operator*(F2 o) const { return F2(v & o.v); }
    F2& operator+=(F2 o) { v ^= o.v; return *this; }
    bool operator==(const F2&) const = default;
    explicit operator bool() const { return v != 0; }
};

enum class Field { F2, Q };

// Sparse chain/cochain: cell id -> coefficient, absent means zero. Ordered
// map keeps every iteration and serialization deterministic.
template <class V>
struct SparseVec {
    int dim = 0;
    std::map<int, V> vals;

    V get(int id) const {
        auto it = vals.find(id);
        return it == vals.end() ? V(0) : it->second;
    }
    void set(int id, const V& v) {
        if (v == V(0))
            vals.erase(id);
        else
            vals[id] = v;
    }
    bool is_zero() const { return vals.empty(); }
};

using ChainF2 = SparseVec<F2>;
using ChainQ = SparseVec<Rat>;
using CochainF2 = SparseVec<F2>;
using CochainQ = SparseVec<Rat>;

struct Cell {
    int id = 0;
    int dim = 0;
    std::vector<int> facets;   // empty for vertices, else dim+1 ids
    std::vector<int> vertices; // derived: dim+1 vertex ids in stored order
};

// Input record for building a complex; order_label only for dim-0 cells.
struct CellSpec {
    int id = 0;
    int dim = 0;
    std::vector<int> facets;
    std::optional<long long> order_label;
};

enum class Classification { SimplicialComplex, SimplicialCellComplexOnly, Invalid };

std::string classification_name(Classification c);

struct ValidationResult {
    Classification kind = Classification::Invalid;
    std::string reason; // set when Invalid
};

class SimplicialCellComplex {
  public:
    // Checks referential integrity (ids unique, facets exist one dimension
    // down, facet counts) and derives vertex tuples. Structural soundness
    // beyond that is validate()'s job, so classifiable-but-broken complexes
    // (e.g. an edge glued to a single vertex twice) still build.
    static SimplicialCellComplex build(std::vector<CellSpec> specs);

    int top_dim() const { return int(by_dim_.size()) - 1; }
    long long cell_count() const { return (long long)cells_.size(); }
    long long count(int dim) const {
        return dim >= 0 && dim <= top_dim() ? (long long)by_dim_[dim].size() : 0;
    }

    const Cell& cell(int id) const { return cells_[index_of(id)]; }
    bool has_cell(int id) const { return id_to_index_.count(id) != 0; }

    // Cell ids of one dimension, ascending.
    const std::vector<int>& cells_of_dim(int dim) const { return by_dim_[dim]; }
    // Position of a cell inside its dimension's id-ordered list.
    int dim_index(int id) const { return dim_index_[index_of(id)]; }

    long long order_label(int vertex_id) const;
    bool has_order_label(int vertex_id) const { return labels_.count(vertex_id) != 0; }
    const std::map<int, long long>& order_labels() const { return labels_; }

    // Id of the face spanning vertex-tuple positions [lo, hi] of `id`.
    int face_by_positions(int id, int lo, int hi) const;

    ValidationResult validate() const;
    std::vector<long long> f_vector() const;
    long long euler_characteristic() const;

    // Boundary operator matrices: rows are (k-1)-cells, columns k-cells, in
    // dim-index order. Over Q the facet in slot i contributes (-1)^i.
    MatrixF2 boundary_matrix_f2(int k) const;
    MatrixQ boundary_matrix_q(int k) const;

    // Boundary of a chain.
    ChainF2 boundary(const ChainF2& c) const;
    ChainQ boundary(const ChainQ& c) const;

  private:
    int index_of(int id) const;

    std::vector<Cell> cells_;                 // sorted by (dim, id)
    std::unordered_map<int, int> id_to_index_;
    std::vector<std::vector<int>> by_dim_;    // ids per dimension, ascending
    std::vector<int> dim_index_;              // parallel to cells_
    std::map<int, long long> labels_;
};

} // namespace torusrank

#endif
