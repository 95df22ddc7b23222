#include "torusrank/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace torusrank {

namespace {

template <class V>
SparseVec<V> coboundary_impl(const SimplicialCellComplex& X, const SparseVec<V>& a) {
    if (a.dim >= X.top_dim())
        throw Error(ErrorKind::Domain, "coboundary exceeds top dimension");
    SparseVec<V> out;
    out.dim = a.dim + 1;
    for (int id : X.cells_of_dim(a.dim + 1)) {
        const Cell& c = X.cell(id);
        V v(0);
        for (int i = 0; i <= c.dim; ++i) {
            V term = a.get(c.facets[i]);
            v += (i % 2 == 0) ? term : V(-term);
        }
        out.set(id, v);
    }
    return out;
}

template <class V>
V evaluate_impl(const SparseVec<V>& a, const SparseVec<V>& c) {
    if (a.dim != c.dim)
        throw Error(ErrorKind::Shape, "cochain/chain dimension mismatch");
    V total(0);
    for (const auto& [id, coeff] : c.vals)
        total += a.get(id) * coeff;
    return total;
}

template <class V>
SparseVec<V> cup_impl(const SimplicialCellComplex& X, const std::vector<SparseVec<V>>& as) {
    if (as.empty())
        throw Error(ErrorKind::Domain, "cup product of zero cochains");
    int D = 0;
    for (const auto& a : as)
        D += a.dim;
    if (D > X.top_dim())
        throw Error(ErrorKind::Domain, "cup dimension exceeds top dimension");
    SparseVec<V> out;
    out.dim = D;
    for (int id : X.cells_of_dim(D)) {
        V v(1);
        int lo = 0;
        for (const auto& a : as) {
            int hi = lo + a.dim;
            v = v * a.get(X.face_by_positions(id, lo, hi));
            if (v == V(0))
                break;
            lo = hi;
        }
        out.set(id, v);
    }
    return out;
}

} // namespace

CochainF2 coboundary(const SimplicialCellComplex& X, const CochainF2& a) {
    return coboundary_impl(X, a);
}
CochainQ coboundary(const SimplicialCellComplex& X, const CochainQ& a) {
    return coboundary_impl(X, a);
}

F2 evaluate(const CochainF2& a, const ChainF2& c) { return evaluate_impl(a, c); }
Rat evaluate(const CochainQ& a, const ChainQ& c) { return evaluate_impl(a, c); }

CochainF2 cup(const SimplicialCellComplex& X, const std::vector<CochainF2>& as) {
    return cup_impl(X, as);
}
CochainQ cup(const SimplicialCellComplex& X, const std::vector<CochainQ>& as) {
    return cup_impl(X, as);
}

std::vector<CochainQ> dx_cocycles(const QuotientComplex& Q) {
    int n = Q.source.n;
    std::vector<CochainQ> dxs(n);
    for (auto& d : dxs)
        d.dim = 1;
    for (int id : Q.complex.cells_of_dim(1)) {
        QPoint a = Q.lift_point(id, 0);
        QPoint b = Q.lift_point(id, 1);
        for (int i = 0; i < n; ++i)
            dxs[i].set(id, b[i] - a[i]);
    }
    return dxs;
}

std::vector<CochainF2> dx_cocycles_mod2(const QuotientComplex& Q) {
    auto dxs = dx_cocycles(Q);
    std::vector<CochainF2> out(dxs.size());
    for (size_t i = 0; i < dxs.size(); ++i) {
        out[i].dim = 1;
        for (const auto& [id, v] : dxs[i].vals) {
            if (denominator(v) != 1)
                throw Error(ErrorKind::Domain, "dx mod 2 needs integer lift coordinates");
            out[i].set(id, F2(int(floor_mod(numerator(v), Int(2)))));
        }
    }
    return out;
}

int betti_f2(const SimplicialCellComplex& X, int k) {
    if (k < 0 || k > X.top_dim())
        return 0;
    long long fk = X.count(k);
    int r_up = (k + 1 <= X.top_dim()) ? rank(X.boundary_matrix_f2(k + 1)) : 0;
    int r_down = (k >= 1) ? rank(X.boundary_matrix_f2(k)) : 0;
    return int(fk - r_up - r_down);
}

int betti_q(const SimplicialCellComplex& X, int k) {
    if (k < 0 || k > X.top_dim())
        return 0;
    long long fk = X.count(k);
    int r_up = (k + 1 <= X.top_dim()) ? rank(X.boundary_matrix_q(k + 1)) : 0;
    int r_down = (k >= 1) ? rank(X.boundary_matrix_q(k)) : 0;
    return int(fk - r_up - r_down);
}

namespace {

// Packed GF(2) row vectors for kernel/quotient computations.
struct BitRows {
    int cols = 0;
    int words = 0;
    std::vector<std::vector<uint64_t>> rows;
    std::vector<int> pivots; // pivot column of each stored row

    explicit BitRows(int c) : cols(c), words((c + 63) / 64) {}

    static int leading(const std::vector<uint64_t>& v) {
        for (size_t w = 0; w < v.size(); ++w)
            if (v[w])
                return int(w * 64 + std::countr_zero(v[w]));
        return -1;
    }

    // Reduces v by the stored echelon rows; returns true (and absorbs v)
    // when a nonzero remainder extends the span.
    bool reduce_and_insert(std::vector<uint64_t> v) {
        while (true) {
            int lead = leading(v);
            if (lead < 0)
                return false;
            bool hit = false;
            for (size_t i = 0; i < rows.size(); ++i)
                if (pivots[i] == lead) {
                    for (int w = 0; w < words; ++w)
                        v[w] ^= rows[i][w];
                    hit = true;
                    break;
                }
            if (!hit) {
                rows.push_back(std::move(v));
                pivots.push_back(lead);
                return true;
            }
        }
    }
};

} // namespace

std::vector<CochainF2> cohomology_basis_f2(const SimplicialCellComplex& X, int k) {
    if (k < 0 || k > X.top_dim())
        throw Error(ErrorKind::Domain, "cohomology degree out of range");
    int fk = int(X.count(k));
    const auto& kcells = X.cells_of_dim(k);

    // ker(delta_k): transpose of the (k+1)-boundary gives the coboundary map
    int fu = (k + 1 <= X.top_dim()) ? int(X.count(k + 1)) : 0;
    MatrixF2 up(fu, fk);
    if (fu > 0) {
        MatrixF2 b = X.boundary_matrix_f2(k + 1);
        for (int r = 0; r < fk; ++r)
            for (int c = 0; c < fu; ++c)
                if (b.get(r, c))
                    up.set(c, r, true);
    }
    // RREF of `up` to read off the kernel with the lowest cell ids as the
    // leading free coordinates
    int rk = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < fk && rk < fu; ++col) {
        int piv = -1;
        for (int i = rk; i < fu; ++i)
            if (up.get(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != rk) {
            up.xor_rows(rk, piv);
            up.xor_rows(piv, rk);
            up.xor_rows(rk, piv);
        }
        for (int i = 0; i < fu; ++i)
            if (i != rk && up.get(i, col))
                up.xor_rows(i, rk);
        pivot_col.push_back(col);
        ++rk;
    }
    std::vector<bool> is_pivot(fk, false);
    for (int c : pivot_col)
        is_pivot[c] = true;

    // image of delta_{k-1}: coboundaries of the (k-1)-cell indicators
    BitRows image(fk);
    if (k >= 1) {
        MatrixF2 down = X.boundary_matrix_f2(k); // f_{k-1} x f_k
        for (int r = 0; r < int(X.count(k - 1)); ++r) {
            std::vector<uint64_t> v((fk + 63) / 64, 0);
            for (int c = 0; c < fk; ++c)
                if (down.get(r, c))
                    v[c / 64] ^= uint64_t(1) << (c % 64);
            image.reduce_and_insert(std::move(v));
        }
    }

    std::vector<CochainF2> basis;
    for (int free = 0; free < fk; ++free) {
        if (is_pivot[free])
            continue;
        // kernel vector with 1 at this free column
        std::vector<uint64_t> v((fk + 63) / 64, 0);
        v[free / 64] ^= uint64_t(1) << (free % 64);
        for (int i = 0; i < rk; ++i)
            if (up.get(i, free))
                v[pivot_col[i] / 64] ^= uint64_t(1) << (pivot_col[i] % 64);
        std::vector<uint64_t> vcopy = v;
        if (image.reduce_and_insert(std::move(vcopy))) {
            CochainF2 a;
            a.dim = k;
            for (int c = 0; c < fk; ++c)
                if ((v[c / 64] >> (c % 64)) & 1)
                    a.set(kcells[c], F2(1));
            basis.push_back(std::move(a));
        }
    }
    return basis;
}

PerturbationReport theorem1_witness_check(const SimplicialCellComplex& X,
                                          const std::vector<CochainF2>& cocycles,
                                          const Theorem1Options& opts) {
    int nf = int(cocycles.size());
    if (nf == 0)
        throw Error(ErrorKind::Domain, "no cocycles given");
    int D = 0;
    for (const auto& a : cocycles)
        D += a.dim;
    if (D > X.top_dim())
        throw Error(ErrorKind::Domain, "cup dimension exceeds top dimension");

    // subset sizes per factor: the (d_i - 1)-cells
    std::vector<int> m(nf);
    for (int i = 0; i < nf; ++i) {
        if (cocycles[i].dim < 1)
            throw Error(ErrorKind::Domain, "perturbation needs cocycle dimension >= 1");
        m[i] = int(X.count(cocycles[i].dim - 1));
    }

    long long total = 1;
    if (opts.exhaustive) {
        long long total_bits = 0;
        for (int i = 0; i < nf; ++i)
            total_bits += m[i];
        if (total_bits >= 63 || (1ll << total_bits) > opts.tuple_cap)
            throw Error(ErrorKind::Budget,
                        "exhaustive perturbation sweep exceeds the tuple cap; "
                        "use sampled mode");
        total = 1ll << total_bits;
    } else {
        total = opts.sample_count;
    }

    const auto& top_cells = X.cells_of_dim(D);
    long long ft = (long long)top_cells.size();

    // per top cell and factor: base cocycle value on the segment face and the
    // incidence mask of that face's facets among the (d_i - 1)-cells
    int maxm = *std::max_element(m.begin(), m.end());
    int words = (std::max(maxm, 1) + 63) / 64;
    std::vector<std::vector<uint8_t>> base_val(top_cells.size(), std::vector<uint8_t>(nf));
    std::vector<std::vector<std::vector<uint64_t>>> inc(
        top_cells.size(), std::vector<std::vector<uint64_t>>(nf, std::vector<uint64_t>(words, 0)));
    for (size_t t = 0; t < top_cells.size(); ++t) {
        int lo = 0;
        for (int i = 0; i < nf; ++i) {
            int hi = lo + cocycles[i].dim;
            int fid = X.face_by_positions(top_cells[t], lo, hi);
            base_val[t][i] = cocycles[i].get(fid).v;
            const Cell& f = X.cell(fid);
            for (int fc : f.facets) {
                int pos = X.dim_index(fc);
                inc[t][i][pos / 64] ^= uint64_t(1) << (pos % 64);
            }
            lo = hi;
        }
    }

    PerturbationReport rep;
    rep.total_tuples = total;
    rep.n_factors = nf;
    rep.top_cell_count = ft;
    rep.exhaustive = opts.exhaustive;
    rep.witness_counts.reserve(size_t(total));
    std::vector<uint8_t> union_hit(top_cells.size(), 0);

    std::mt19937_64 rng(opts.seed);
    std::vector<std::vector<uint64_t>> S(nf, std::vector<uint64_t>(words, 0));
    for (long long t = 0; t < total; ++t) {
        if (opts.exhaustive) {
            long long rest = t;
            for (int i = 0; i < nf; ++i) {
                S[i].assign(words, 0);
                S[i][0] = uint64_t(rest) & ((uint64_t(1) << m[i]) - 1);
                rest >>= m[i];
            }
        } else {
            for (int i = 0; i < nf; ++i) {
                for (int w = 0; w < words; ++w)
                    S[i][w] = rng();
                int used = m[i] % 64;
                if (m[i] < words * 64 && used != 0)
                    S[i][m[i] / 64] &= (uint64_t(1) << used) - 1;
                for (int w = m[i] / 64 + 1; w < words; ++w)
                    S[i][w] = 0;
            }
        }
        long long witnesses = 0;
        for (size_t c = 0; c < top_cells.size(); ++c) {
            uint8_t v = 1;
            for (int i = 0; i < nf && v; ++i) {
                int par = 0;
                for (int w = 0; w < words; ++w)
                    par ^= std::popcount(S[i][w] & inc[c][i][w]) & 1;
                v = uint8_t(base_val[c][i] ^ par);
            }
            if (v) {
                ++witnesses;
                union_hit[c] = 1;
            }
        }
        rep.witness_counts.push_back(witnesses);
    }
    rep.min_witnesses = rep.witness_counts.empty()
                            ? 0
                            : *std::min_element(rep.witness_counts.begin(),
                                                rep.witness_counts.end());
    rep.witness_union_size = std::count(union_hit.begin(), union_hit.end(), uint8_t(1));
    rep.all_tuples_witnessed = !rep.witness_counts.empty() && rep.min_witnesses >= 1;
    rep.meets_pow2_bound = nf < 63 && ft >= (1ll << nf);
    return rep;
}

} // namespace torusrank
