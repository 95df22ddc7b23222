#include "torusrank/lattice.hpp"

#include <algorithm>

namespace torusrank {

std::string family_name(VectorFamily f) {
    switch (f) {
    case VectorFamily::ZeroOne:
        return "{0,1}";
    case VectorFamily::ZeroOneTwo:
        return "{0,1,2}";
    case VectorFamily::PlusMinusOne:
        return "{-1,0,1}";
    }
    return "?";
}

std::vector<Int> family_alphabet(VectorFamily f) {
    switch (f) {
    case VectorFamily::ZeroOne:
        return {Int(0), Int(1)};
    case VectorFamily::ZeroOneTwo:
        return {Int(0), Int(1), Int(2)};
    case VectorFamily::PlusMinusOne:
        return {Int(-1), Int(0), Int(1)};
    }
    return {};
}

Lattice::Lattice(MatrixZ basis) : n_(basis.cols()), basis_(std::move(basis)), hnf_(hnf(basis_)) {
    if (basis_.rows() != basis_.cols())
        throw Error(ErrorKind::Shape, "lattice basis must be square");
    index_ = abs(determinant(basis_));
    if (index_ == 0)
        throw Error(ErrorKind::Degenerate, "lattice basis is singular");
}

bool Lattice::contains(const std::vector<Int>& v) const {
    if (int(v.size()) != n_)
        throw Error(ErrorKind::Shape, "membership vector length mismatch");
    return solve_against_hnf(hnf_.h, hnf_.pivot_cols, v).has_value();
}

std::vector<Int> Lattice::residue(const std::vector<Int>& v) const {
    if (int(v.size()) != n_)
        throw Error(ErrorKind::Shape, "residue vector length mismatch");
    std::vector<Int> r = v;
    // Full-rank HNF is upper triangular with pivot i in column i, so row i is
    // the only remaining row touching coordinate i once rows < i are done.
    for (int i = 0; i < n_; ++i) {
        Int q = floor_div(r[i], hnf_.h.at(i, i));
        if (q != 0)
            for (int j = i; j < n_; ++j)
                r[j] -= q * hnf_.h.at(i, j);
    }
    return r;
}

std::vector<std::vector<Int>> Lattice::residues() const {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(n_, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n_) {
            out.push_back(cur);
            return;
        }
        for (Int v = 0; v < hnf_.h.at(i, i); ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

Lattice matrix_A(int n) {
    if (n < 1)
        throw Error(ErrorKind::Domain, "matrix_A requires n >= 1");
    MatrixZ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = (i == j) ? 2 : 1;
    return Lattice(std::move(m));
}

Lattice matrix_B(int n) {
    if (n < 2)
        throw Error(ErrorKind::Domain, "matrix_B requires n >= 2");
    MatrixZ m(n, n);
    for (int i = 0; i < n - 1; ++i) {
        m.at(i, i) = 1;
        m.at(i, n - 1) = -(Int(1) << (i + 1));
    }
    m.at(n - 1, n - 1) = (Int(1) << (n + 1)) - 1;
    return Lattice(std::move(m));
}

namespace {

// Visits every nonzero vector with entries drawn from the alphabet; the
// visitor returns false to stop early. Returns false when stopped.
bool for_each_family_vector(int n, const std::vector<Int>& alphabet,
                            const std::function<bool(const std::vector<Int>&)>& fn) {
    std::vector<int> digits(n, 0);
    std::vector<Int> v(n, alphabet[0]);
    while (true) {
        bool nonzero = std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; });
        if (nonzero && !fn(v))
            return false;
        int i = n - 1;
        while (i >= 0 && digits[i] == int(alphabet.size()) - 1) {
            digits[i] = 0;
            v[i] = alphabet[0];
            --i;
        }
        if (i < 0)
            return true;
        ++digits[i];
        v[i] = alphabet[digits[i]];
    }
}

} // namespace

ForbiddenVectorReport forbidden_vector_check(const Lattice& L, VectorFamily family) {
    ForbiddenVectorReport report{family, {}, 0};
    auto alphabet = family_alphabet(family);
    for_each_family_vector(L.n(), alphabet, [&](const std::vector<Int>& v) {
        ++report.vectors_checked;
        if (L.contains(v))
            report.witnesses.push_back(v);
        return true;
    });
    return report;
}

namespace {

// Ordered factorizations of k into n positive diagonal entries, then all
// above-pivot entries reduced modulo their column pivot.
void enumerate_diagonals(int n, const Int& k, std::vector<Int>& diag, int pos,
                         const std::function<bool(const std::vector<Int>&)>& sink, bool& stop) {
    if (stop)
        return;
    if (pos == n) {
        if (k == 1)
            if (!sink(diag))
                stop = true;
        return;
    }
    for (Int d = 1; d <= k; ++d) {
        if (k % d != 0)
            continue;
        diag[pos] = d;
        enumerate_diagonals(n, k / d, diag, pos + 1, sink, stop);
        if (stop)
            return;
    }
}

} // namespace

long long enumerate_sublattices(int n, const Int& k,
                                const std::function<bool(const Lattice&)>& sink) {
    if (k < 1)
        throw Error(ErrorKind::Domain, "sublattice index must be positive");
    long long delivered = 0;
    bool stop = false;
    std::vector<Int> diag(n);
    enumerate_diagonals(
        n, k, diag, 0,
        [&](const std::vector<Int>& d) {
            // odometer over above-diagonal entries h[i][j] in [0, d[j])
            MatrixZ h(n, n);
            for (int i = 0; i < n; ++i)
                h.at(i, i) = d[i];
            std::vector<std::pair<int, int>> free_pos;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (d[j] > 1)
                        free_pos.emplace_back(i, j);
            std::vector<Int> vals(free_pos.size(), 0);
            while (true) {
                for (size_t t = 0; t < free_pos.size(); ++t)
                    h.at(free_pos[t].first, free_pos[t].second) = vals[t];
                ++delivered;
                if (!sink(Lattice(h)))
                    return false;
                int t = int(free_pos.size()) - 1;
                while (t >= 0 && vals[t] == d[free_pos[t].second] - 1)
                    vals[t--] = 0;
                if (t < 0)
                    break;
                ++vals[t];
            }
            return true;
        },
        stop);
    return delivered;
}

Int sublattice_count(int n, const Int& k) {
    // sum over ordered factorizations d_1 ... d_n = k of prod d_i^(i-1)
    Int total = 0;
    std::vector<Int> diag(n);
    bool stop = false;
    enumerate_diagonals(
        n, k, diag, 0,
        [&](const std::vector<Int>& d) {
            Int term = 1;
            for (int i = 0; i < n; ++i)
                for (int p = 0; p < i; ++p)
                    term *= d[i];
            total += term;
            return true;
        },
        stop);
    return total;
}

MinIndexSearchResult min_index_search(int n, const std::vector<VectorFamily>& families,
                                      const Int& max_index, long long budget) {
    MinIndexSearchResult result;
    for (Int k = 1; k <= max_index; ++k) {
        IndexCensusEntry entry{k, 0, 0};
        bool found_here = false;
        enumerate_sublattices(n, k, [&](const Lattice& L) {
            ++entry.lattices;
            bool clean = true;
            for (auto fam : families) {
                bool fam_clean =
                    for_each_family_vector(n, family_alphabet(fam), [&](const std::vector<Int>& v) {
                        if (++result.membership_tests > budget)
                            throw Error(ErrorKind::Budget,
                                        "min_index_search budget exceeded at index " + k.str());
                        return !L.contains(v); // stop on the first witness
                    });
                if (!fam_clean) {
                    clean = false;
                    break;
                }
            }
            if (clean) {
                ++entry.passing;
                found_here = true;
            }
            return true;
        });
        result.census.push_back(entry);
        if (found_here) {
            result.smallest_passing_index = k;
            break;
        }
    }
    return result;
}

} // namespace torusrank
