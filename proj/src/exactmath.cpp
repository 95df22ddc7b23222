#include "torusrank/exactmath.hpp"

#include <algorithm>
#include <cstdlib>

namespace torusrank {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b; // truncates toward zero
    if ((a % b) != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int rat_floor(const Rat& q) {
    return floor_div(numerator(q), denominator(q));
}

Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

std::string rat_to_string(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    if (d == 1)
        return n.str();
    return n.str() + "/" + d.str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty())
        throw Error(ErrorKind::Parse, "empty rational literal");
    auto check_int = [](const std::string& t) {
        if (t.empty())
            return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!check_int(s))
            throw Error(ErrorKind::Parse, "bad rational literal: " + s);
        return Rat(Int(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!check_int(p) || !check_int(q) || Int(q) == 0)
        throw Error(ErrorKind::Parse, "bad rational literal: " + s);
    return Rat(Int(p), Int(q));
}

MatrixZ::MatrixZ(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != size_t(rows) * cols)
        throw Error(ErrorKind::Shape, "entry count does not match rows*cols");
}

MatrixZ MatrixZ::identity(int n) {
    MatrixZ m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

std::vector<Int> MatrixZ::row(int r) const {
    std::vector<Int> out(cols_);
    for (int c = 0; c < cols_; ++c)
        out[c] = at(r, c);
    return out;
}

MatrixZ MatrixZ::mul(const MatrixZ& other) const {
    if (cols_ != other.rows_)
        throw Error(ErrorKind::Shape, "matrix product shape mismatch");
    MatrixZ out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0)
                continue;
            for (int j = 0; j < other.cols_; ++j)
                out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

void MatrixF2::xor_rows(int r, int s) {
    uint64_t* dst = &bits_[size_t(r) * words_];
    const uint64_t* src = &bits_[size_t(s) * words_];
    for (int w = 0; w < words_; ++w)
        dst[w] ^= src[w];
}

Int determinant(const MatrixZ& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::Shape, "determinant of non-square matrix");
    int n = m.rows();
    if (n == 0)
        return 1;

    // Bareiss fraction-free elimination: divisions are exact, intermediate
    // entries stay minors of the input.
    MatrixZ a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

Rat determinant(const MatrixQ& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::Shape, "determinant of non-square matrix");
    int n = m.rows();
    MatrixQ a = m;
    Rat det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            return Rat(0);
        if (piv != k) {
            for (int j = k; j < n; ++j)
                std::swap(a.at(k, j), a.at(piv, j));
            det = -det;
        }
        det *= a.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0)
                continue;
            Rat f = a.at(i, k) / a.at(k, k);
            for (int j = k; j < n; ++j)
                a.at(i, j) -= f * a.at(k, j);
        }
    }
    return det;
}

HnfResult hnf(const MatrixZ& m) {
    int r = m.rows(), n = m.cols();
    MatrixZ h = m;
    MatrixZ u = MatrixZ::identity(r);
    std::vector<int> pivots;

    auto add_row = [&](int dst, int src, const Int& q) {
        if (q == 0)
            return;
        for (int j = 0; j < n; ++j)
            h.at(dst, j) -= q * h.at(src, j);
        for (int j = 0; j < r; ++j)
            u.at(dst, j) -= q * u.at(src, j);
    };
    auto swap_rows = [&](int a, int b) {
        if (a == b)
            return;
        for (int j = 0; j < n; ++j)
            std::swap(h.at(a, j), h.at(b, j));
        for (int j = 0; j < r; ++j)
            std::swap(u.at(a, j), u.at(b, j));
    };
    auto negate_row = [&](int i) {
        for (int j = 0; j < n; ++j)
            h.at(i, j) = -h.at(i, j);
        for (int j = 0; j < r; ++j)
            u.at(i, j) = -u.at(i, j);
    };

    int pr = 0;
    for (int col = 0; col < n && pr < r; ++col) {
        // Euclidean reduction in this column below the pivot row.
        while (true) {
            int best = -1;
            for (int i = pr; i < r; ++i) {
                if (h.at(i, col) == 0)
                    continue;
                if (best < 0 || abs(h.at(i, col)) < abs(h.at(best, col)))
                    best = i;
            }
            if (best < 0)
                break;
            swap_rows(pr, best);
            bool clean = true;
            for (int i = pr + 1; i < r; ++i) {
                if (h.at(i, col) == 0)
                    continue;
                add_row(i, pr, floor_div(h.at(i, col), h.at(pr, col)));
                if (h.at(i, col) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h.at(pr, col) == 0)
            continue;
        if (h.at(pr, col) < 0)
            negate_row(pr);
        for (int i = 0; i < pr; ++i)
            add_row(i, pr, floor_div(h.at(i, col), h.at(pr, col)));
        pivots.push_back(col);
        ++pr;
    }
    if (pr < r)
        throw Error(ErrorKind::Degenerate, "hnf: input is rank deficient");
    return HnfResult{std::move(h), std::move(u), std::move(pivots)};
}

int rank(const MatrixF2& m) {
    MatrixF2 a = m;
    int rk = 0;
    for (int col = 0; col < a.cols() && rk < a.rows(); ++col) {
        int piv = -1;
        for (int i = rk; i < a.rows(); ++i)
            if (a.get(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != rk) {
            // swap by xor trick would disturb; do a triple xor swap
            a.xor_rows(rk, piv);
            a.xor_rows(piv, rk);
            a.xor_rows(rk, piv);
        }
        for (int i = 0; i < a.rows(); ++i)
            if (i != rk && a.get(i, col))
                a.xor_rows(i, rk);
        ++rk;
    }
    return rk;
}

int rank(const MatrixQ& m) {
    MatrixQ a = m;
    int rk = 0;
    for (int col = 0; col < a.cols() && rk < a.rows(); ++col) {
        int piv = -1;
        for (int i = rk; i < a.rows(); ++i)
            if (a.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != rk)
            for (int j = col; j < a.cols(); ++j)
                std::swap(a.at(rk, j), a.at(piv, j));
        for (int i = rk + 1; i < a.rows(); ++i) {
            if (a.at(i, col) == 0)
                continue;
            Rat f = a.at(i, col) / a.at(rk, col);
            for (int j = col; j < a.cols(); ++j)
                a.at(i, j) -= f * a.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

std::optional<std::vector<Int>> solve_against_hnf(const MatrixZ& h,
                                                  const std::vector<int>& pivot_cols,
                                                  const std::vector<Int>& v) {
    int r = h.rows(), n = h.cols();
    if (int(v.size()) != n)
        throw Error(ErrorKind::Shape, "solve: vector length mismatch");
    std::vector<Int> y(r, 0);
    std::vector<Int> res = v;
    for (int i = 0; i < r; ++i) {
        int c = pivot_cols[i];
        const Int& p = h.at(i, c);
        if (res[c] % p != 0)
            return std::nullopt;
        y[i] = res[c] / p;
        if (y[i] != 0)
            for (int j = 0; j < n; ++j)
                res[j] -= y[i] * h.at(i, j);
    }
    for (int j = 0; j < n; ++j)
        if (res[j] != 0)
            return std::nullopt;
    return y;
}

std::optional<std::vector<Int>> solve_integer(const MatrixZ& m, const std::vector<Int>& v) {
    HnfResult hr = hnf(m);
    auto y = solve_against_hnf(hr.h, hr.pivot_cols, v);
    if (!y)
        return std::nullopt;
    // x * m = v with x = y * u, since h = u * m.
    int r = m.rows();
    std::vector<Int> x(r, 0);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i)
            x[j] += (*y)[i] * hr.u.at(i, j);
    return x;
}

} // namespace torusrank
