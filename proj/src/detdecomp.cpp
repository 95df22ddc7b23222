#include "torusrank/detdecomp.hpp"

#include <algorithm>
#include <functional>

namespace torusrank {

DetDecomposition decompose_from_quotient(const QuotientComplex& Q) {
    int n = Q.source.n;
    ChainQ z = fundamental_cycle_q(Q);
    DetDecomposition D;
    D.n = n;
    D.provenance = "quotient:n=" + std::to_string(n) + ",index=" + Q.lattice.index().str();
    for (int id : Q.complex.cells_of_dim(n)) {
        Rank1Term t;
        t.coeff = z.get(id);
        QPoint prev = Q.lift_point(id, 0);
        for (int i = 0; i < n; ++i) {
            QPoint cur = Q.lift_point(id, i + 1);
            std::vector<Rat> f(n);
            bool zero = true;
            for (int j = 0; j < n; ++j) {
                f[j] = cur[j] - prev[j];
                if (f[j] != 0)
                    zero = false;
            }
            if (zero)
                throw Error(ErrorKind::Degenerate,
                            "zero edge vector in lift of cell " + std::to_string(id));
            t.factors.push_back(std::move(f));
            prev = std::move(cur);
        }
        D.terms.push_back(std::move(t));
    }
    return D;
}

DetDecomposition decompose_periodic_lex(const PeriodicTriangulation& T) {
    validate_periodic(T);
    int n = T.n;
    DetDecomposition D;
    D.n = n;
    D.provenance = "lex:n=" + std::to_string(n) +
                   ",orbits=" + std::to_string(T.simplex_reps.size());
    for (const auto& simplex : T.simplex_reps) {
        std::vector<QPoint> pts;
        for (const auto& ref : simplex)
            pts.push_back(T.point_of(ref));
        std::sort(pts.begin(), pts.end(), point_lex_less);
        for (int i = 0; i < n; ++i)
            if (!point_lex_less(pts[i], pts[i + 1]))
                throw Error(ErrorKind::Degenerate,
                            "lexicographic tie: coincident vertices in a simplex");
        Rank1Term t;
        MatrixQ m(n, n);
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> f(n);
            for (int j = 0; j < n; ++j) {
                f[j] = pts[i + 1][j] - pts[i][j];
                m.at(i, j) = f[j];
            }
            t.factors.push_back(std::move(f));
        }
        Rat det = determinant(m);
        if (det == 0)
            throw Error(ErrorKind::Degenerate, "degenerate simplex in triangulation");
        t.coeff = det > 0 ? Rat(1) : Rat(-1);
        D.terms.push_back(std::move(t));
    }
    return D;
}

namespace {

long long int_pow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

// sign of the permutation j (0-based), or 0 when j is not a permutation
int levi_civita_sign(const std::vector<int>& j) {
    int n = int(j.size());
    std::vector<bool> seen(n, false);
    for (int x : j) {
        if (seen[x])
            return 0;
        seen[x] = true;
    }
    int inv = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (j[a] > j[b])
                ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

} // namespace

LeviCivitaResult verify_levi_civita(DetDecomposition& D, int cap) {
    int n = D.n;
    if (n < 1)
        throw Error(ErrorKind::Domain, "decomposition dimension must be positive");
    if (n > cap)
        throw Error(ErrorKind::Budget, "verification sweep over n^n entries exceeds cap n=" +
                                           std::to_string(cap));
    for (const auto& t : D.terms)
        if (int(t.factors.size()) != n ||
            std::any_of(t.factors.begin(), t.factors.end(),
                        [n](const auto& f) { return int(f.size()) != n; }))
            throw Error(ErrorKind::Shape, "rank-one term of wrong shape");

    long long N = int_pow(n, n);
    std::vector<Rat> acc(size_t(N), Rat(0));
    for (const auto& t : D.terms) {
        // accumulate coeff * outer product, pruning zero prefixes
        std::function<void(int, long long, const Rat&)> rec = [&](int i, long long idx,
                                                                  const Rat& prod) {
            if (i == n) {
                acc[size_t(idx)] += prod;
                return;
            }
            for (int j = 0; j < n; ++j) {
                if (t.factors[i][j] == 0)
                    continue;
                rec(i + 1, idx * n + j, prod * t.factors[i][j]);
            }
        };
        if (t.coeff != 0)
            rec(0, 0, t.coeff);
    }

    std::vector<int> digits(n, 0);
    for (long long idx = 0; idx < N; ++idx) {
        Rat expected(levi_civita_sign(digits));
        if (acc[size_t(idx)] != expected) {
            LeviCivitaResult r;
            r.exact_equal = false;
            r.mismatch_index = digits;
            r.got = acc[size_t(idx)];
            r.expected = expected;
            return r;
        }
        for (int p = n - 1; p >= 0; --p) {
            if (++digits[p] < n)
                break;
            digits[p] = 0;
        }
    }
    D.verified = true;
    LeviCivitaResult r;
    r.exact_equal = true;
    return r;
}

RankBoundReport rank_bound_report(int n, const DetDecomposition* D) {
    if (n < 1)
        throw Error(ErrorKind::Domain, "rank bound needs n >= 1");
    RankBoundReport rep;
    rep.n = n;
    Int num = 1;
    for (int i = 0; i < n - 1; ++i)
        num *= n;
    Int den = 1;
    for (int i = 2; i <= n - 1; ++i)
        den *= i;
    rep.lower_bound = Rat(num, den);
    rep.lower_ceiling = rat_ceil(rep.lower_bound);
    rep.leibniz_count = 1;
    for (int i = 2; i <= n; ++i)
        rep.leibniz_count *= i;
    if (D) {
        rep.decomposition_length = (long long)D->terms.size();
        rep.length_consistent = Int(*rep.decomposition_length) >= rep.lower_ceiling;
    }
    return rep;
}

EpsTermBoundReport eps_term_bound(const PeriodicTriangulation& T, const Rat& eps) {
    validate_periodic(T);
    if (!T.integer_coordinates())
        throw Error(ErrorKind::Domain, "eps bound requires integer vertex coordinates");
    int n = T.n;

    DetDecomposition lex = decompose_periodic_lex(T);
    EpsSubdivision sub = barycentric_subdivide_eps(T, eps);
    QuotientComplex Q = quotient(sub.tri, integer_lattice(n));
    DetDecomposition fine = decompose_from_quotient(Q);
    if (fine.terms.size() != sub.tri.simplex_reps.size() ||
        Q.top_orbit_source.size() != fine.terms.size())
        throw Error(ErrorKind::Verify, "subdivision decomposition has unexpected term count");

    EpsTermBoundReport rep;
    rep.n = n;
    rep.eps = eps;
    rep.terms_total = (long long)fine.terms.size();

    Int diam = 1;
    for (const auto& simplex : T.simplex_reps) {
        std::vector<QPoint> pts;
        for (const auto& ref : simplex)
            pts.push_back(T.point_of(ref));
        for (int i = 0; i < n; ++i) {
            Rat lo = pts[0][i], hi = pts[0][i];
            for (const auto& p : pts) {
                if (p[i] < lo)
                    lo = p[i];
                if (p[i] > hi)
                    hi = p[i];
            }
            Rat span = hi - lo;
            if (numerator(span) > diam)
                diam = numerator(span);
        }
    }
    rep.diameter = diam;
    Int c = 2 * n * diam;
    for (int i = 0; i < n - 1; ++i)
        c *= 3 * diam;
    rep.constant = Rat(c);
    rep.bound = rep.constant * eps;

    std::vector<int> identity(n + 1);
    for (int i = 0; i <= n; ++i)
        identity[i] = i;

    rep.max_nonidentity_sup = 0;
    rep.max_identity_dev = 0;
    rep.pass = true;
    std::vector<int> digits(n, 0);
    for (size_t k = 0; k < fine.terms.size(); ++k) {
        const auto& [parent, perm] = sub.provenance[size_t(Q.top_orbit_source[k])];
        const Rank1Term& t = fine.terms[k];
        if (perm != identity) {
            Rat sup = abs(t.coeff);
            for (int i = 0; i < n; ++i) {
                Rat m(0);
                for (int j = 0; j < n; ++j) {
                    Rat a = abs(t.factors[i][j]);
                    if (a > m)
                        m = a;
                }
                sup *= m;
            }
            if (sup > rep.max_nonidentity_sup)
                rep.max_nonidentity_sup = sup;
            if (sup > rep.bound && rep.pass) {
                rep.pass = false;
                rep.violation = "permuted term over bound at parent " + std::to_string(parent);
            }
        } else {
            const Rank1Term& l = lex.terms[size_t(parent)];
            std::fill(digits.begin(), digits.end(), 0);
            long long N = int_pow(n, n);
            for (long long idx = 0; idx < N; ++idx) {
                Rat a = t.coeff, b = l.coeff;
                for (int i = 0; i < n; ++i) {
                    a *= t.factors[i][digits[i]];
                    b *= l.factors[i][digits[i]];
                }
                Rat dev = abs(Rat(a - b));
                if (dev > rep.max_identity_dev)
                    rep.max_identity_dev = dev;
                if (dev > rep.bound && rep.pass) {
                    rep.pass = false;
                    rep.violation =
                        "identity term deviates from lex term at parent " + std::to_string(parent);
                }
                for (int p = n - 1; p >= 0; --p) {
                    if (++digits[p] < n)
                        break;
                    digits[p] = 0;
                }
            }
            ++rep.identity_terms;
        }
    }
    return rep;
}

} // namespace torusrank
