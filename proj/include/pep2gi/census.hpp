#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pep2gi/code.hpp"

namespace pep2gi {

/// Exact arbitrary-precision count; q^{k(n-k)} terms overflow 64 bits
/// quickly even at desk scale.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount big_pow(const BigCount& base, std::uint64_t e) {
    BigCount r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// an n-dimensional space over a field with q elements. Zero when k is out
/// of range.
inline BigCount gaussian_binomial(long n, long k, const BigCount& q) {
    if (k < 0 || k > n) return 0;
    BigCount num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= big_pow(q, static_cast<std::uint64_t>(n - i)) - 1;
        den *= big_pow(q, static_cast<std::uint64_t>(i + 1)) - 1;
    }
    return num / den;
}

/// Number of zeros of the diagonal quadratic form sum_i d_i x_i^2 over
/// F_q^n (q odd, all d_i nonzero), by the classical character-sum count:
/// q^{n-1} for odd n and q^{n-1} + chi((-1)^{n/2} det)(q-1)q^{(n-2)/2}
/// for even n.
inline BigCount weil_count(const std::vector<FElem>& diag, const Field& f) {
    if (!f.odd_char()) throw Error("weil count: odd q required");
    const long n = static_cast<long>(diag.size());
    if (n == 0) throw Error("weil count: empty form");
    FElem det = 1;
    for (const auto d : diag) {
        if (d == 0) throw Error("weil count: degenerate diagonal entry");
        det = f.mul(det, d);
    }
    const BigCount q = f.q();
    if (n % 2 == 1) return big_pow(q, n - 1);
    const FElem sign_arg = (n / 2) % 2 ? f.mul(f.neg(1), det) : det;
    const int s = f.chi(sign_arg);
    return big_pow(q, n - 1) + s * (q - 1) * big_pow(q, (n - 2) / 2);
}

/// Number of x in F_q^n with (x, x) = 0 and nonzero coordinate sum (q odd,
/// n >= 2). Three branches according to whether the characteristic divides
/// n and the parity of n.
inline BigCount count_K(long n, const Field& f) {
    if (!f.odd_char()) throw Error("count K: odd q required");
    if (n < 2) throw Error("count K: n >= 2 required");
    const BigCount q = f.q();
    const BigCount base = big_pow(q, n - 2) * (q - 1);
    if (n % static_cast<long>(f.p()) == 0) return base;
    if (n % 2 == 1) {
        FElem arg = f.from_int(static_cast<std::uint64_t>(n));
        if (((n - 1) / 2) % 2) arg = f.mul(arg, f.neg(1));
        return base - f.chi(arg) * (q - 1) * big_pow(q, (n - 3) / 2);
    }
    const FElem arg = (n / 2) % 2 ? f.neg(1) : 1;
    return base + f.chi(arg) * (q - 1) * big_pow(q, (n - 2) / 2);
}

namespace detail {

/// chi((-1)^e) as +1/-1.
inline int chi_m1_pow(const Field& f, long e) { return e % 2 ? f.chi(f.neg(1)) : 1; }

}  // namespace detail

/// Number of LCD [n,k]_q codes, by the four-parity-case mass formulas
/// (Carlet et al.'s count in odd characteristic and its extension to all
/// fields of characteristic 2). Boundary conventions k = 0 and k = n count
/// the zero code and the full space, both trivially LCD.
inline BigCount count_L(long n, long k, const Field& f) {
    if (n < 1 || k < 0 || k > n) throw Error("count L: need 0 <= k <= n, n >= 1");
    if (k == 0 || k == n) return 1;
    const BigCount q = f.q();
    const BigCount q2 = q * q;
    const bool k_odd = k % 2, n_odd = n % 2;
    if (f.odd_char()) {
        if (k_odd && !n_odd)
            return big_pow(q, (k * (n - k) - 1) / 2) *
                   (big_pow(q, n / 2) - detail::chi_m1_pow(f, n / 2)) *
                   gaussian_binomial(n / 2 - 1, (k - 1) / 2, q2);
        if (k_odd && n_odd)
            return big_pow(q, (k + 1) * (n - k) / 2) *
                   gaussian_binomial((n - 1) / 2, (k - 1) / 2, q2);
        if (!k_odd && n_odd)
            return big_pow(q, k * (n - k + 1) / 2) * gaussian_binomial((n - 1) / 2, k / 2, q2);
        return big_pow(q, k * (n - k) / 2) * gaussian_binomial(n / 2, k / 2, q2);
    }
    if (k_odd && !n_odd)
        return big_pow(q, (n * k - k * k + n - 1) / 2) *
               gaussian_binomial(n / 2 - 1, (k - 1) / 2, q2);
    if (k_odd && n_odd)
        return big_pow(q, (n - k) * (k + 1) / 2) *
               gaussian_binomial((n - 1) / 2, (k - 1) / 2, q2);
    if (!k_odd && n_odd)
        return big_pow(q, k * (n - k + 1) / 2) * gaussian_binomial((n - 1) / 2, k / 2, q2);
    return big_pow(q, k * (n - k) / 2) *
           (big_pow(q, n - k) * gaussian_binomial(n / 2 - 1, k / 2 - 1, q2) +
            gaussian_binomial(n / 2 - 1, k / 2, q2));
}

/// Number of [n,k]_q subspaces that are LCD with respect to a nondegenerate
/// symmetric bilinear form of type eps (q odd). Differs from count_L only
/// in the (k odd, n even) case, where the character correction depends on
/// the form's discriminant class.
inline BigCount count_L_eps(long n, long k, const Field& f, int eps) {
    if (!f.odd_char()) throw Error("count L^eps: odd q required");
    if (eps != 1 && eps != -1) throw Error("count L^eps: eps must be +1 or -1");
    if (n < 0 || k < 0 || k > n) throw Error("count L^eps: need 0 <= k <= n");
    if (k == 0 || k == n) return 1;
    if (k % 2 == 1 && n % 2 == 0) {
        const BigCount q = f.q();
        const int s = detail::chi_m1_pow(f, n / 2) * eps;
        return big_pow(q, (k * (n - k) - 1) / 2) * (big_pow(q, n / 2) - s) *
               gaussian_binomial(n / 2 - 1, (k - 1) / 2, q * q);
    }
    return count_L(n, k, f);
}

/// Total number of [n,k]_q codes reachable by the projector reduction
/// (q odd): the LCD count plus, for each of the K(n,q)/(q-1) admissible
/// hull lines, the type-chi(-1) LCD count in dimension n-2.
inline BigCount count_gi_reducible(long n, long k, const Field& f) {
    if (!f.odd_char()) throw Error("count reducible: odd q required (char 2 reduces to count_L)");
    if (k < 1 || k >= n) throw Error("count reducible: need 1 <= k < n");
    const BigCount q = f.q();
    const int eps = f.chi(f.neg(1));
    return count_L(n, k, f) + (count_K(n, f) / (q - 1)) * count_L_eps(n - 2, k - 1, f, eps);
}

enum class Discriminant { Square, NonSquare };

/// Order of the orthogonal group of diag(1, ..., 1, delta) over F_q
/// (q odd). Independent of the discriminant class for odd m.
inline BigCount orth_group_order(long m, Discriminant delta, const Field& f) {
    if (!f.odd_char()) throw Error("orthogonal group order: odd q required");
    if (m < 1) throw Error("orthogonal group order: m >= 1 required");
    const BigCount q = f.q();
    if (m % 2 == 1) {
        BigCount r = 2 * big_pow(q, (m - 1) * (m - 1) / 4);
        for (long i = 1; i <= (m - 1) / 2; ++i) r *= big_pow(q, 2 * i) - 1;
        return r;
    }
    const int s = detail::chi_m1_pow(f, m / 2) * (delta == Discriminant::NonSquare ? -1 : 1);
    BigCount r = 2 * big_pow(q, m * (m - 2) / 4) * (big_pow(q, m / 2) - s);
    for (long i = 1; i <= m / 2 - 1; ++i) r *= big_pow(q, 2 * i) - 1;
    return r;
}

/// Structure matrix diag(1, ..., 1, tau_eps) of type eps, with tau_{+1} = 1
/// and tau_{-1} = the canonical smallest non-square.
inline std::vector<FElem> type_eps_diag(long n, const Field& f, int eps) {
    std::vector<FElem> d(static_cast<std::size_t>(n), 1);
    if (eps == -1) d.back() = f.smallest_nonsquare();
    return d;
}

/// Gram matrix G D G^T for a diagonal form D.
inline Matrix gram_diag(const Matrix& g, const std::vector<FElem>& diag) {
    const Field& f = g.field();
    Matrix s(f, g.rows(), g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i; j < g.rows(); ++j) {
            FElem dot = 0;
            for (std::size_t c = 0; c < g.cols(); ++c)
                dot = f.add(dot, f.mul(diag[c], f.mul(g.at(i, c), g.at(j, c))));
            s.set(i, j, dot);
            s.set(j, i, dot);
        }
    return s;
}

/// Reference [n,k]_q code that is LCD for the type-eps form with the
/// requested inner discriminant class: <e_1..e_k> has Gram I_k; the
/// non-square representative replaces e_k by a vector v with
/// v M^eps v^T = gamma built from a two-square decomposition (or by e_n
/// when k = n-1 and eps = -1). The construction is checked before return.
inline LinearCode reference_code(long n, long k, const Field& f, int eps, Discriminant delta) {
    if (!f.odd_char()) throw Error("reference code: odd q required");
    if (eps != 1 && eps != -1) throw Error("reference code: eps must be +1 or -1");
    if (k < 1 || k >= n) throw Error("reference code: need 1 <= k < n");
    const auto nn = static_cast<std::size_t>(n);
    const auto kk = static_cast<std::size_t>(k);
    Matrix g(f, kk, nn);
    for (std::size_t r = 0; r + 1 < kk; ++r) g.set(r, r, 1);
    if (delta == Discriminant::Square) {
        g.set(kk - 1, kk - 1, 1);
    } else {
        const FElem gamma = f.smallest_nonsquare();
        const auto [a, b] = f.sum_of_two_squares(gamma);
        if (kk <= nn - 2) {
            g.set(kk - 1, kk - 1, a);
            g.set(kk - 1, kk, b);
        } else if (eps == 1) {
            g.set(kk - 1, nn - 2, a);
            g.set(kk - 1, nn - 1, b);
        } else {
            g.set(kk - 1, nn - 1, 1);
        }
    }
    const auto diag = type_eps_diag(n, f, eps);
    const Matrix s = gram_diag(g, diag);
    const FElem det = s.det();
    if (det == 0) throw Error("reference code: construction is not M-LCD");
    const int want = delta == Discriminant::Square ? 1 : -1;
    if (f.chi(det) != want) throw Error("reference code: wrong inner discriminant class");
    return LinearCode(f, g);
}

/// Bilinear form driving a census run: the standard inner product, a
/// type-eps diagonal form, or a member of the aI + bJ family.
struct CensusForm {
    enum class Kind { Standard, TypeEps, AIbJ } kind = Kind::Standard;
    int eps = 1;
    FElem a = 1, b = 0;

    static CensusForm standard() { return {}; }
    static CensusForm type_eps(int e) { return {Kind::TypeEps, e, 1, 0}; }
    static CensusForm ai_bj(FElem a, FElem b) { return {Kind::AIbJ, 1, a, b}; }
};

struct CensusReport {
    long n = 0, k = 0;
    BigCount total_subspaces = 0;
    BigCount lcd_count = 0;
    /// Codes that are LCD or have a one-dimensional hull with hull vector of
    /// nonzero coordinate sum; only populated for the standard form.
    std::optional<BigCount> gi_reducible_count;
    std::vector<BigCount> hull_dim_histogram;  // index = hull dimension, size k+1
    /// Normalised hull vector -> number of codes with that hull line
    /// (hull dimension exactly 1).
    std::map<std::vector<FElem>, BigCount> hull_line_counts;
};

namespace detail {

/// Flat workspace for streaming one pivot profile of the census; avoids
/// per-code allocation.
struct CensusWorker {
    const Field& f;
    long n, k;
    CensusForm form;
    std::vector<FElem> eps_diag;

    std::uint64_t total = 0, lcd = 0, gi_red = 0;
    std::vector<std::uint64_t> hist;
    std::map<std::vector<FElem>, std::uint64_t> lines;

    std::vector<FElem> g;      // k x n row-major
    std::vector<FElem> s;      // k x k Gram scratch
    std::vector<FElem> null_c; // left null vector of s when hull dim is 1

    CensusWorker(const Field& f_, long n_, long k_, CensusForm form_)
        : f(f_), n(n_), k(k_), form(form_), hist(static_cast<std::size_t>(k_) + 1, 0),
          g(static_cast<std::size_t>(n_ * k_), 0), s(static_cast<std::size_t>(k_ * k_), 0),
          null_c(static_cast<std::size_t>(k_), 0) {
        if (form.kind == CensusForm::Kind::TypeEps) eps_diag = type_eps_diag(n_, f_, form.eps);
    }

    void gram_into_s() {
        const auto nn = static_cast<std::size_t>(n);
        const auto kk = static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = i; j < kk; ++j) {
                FElem dot = 0;
                for (std::size_t c = 0; c < nn; ++c) {
                    FElem w = f.mul(g[i * nn + c], g[j * nn + c]);
                    if (form.kind == CensusForm::Kind::TypeEps) w = f.mul(w, eps_diag[c]);
                    dot = f.add(dot, w);
                }
                s[i * kk + j] = dot;
                s[j * kk + i] = dot;
            }
        if (form.kind == CensusForm::Kind::AIbJ) {
            const auto nn2 = static_cast<std::size_t>(n);
            std::vector<FElem> v(static_cast<std::size_t>(k), 0);
            for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
                for (std::size_t c = 0; c < nn2; ++c) v[i] = f.add(v[i], g[i * nn2 + c]);
            for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
                for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j)
                    s[i * static_cast<std::size_t>(k) + j] =
                        f.add(f.mul(form.a, s[i * static_cast<std::size_t>(k) + j]),
                              f.mul(form.b, f.mul(v[i], v[j])));
        }
    }

    /// Rank of the Gram scratch by in-place elimination; when the corank is
    /// exactly 1 a null vector is also produced (s is symmetric, so left
    /// and right null spaces agree).
    std::size_t rank_and_null() {
        const auto kk = static_cast<std::size_t>(k);
        std::vector<FElem> a = s;
        std::vector<std::size_t> pivot_col;
        std::size_t lead = 0;
        for (std::size_t col = 0; col < kk && lead < kk; ++col) {
            std::size_t pr = lead;
            while (pr < kk && a[pr * kk + col] == 0) ++pr;
            if (pr == kk) continue;
            if (pr != lead)
                for (std::size_t c = 0; c < kk; ++c) std::swap(a[pr * kk + c], a[lead * kk + c]);
            const FElem inv = f.inv(a[lead * kk + col]);
            for (std::size_t c = 0; c < kk; ++c) a[lead * kk + c] = f.mul(a[lead * kk + c], inv);
            for (std::size_t r = 0; r < kk; ++r) {
                if (r == lead) continue;
                const FElem v = a[r * kk + col];
                if (v == 0) continue;
                for (std::size_t c = 0; c < kk; ++c)
                    a[r * kk + c] = f.sub(a[r * kk + c], f.mul(v, a[lead * kk + c]));
            }
            pivot_col.push_back(col);
            ++lead;
        }
        const std::size_t rank = pivot_col.size();
        if (rank + 1 == kk) {
            std::vector<bool> is_pivot(kk, false);
            for (const auto c : pivot_col) is_pivot[c] = true;
            std::size_t free = 0;
            while (is_pivot[free]) ++free;
            std::fill(null_c.begin(), null_c.end(), 0);
            null_c[free] = 1;
            for (std::size_t r = 0; r < rank; ++r)
                null_c[pivot_col[r]] = f.neg(a[r * kk + free]);
        }
        return rank;
    }

    void classify_current() {
        const auto nn = static_cast<std::size_t>(n);
        gram_into_s();
        const std::size_t rank = rank_and_null();
        const std::size_t h = static_cast<std::size_t>(k) - rank;
        ++total;
        ++hist[h];
        if (h == 0) {
            ++lcd;
            ++gi_red;
            return;
        }
        if (h != 1) return;
        // hull line: lift the null vector through G and normalise
        std::vector<FElem> x(nn, 0);
        for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) {
            if (null_c[r] == 0) continue;
            for (std::size_t c = 0; c < nn; ++c)
                x[c] = f.add(x[c], f.mul(null_c[r], g[r * nn + c]));
        }
        std::size_t leadpos = 0;
        while (x[leadpos] == 0) ++leadpos;
        const FElem scale = f.inv(x[leadpos]);
        FElem sum = 0;
        for (auto& v : x) {
            v = f.mul(v, scale);
            sum = f.add(sum, v);
        }
        ++lines[x];
        if (form.kind == CensusForm::Kind::Standard && sum != 0) ++gi_red;
    }

    /// Stream every RREF with the given pivot columns: free entries advance
    /// as an odometer in canonical element order, last cell fastest.
    void run_profile(const std::vector<std::size_t>& pivots) {
        const auto nn = static_cast<std::size_t>(n);
        const auto kk = static_cast<std::size_t>(k);
        std::fill(g.begin(), g.end(), 0);
        std::vector<bool> is_pivot(nn, false);
        for (const auto c : pivots) is_pivot[c] = true;
        std::vector<std::size_t> cells;  // flat g indices of free entries
        for (std::size_t r = 0; r < kk; ++r) {
            g[r * nn + pivots[r]] = 1;
            for (std::size_t c = pivots[r] + 1; c < nn; ++c)
                if (!is_pivot[c]) cells.push_back(r * nn + c);
        }
        const std::uint64_t q = f.q();
        for (;;) {
            classify_current();
            std::size_t pos = cells.size();
            while (pos > 0 && g[cells[pos - 1]] + 1 == q) g[cells[--pos]] = 0;
            if (pos == 0) break;
            ++g[cells[pos - 1]];
        }
    }
};

inline std::vector<std::vector<std::size_t>> pivot_profiles_colex(long n, long k) {
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> cur;
    const auto rec = [&](auto&& self, std::size_t next, long remaining) -> void {
        if (remaining == 0) {
            all.push_back(cur);
            return;
        }
        for (std::size_t c = next; c < static_cast<std::size_t>(n); ++c) {
            cur.push_back(c);
            self(self, c + 1, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, k);
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
        for (std::size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    });
    return all;
}

}  // namespace detail

/// Stream every k-dimensional subspace of F_q^n exactly once (one RREF per
/// subspace, pivot-column sets in colexicographic order) and classify each
/// by hull dimension under the chosen form. Work is split across threads by
/// pivot profile; aggregation is commutative, so the report is independent
/// of the thread count.
inline CensusReport grassmannian_census(long n, long k, const Field& f,
                                        CensusForm form = CensusForm::standard(),
                                        std::uint64_t cap = 10'000'000, unsigned threads = 1) {
    if (n < 1 || k < 0 || k > n) throw Error("census: need 0 <= k <= n, n >= 1");
    if (form.kind == CensusForm::Kind::AIbJ)
        StructureParams(f, form.a, form.b, static_cast<std::size_t>(n));  // nondegeneracy
    const BigCount expected = gaussian_binomial(n, k, BigCount(f.q()));
    if (expected > cap)
        throw Error("census: " + expected.str() + " subspaces exceed the cap of " +
                    std::to_string(cap));

    CensusReport rep;
    rep.n = n;
    rep.k = k;
    rep.hull_dim_histogram.assign(static_cast<std::size_t>(k) + 1, 0);

    const auto profiles = detail::pivot_profiles_colex(n, k);
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, std::max<std::size_t>(profiles.size(), 1));

    std::vector<detail::CensusWorker> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(f, n, k, form);

    const auto run_range = [&](unsigned t) {
        for (std::size_t i = t; i < profiles.size(); i += threads)
            workers[t].run_profile(profiles[i]);
    };
    if (threads == 1) {
        run_range(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run_range, t);
        for (auto& th : pool) th.join();
    }

    for (const auto& w : workers) {
        rep.total_subspaces += w.total;
        rep.lcd_count += w.lcd;
        for (std::size_t h = 0; h < w.hist.size(); ++h) rep.hull_dim_histogram[h] += w.hist[h];
        for (const auto& [line, cnt] : w.lines) rep.hull_line_counts[line] += cnt;
    }
    if (form.kind == CensusForm::Kind::Standard) {
        BigCount red = 0;
        for (const auto& w : workers) red += w.gi_red;
        rep.gi_reducible_count = red;
    }
    if (rep.total_subspaces != expected)
        throw Error("census: internal enumeration mismatch");
    return rep;
}

}  // namespace pep2gi
