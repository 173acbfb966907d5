#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pep2gi/errors.hpp"

namespace pep2gi {

/// Canonical code of a field element. For F_q with q = p^m an element with
/// coefficient vector (c_0, ..., c_{m-1}) over F_p (constant term first) is
/// encoded as the integer c_0 + c_1*p + ... + c_{m-1}*p^{m-1}. Codes run
/// 0..q-1 and their numeric order is the canonical element order used for
/// deterministic tie-breaking everywhere in the library.
using FElem = std::uint32_t;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Remainder of polynomial division over F_p. Both polynomials ascending
/// (constant term first); divisor must be monic.
inline std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& monic,
                                           std::uint32_t p) {
    const std::size_t dm = monic.size() - 1;
    while (a.size() > dm) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                std::uint64_t v = a[shift + i] + (p - 1ull) * lead % p * monic[i] % p;
                a[shift + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

}  // namespace detail

/// Exact arithmetic over a small finite field F_q, q = p^m. Extension
/// fields use a polynomial basis modulo a monic irreducible of degree m;
/// a fixed default modulus is built in for q in {4, 8, 9, 16, 25, 27} so
/// that the canonical element order is reproducible across runs. Fields
/// are immutable and cheap to copy; all operations are re-entrant.
class Field {
  public:
    /// Construct F_{p^m}. The modulus is a coefficient list (constant term
    /// first) of a degree-m polynomial over F_p; it is normalised to monic
    /// form and verified irreducible by exhaustive trial division. Leave it
    /// empty to pick the built-in default (prime fields never take one).
    static Field make(std::uint32_t p, std::uint32_t m = 1,
                      std::vector<std::uint32_t> modulus = {}) {
        if (!detail::is_prime_u32(p)) throw Error("field: " + std::to_string(p) + " is not prime");
        if (m < 1) throw Error("field: extension degree must be >= 1");
        if (m > 16) throw Error("field: extension degree too large");
        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->m = m;
        impl->q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            impl->q *= p;
            if (impl->q > (1u << 20)) throw Error("field: order too large");
        }
        if (m == 1) {
            if (!modulus.empty()) throw Error("field: prime field takes no modulus");
        } else {
            if (modulus.empty()) modulus = default_modulus(p, m);
            for (auto& c : modulus) c %= p;
            while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
            if (modulus.size() != m + 1)
                throw Error("field: modulus must have degree exactly m");
            // normalise to monic
            if (modulus.back() != 1) {
                const std::uint32_t s = mod_inverse(modulus.back(), p);
                for (auto& c : modulus) c = static_cast<std::uint32_t>(std::uint64_t(c) * s % p);
            }
            check_irreducible(modulus, p);
            impl->modulus = modulus;
        }
        if (impl->q <= kTableLimit) build_tables(*impl);
        Field f;
        f.impl_ = std::move(impl);
        return f;
    }

    std::uint32_t p() const { return impl_->p; }
    std::uint32_t m() const { return impl_->m; }
    std::uint64_t q() const { return impl_->q; }
    bool odd_char() const { return impl_->p != 2; }
    const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }

    FElem zero() const { return 0; }
    FElem one() const { return 1; }

    /// Reduce an ordinary integer into the field (image of n under the ring
    /// map Z -> F_q, i.e. n mod p as a constant polynomial).
    FElem from_int(std::uint64_t v) const { return static_cast<FElem>(v % impl_->p); }

    std::vector<std::uint32_t> coeffs(FElem x) const {
        std::vector<std::uint32_t> c(impl_->m);
        for (std::uint32_t i = 0; i < impl_->m; ++i) {
            c[i] = x % impl_->p;
            x /= impl_->p;
        }
        return c;
    }

    FElem from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() > impl_->m) throw Error("field: coefficient vector too long");
        FElem x = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            x = static_cast<FElem>(x * impl_->p + c[i] % impl_->p);
        return x;
    }

    FElem add(FElem a, FElem b) const {
        if (impl_->tabled) return impl_->add_tab[a * impl_->q + b];
        return add_slow(a, b);
    }

    FElem neg(FElem a) const {
        if (impl_->tabled) return impl_->neg_tab[a];
        return neg_slow(a);
    }

    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }

    FElem mul(FElem a, FElem b) const {
        if (impl_->tabled) return impl_->mul_tab[a * impl_->q + b];
        return mul_slow(a, b);
    }

    FElem inv(FElem a) const {
        if (a == 0) throw Error("field: inverse of zero");
        if (impl_->tabled) return impl_->inv_tab[a];
        return pow(a, impl_->q - 2);
    }

    FElem div(FElem a, FElem b) const { return mul(a, inv(b)); }

    FElem pow(FElem x, std::uint64_t e) const {
        FElem r = 1;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at 0.
    /// Defined for odd characteristic only; char-2 callers use is_square.
    int chi(FElem x) const {
        if (!odd_char()) throw Error("field: quadratic character needs odd characteristic");
        if (x == 0) return 0;
        return pow(x, (impl_->q - 1) / 2) == 1 ? 1 : -1;
    }

    bool is_square(FElem x) const {
        if (!odd_char()) return true;  // squaring is a bijection in char 2
        return chi(x) >= 0;
    }

    /// Smallest non-square in canonical order (odd q).
    FElem smallest_nonsquare() const {
        for (FElem x = 1; x < impl_->q; ++x)
            if (chi(x) == -1) return x;
        throw Error("field: no non-square found");
    }

    /// First pair (a, b) in canonical order with a^2 + b^2 = c. Every
    /// element of F_q is such a sum when q is odd.
    std::pair<FElem, FElem> sum_of_two_squares(FElem c) const {
        if (!odd_char()) throw Error("field: sum-of-two-squares needs odd q");
        for (FElem a = 0; a < impl_->q; ++a) {
            const FElem a2 = mul(a, a);
            for (FElem b = 0; b < impl_->q; ++b)
                if (add(a2, mul(b, b)) == c) return {a, b};
        }
        throw Error("field: unreachable in odd characteristic");
    }

    friend bool operator==(const Field& x, const Field& y) {
        return x.impl_->p == y.impl_->p && x.impl_->m == y.impl_->m &&
               x.impl_->modulus == y.impl_->modulus;
    }
    friend bool operator!=(const Field& x, const Field& y) { return !(x == y); }

  private:
    static constexpr std::uint64_t kTableLimit = 256;

    struct Impl {
        std::uint32_t p = 0, m = 0;
        std::uint64_t q = 0;
        std::vector<std::uint32_t> modulus;  // empty for prime fields
        bool tabled = false;
        std::vector<FElem> add_tab, mul_tab, neg_tab, inv_tab;
    };

    std::shared_ptr<const Impl> impl_;

    static std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
        std::uint32_t r = 1;
        std::uint64_t base = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<std::uint32_t>(r * base % p);
            base = base * base % p;
            e >>= 1;
        }
        return r;
    }

    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t m) {
        if (p == 2 && m == 2) return {1, 1, 1};         // t^2 + t + 1
        if (p == 2 && m == 3) return {1, 1, 0, 1};      // t^3 + t + 1
        if (p == 2 && m == 4) return {1, 1, 0, 0, 1};   // t^4 + t + 1
        if (p == 3 && m == 2) return {1, 0, 1};         // t^2 + 1
        if (p == 3 && m == 3) return {1, 2, 0, 1};      // t^3 + 2t + 1
        if (p == 5 && m == 2) return {2, 0, 1};         // t^2 + 2
        throw Error("field: no default modulus for p=" + std::to_string(p) +
                    " m=" + std::to_string(m) + "; supply one");
    }

    /// Trial division by every monic polynomial of degree 1..deg/2.
    static void check_irreducible(const std::vector<std::uint32_t>& mod, std::uint32_t p) {
        const std::size_t deg = mod.size() - 1;
        for (std::size_t e = 1; 2 * e <= deg; ++e) {
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < e; ++i) count *= p;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint32_t> g(e + 1, 0);
                std::uint64_t t = idx;
                for (std::size_t i = 0; i < e; ++i) {
                    g[i] = static_cast<std::uint32_t>(t % p);
                    t /= p;
                }
                g[e] = 1;
                if (detail::poly_rem(mod, g, p).empty())
                    throw Error("field: modulus is reducible (divisible by a degree-" +
                                std::to_string(e) + " factor)");
            }
        }
    }

    FElem add_slow(FElem a, FElem b) const {
        const std::uint32_t p = impl_->p;
        if (impl_->m == 1) return (a + b) % p;
        FElem r = 0;
        std::uint64_t mult = 1;
        for (std::uint32_t i = 0; i < impl_->m; ++i) {
            r += static_cast<FElem>((a % p + b % p) % p * mult);
            a /= p;
            b /= p;
            mult *= p;
        }
        return r;
    }

    FElem neg_slow(FElem a) const {
        const std::uint32_t p = impl_->p;
        if (impl_->m == 1) return (p - a) % p;
        FElem r = 0;
        std::uint64_t mult = 1;
        for (std::uint32_t i = 0; i < impl_->m; ++i) {
            r += static_cast<FElem>((p - a % p) % p * mult);
            a /= p;
            mult *= p;
        }
        return r;
    }

    FElem mul_slow(FElem a, FElem b) const {
        const std::uint32_t p = impl_->p;
        const std::uint32_t m = impl_->m;
        if (m == 1) return static_cast<FElem>(std::uint64_t(a) * b % p);
        std::vector<std::uint32_t> prod(2 * m - 1, 0);
        const auto ca = coeffs(a), cb = coeffs(b);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (ca[i] == 0) continue;
            for (std::uint32_t j = 0; j < m; ++j)
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p);
        }
        const auto rem = detail::poly_rem(std::move(prod), impl_->modulus, p);
        FElem r = 0;
        for (std::size_t i = rem.size(); i-- > 0;) r = static_cast<FElem>(r * p + rem[i]);
        return r;
    }

    static void build_tables(Impl& impl) {
        Field tmp;
        auto holder = std::make_shared<Impl>(impl);  // untabled copy for slow ops
        tmp.impl_ = holder;
        const std::size_t q = static_cast<std::size_t>(impl.q);
        impl.add_tab.resize(q * q);
        impl.mul_tab.resize(q * q);
        impl.neg_tab.resize(q);
        impl.inv_tab.resize(q);
        for (std::size_t a = 0; a < q; ++a) {
            impl.neg_tab[a] = tmp.neg_slow(static_cast<FElem>(a));
            for (std::size_t b = 0; b < q; ++b) {
                impl.add_tab[a * q + b] = tmp.add_slow(static_cast<FElem>(a), static_cast<FElem>(b));
                impl.mul_tab[a * q + b] = tmp.mul_slow(static_cast<FElem>(a), static_cast<FElem>(b));
            }
        }
        impl.inv_tab[0] = 0;  // never read; inv(0) throws
        for (std::size_t a = 1; a < q; ++a) {
            for (std::size_t b = 1; b < q; ++b) {
                if (impl.mul_tab[a * q + b] == 1) {
                    impl.inv_tab[a] = static_cast<FElem>(b);
                    break;
                }
            }
        }
        impl.tabled = true;
    }
};

}  // namespace pep2gi
