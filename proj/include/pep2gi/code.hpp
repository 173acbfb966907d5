#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pep2gi/matrix.hpp"
#include "pep2gi/permutation.hpp"

namespace pep2gi {

/// Parameters (a, b) of the structure matrix M = aI + bJ on length-n
/// vectors, where J is all-ones. det(aI + bJ) = a^{n-1}(a + nb), so M is
/// nondegenerate iff a != 0 and a + nb != 0; the constructor enforces both.
/// M is never materialised: every product uses the rank-one form
/// G M G^T = a GG^T + b vv^T with v = G 1^T.
struct StructureParams {
    Field field;
    FElem a, b;
    std::size_t n;

    StructureParams(Field f, FElem a_, FElem b_, std::size_t n_)
        : field(std::move(f)), a(a_), b(b_), n(n_) {
        if (a >= field.q() || b >= field.q()) throw Error("structure matrix: entry out of range");
        if (a == 0) throw Error("structure matrix: a must be nonzero");
        if (field.add(a, field.mul(field.from_int(n), b)) == 0)
            throw Error("structure matrix: a + n*b must be nonzero");
    }

    /// The dense n x n matrix aI + bJ (only for tests and display).
    Matrix materialise() const {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.set(i, j, i == j ? field.add(a, b) : b);
        return m;
    }
};

/// An [n,k]_q linear code. The working generator matrix keeps the rows it
/// was built from when they are already independent (so Gram matrices match
/// the caller's basis); rank-deficient input is reduced to an RREF basis
/// and k set to the rank. The cached RREF is the unique canonical form:
/// two codes are equal iff their canonical forms are. k = 0 is allowed.
class LinearCode {
  public:
    LinearCode(const Field& f, const Matrix& spanning)
        : gen_(f, 0, 0), canon_(f, 0, 0) {
        if (!(spanning.field() == f)) throw Error("code: generator field mismatch");
        if (spanning.cols() == 0) throw Error("code: length must be positive");
        const auto red = spanning.rref();
        Matrix c(f, red.rank, spanning.cols());
        for (std::size_t r = 0; r < red.rank; ++r)
            for (std::size_t col = 0; col < spanning.cols(); ++col) c.set(r, col, red.r.at(r, col));
        canon_ = c;
        gen_ = red.rank == spanning.rows() ? spanning : std::move(c);
    }

    const Field& field() const { return gen_.field(); }
    std::size_t length() const { return gen_.cols(); }
    std::size_t dim() const { return gen_.rows(); }

    /// Full-row-rank working generator (the constructor argument when that
    /// was already a basis).
    const Matrix& gen() const { return gen_; }

    /// Unique RREF generator; the equality and deduplication key.
    const Matrix& canon() const { return canon_; }

    bool operator==(const LinearCode& o) const { return canon_ == o.canon_; }
    bool operator!=(const LinearCode& o) const { return !(*this == o); }

  private:
    Matrix gen_;
    Matrix canon_;
};

inline LinearCode apply_permutation(const LinearCode& c, const Permutation& pi) {
    if (pi.size() != c.length()) throw Error("code: permutation length mismatch");
    const Field& f = c.field();
    Matrix g(f, c.dim(), c.length());
    for (std::size_t r = 0; r < c.dim(); ++r)
        for (std::size_t col = 0; col < c.length(); ++col)
            g.set(r, pi(col), c.gen().at(r, col));
    return LinearCode(f, g);
}

/// Row sums G 1^T of a generator matrix, one entry per row.
inline std::vector<FElem> row_sums(const Matrix& g) {
    const Field& f = g.field();
    std::vector<FElem> v(g.rows(), 0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) v[r] = f.add(v[r], g.at(r, c));
    return v;
}

/// Gram matrix G M G^T of the code's canonical generator under M = aI + bJ
/// (standard inner product when no parameters are given), computed as
/// a GG^T + b vv^T without forming M.
inline Matrix gram(const LinearCode& c, const std::optional<StructureParams>& m = {}) {
    const Field& f = c.field();
    const Matrix& g = c.gen();
    const std::size_t k = c.dim();
    if (m && m->n != c.length()) throw Error("code: structure matrix length mismatch");
    Matrix s(f, k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            FElem dot = 0;
            for (std::size_t col = 0; col < c.length(); ++col)
                dot = f.add(dot, f.mul(g.at(i, col), g.at(j, col)));
            s.set(i, j, dot);
            s.set(j, i, dot);
        }
    if (!m) return s;
    const auto v = row_sums(g);
    Matrix out(f, k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            out.set(i, j, f.add(f.mul(m->a, s.at(i, j)), f.mul(m->b, f.mul(v[i], v[j]))));
    return out;
}

/// dim Hull_M(C) = k - rank(G M G^T).
inline std::size_t hull_dim(const LinearCode& c, const std::optional<StructureParams>& m = {}) {
    return c.dim() - gram(c, m).rank();
}

/// Basis of Hull_M(C) = C intersect C^{perp_M}, as RREF rows: the left null
/// space of the Gram matrix lifted through the generator.
inline Matrix hull_basis(const LinearCode& c, const std::optional<StructureParams>& m = {}) {
    const Field& f = c.field();
    const Matrix ns = nullspace_left(gram(c, m));
    Matrix lifted(f, ns.rows(), c.length());
    for (std::size_t r = 0; r < ns.rows(); ++r) {
        const auto x = mul_row(ns.row(r), c.gen());
        for (std::size_t col = 0; col < c.length(); ++col) lifted.set(r, col, x[col]);
    }
    return lifted.rref().r;
}

/// G M as a k x n matrix, again via the rank-one form.
inline Matrix gen_times_structure(const LinearCode& c, const std::optional<StructureParams>& m) {
    const Field& f = c.field();
    const Matrix& g = c.gen();
    if (!m) return g;
    const auto v = row_sums(g);
    Matrix gm(f, g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t col = 0; col < g.cols(); ++col)
            gm.set(r, col, f.add(f.mul(m->a, g.at(r, col)), f.mul(m->b, v[r])));
    return gm;
}

/// M-dual code {y : x M y^T = 0 for all x in C}; dimension n - k.
inline LinearCode dual(const LinearCode& c, const std::optional<StructureParams>& m = {}) {
    const Matrix gm_t = gen_times_structure(c, m).transpose();  // n x k
    return LinearCode(c.field(), nullspace_left(gm_t));
}

/// Whether a square matrix has the shape aI + bJ: constant diagonal and
/// constant off-diagonal. Nondegeneracy is deliberately not checked here.
inline bool centralizer_check(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("centralizer check: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return true;
    const FElem diag = m.at(0, 0);
    std::optional<FElem> off;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (m.at(i, i) != diag) return false;
            } else if (!off) {
                off = m.at(i, j);
            } else if (m.at(i, j) != *off) {
                return false;
            }
        }
    return true;
}

enum class HullClass { Lcd, HullOneReducible, HullOneIrreducible, HullTooLarge };

inline const char* to_string(HullClass h) {
    switch (h) {
        case HullClass::Lcd: return "LCD";
        case HullClass::HullOneReducible: return "HullOneReducible";
        case HullClass::HullOneIrreducible: return "HullOneIrreducible";
        case HullClass::HullTooLarge: return "HullTooLarge";
    }
    return "?";
}

struct ReducibilityVerdict {
    HullClass tag;
    std::size_t hull_dimension;
    std::optional<std::vector<FElem>> hull_vector;  // present iff hull dim 1 (RREF-normalised)
    std::optional<FElem> witness_b;                 // present iff HullOneReducible
};

/// Sort a code into the four classes that decide whether the projector
/// reduction applies: trivial hull, hull dimension 1 with hull vector of
/// nonzero or zero coordinate sum, or hull dimension >= 2. For the
/// reducible one-dimensional case the smallest b making C (I+bJ)-LCD is
/// reported as a witness.
inline ReducibilityVerdict classify(const LinearCode& c) {
    const Field& f = c.field();
    const std::size_t h = hull_dim(c);
    if (h == 0) return {HullClass::Lcd, 0, {}, {}};
    if (h >= 2) return {HullClass::HullTooLarge, h, {}, {}};
    const Matrix basis = hull_basis(c);
    const std::vector<FElem> x = basis.row(0);
    FElem sum = 0;
    for (const auto v : x) sum = f.add(sum, v);
    if (sum == 0) return {HullClass::HullOneIrreducible, 1, x, {}};
    const std::size_t n = c.length();
    for (FElem b = 1; b < f.q(); ++b) {
        if (f.add(1, f.mul(f.from_int(n), b)) == 0) continue;
        const StructureParams m(f, 1, b, n);
        if (gram(c, m).rank() == c.dim())
            return {HullClass::HullOneReducible, 1, x, b};
    }
    throw Error("classify: no valid structure matrix found for a reducible code");
}

}  // namespace pep2gi
