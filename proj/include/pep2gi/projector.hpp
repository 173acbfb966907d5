#pragma once

#include <optional>
#include <utility>

#include "pep2gi/code.hpp"

namespace pep2gi {

/// Orthogonal projector Pi = M G^T (G M G^T)^{-1} G onto an M-LCD code.
/// Vectors act on the right (x -> x Pi): the image is the code itself and
/// the kernel is M-orthogonal to it. Pi depends only on the code, not on
/// the generator, and is generally non-symmetric when M != I.
struct Projector {
    Matrix mat;
    LinearCode source;
    std::optional<StructureParams> params;  // empty marks the standard inner product
};

inline Projector projector(const LinearCode& c, const std::optional<StructureParams>& m = {}) {
    const Field& f = c.field();
    const Matrix s = gram(c, m);
    if (s.rank() != c.dim())
        throw NotMLcdError("projector: Gram matrix is singular (code is not M-LCD)");
    const Matrix mgt = gen_times_structure(c, m).transpose();  // n x k
    const Matrix pi = mgt * (s.inverse() * c.gen());
    return Projector{pi, c, m};
}

/// Basis of the kernel {w : w Pi = 0}, RREF rows.
inline Matrix projector_kernel_basis(const Projector& p) { return nullspace_left(p.mat); }

/// Check the conjugation identity Pi_{C pi, M} = P^T Pi_{C,M} P directly.
/// Always true for M = aI + bJ; exists as a self-test and as a probe for
/// forms outside that family.
inline bool projector_equivariant(const LinearCode& c, const Permutation& pi,
                                  const std::optional<StructureParams>& m = {}) {
    const Field& f = c.field();
    const Projector p1 = projector(c, m);
    const Projector p2 = projector(apply_permutation(c, pi), m);
    const Matrix pmat = pi.matrix(f);
    return p2.mat == pmat.transpose() * p1.mat * pmat;
}

}  // namespace pep2gi
