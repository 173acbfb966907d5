#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pep2gi/matrix.hpp"

namespace pep2gi {

/// Element of S_n acting on row vectors from the right: the matrix P has
/// P[i][pi(i)] = 1, so (xP)_j = x_{pi^{-1}(j)}.
class Permutation {
  public:
    explicit Permutation(std::vector<std::uint32_t> image) : img_(std::move(image)) {
        std::vector<bool> seen(img_.size(), false);
        for (const auto v : img_) {
            if (v >= img_.size() || seen[v]) throw Error("permutation: image is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> img(n);
        std::iota(img.begin(), img.end(), 0u);
        return Permutation(std::move(img));
    }

    static Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
        auto p = identity(n);
        std::swap(p.img_[i], p.img_[j]);
        return p;
    }

    std::size_t size() const { return img_.size(); }
    std::uint32_t operator()(std::size_t i) const { return img_[i]; }
    const std::vector<std::uint32_t>& image() const { return img_; }

    Permutation inverse() const {
        std::vector<std::uint32_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(inv));
    }

    /// Composition matching matrix products: (p * q) corresponds to P_p P_q,
    /// i.e. apply p first, then q.
    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.size() != q.size()) throw Error("permutation: size mismatch");
        std::vector<std::uint32_t> img(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) img[i] = q(p(i));
        return Permutation(std::move(img));
    }

    Matrix matrix(const Field& f) const {
        Matrix m(f, img_.size(), img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) m.set(i, img_[i], 1);
        return m;
    }

    /// Advance to the lexicographic successor; false after wrapping past the
    /// last permutation. Start from identity() to scan all of S_n in order.
    bool next() { return std::next_permutation(img_.begin(), img_.end()); }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return !(*this == o); }

  private:
    std::vector<std::uint32_t> img_;
};

/// Coordinate permutation of a row vector, x -> xP.
inline std::vector<FElem> apply_to_vector(const std::vector<FElem>& x, const Permutation& pi) {
    std::vector<FElem> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[pi(i)] = x[i];
    return out;
}

}  // namespace pep2gi
