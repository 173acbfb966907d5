#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pep2gi/field.hpp"

namespace pep2gi {

struct MatrixRref;

/// Dense matrix over one field, row-major storage of canonical element
/// codes. Zero-row matrices are allowed (they generate zero-dimensional
/// codes). Operations never mutate their inputs.
class Matrix {
  public:
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static Matrix identity(const Field& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static Matrix from_rows(const Field& f, const std::vector<std::vector<FElem>>& rows,
                            std::size_t cols_if_empty = 0) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows[0].size() : cols_if_empty;
        Matrix m(f, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw Error("matrix: ragged row list");
            for (std::size_t j = 0; j < c; ++j) {
                if (rows[i][j] >= f.q()) throw Error("matrix: entry out of field range");
                m.set(i, j, rows[i][j]);
            }
        }
        return m;
    }

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FElem at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, FElem v) { e_[r * cols_ + c] = v; }

    std::vector<FElem> row(std::size_t r) const {
        return {e_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                e_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    Matrix transpose() const {
        Matrix t(f_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        require_same_field(o);
        if (cols_ != o.rows_) throw Error("matrix: product shape mismatch");
        Matrix out(f_, rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FElem a = at(r, k);
                if (a == 0) continue;
                for (std::size_t c = 0; c < o.cols_; ++c)
                    out.set(r, c, f_.add(out.at(r, c), f_.mul(a, o.at(k, c))));
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix: sum shape mismatch");
        Matrix out(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = f_.add(e_[i], o.e_[i]);
        return out;
    }

    Matrix scaled(FElem s) const {
        Matrix out(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = f_.mul(e_[i], s);
        return out;
    }

    /// Unique reduced row echelon form via Gauss-Jordan elimination; the
    /// pivot in each column is the first nonzero entry scanning downward.
    MatrixRref rref() const;

    std::size_t rank() const;

    FElem det() const {
        if (rows_ != cols_) throw Error("matrix: determinant of non-square matrix");
        Matrix a = *this;
        FElem d = 1;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pr = col;
            while (pr < rows_ && a.at(pr, col) == 0) ++pr;
            if (pr == rows_) return 0;
            if (pr != col) {
                a.swap_rows(pr, col);
                d = f_.neg(d);
            }
            const FElem piv = a.at(col, col);
            d = f_.mul(d, piv);
            const FElem s = f_.inv(piv);
            for (std::size_t rr = col + 1; rr < rows_; ++rr) {
                const FElem v = f_.mul(a.at(rr, col), s);
                if (v == 0) continue;
                for (std::size_t c = col; c < cols_; ++c)
                    a.set(rr, c, f_.sub(a.at(rr, c), f_.mul(v, a.at(col, c))));
            }
        }
        return d;
    }

    Matrix inverse() const;

    bool operator==(const Matrix& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

  private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<FElem> e_;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) {
            const FElem t = at(a, c);
            set(a, c, at(b, c));
            set(b, c, t);
        }
    }

    void require_same_field(const Matrix& o) const {
        if (!(f_ == o.f_)) throw Error("matrix: operands live in different fields");
    }
};

struct MatrixRref {
    Matrix r;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

inline MatrixRref Matrix::rref() const {
    Matrix r = *this;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
        std::size_t pr = lead;
        while (pr < rows_ && r.at(pr, col) == 0) ++pr;
        if (pr == rows_) continue;
        r.swap_rows(pr, lead);
        const FElem s = f_.inv(r.at(lead, col));
        for (std::size_t c = col; c < cols_; ++c) r.set(lead, c, f_.mul(r.at(lead, c), s));
        for (std::size_t rr = 0; rr < rows_; ++rr) {
            if (rr == lead) continue;
            const FElem v = r.at(rr, col);
            if (v == 0) continue;
            for (std::size_t c = col; c < cols_; ++c)
                r.set(rr, c, f_.sub(r.at(rr, c), f_.mul(v, r.at(lead, c))));
        }
        pivots.push_back(col);
        ++lead;
    }
    const std::size_t rank = pivots.size();
    return MatrixRref{std::move(r), rank, std::move(pivots)};
}

inline std::size_t Matrix::rank() const { return rref().rank; }

inline Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw Error("matrix: inverse of non-square matrix");
    Matrix aug(f_, rows_, 2 * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.set(r, c, at(r, c));
        aug.set(r, cols_ + r, 1);
    }
    const auto red = aug.rref();
    for (std::size_t i = 0; i < rows_; ++i)
        if (i >= red.pivots.size() || red.pivots[i] != i)
            throw Error("matrix: singular matrix has no inverse");
    Matrix out(f_, rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, red.r.at(r, cols_ + c));
    return out;
}

/// Row vector times matrix.
inline std::vector<FElem> mul_row(const std::vector<FElem>& x, const Matrix& a) {
    if (x.size() != a.rows()) throw Error("matrix: row-vector product shape mismatch");
    const Field& f = a.field();
    std::vector<FElem> out(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (x[r] == 0) continue;
        for (std::size_t c = 0; c < a.cols(); ++c)
            out[c] = f.add(out[c], f.mul(x[r], a.at(r, c)));
    }
    return out;
}

/// Basis of the left null space {c : cA = 0}, returned as the rows of a
/// matrix in reduced row echelon form (deterministic).
inline Matrix nullspace_left(const Matrix& a) {
    const Field& f = a.field();
    const std::size_t vars = a.rows();
    const auto red = a.transpose().rref();  // solve A^T c^T = 0
    std::vector<bool> is_pivot(vars, false);
    for (const auto c : red.pivots) is_pivot[c] = true;
    std::vector<std::vector<FElem>> basis;
    for (std::size_t free = 0; free < vars; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FElem> v(vars, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < red.pivots.size(); ++r)
            v[red.pivots[r]] = f.neg(red.r.at(r, free));
        basis.push_back(std::move(v));
    }
    Matrix b = Matrix::from_rows(f, basis, vars);
    return b.rref().r;
}

}  // namespace pep2gi
