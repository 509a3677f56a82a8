#pragma once

#include <vector>

#include "neron/errors.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// Rectangular matrix of exact polynomials. Determinant and adjugate use
// cofactor expansion; matrices in this artifact stay small.
class PolyMatrix {
public:
    PolyMatrix(SharedUniverse u, int rows, int cols)
        : u_(std::move(u)),
          rows_(rows),
          cols_(cols),
          a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Polynomial::zero(u_)) {
        if (rows <= 0 || cols <= 0) throw Error("matrix dimensions must be positive");
    }

    static PolyMatrix identity(const SharedUniverse& u, int n) {
        PolyMatrix m(u, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(u, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SharedUniverse& universe() const { return u_; }

    Polynomial& at(int i, int j) { return a_[idx(i, j)]; }
    const Polynomial& at(int i, int j) const { return a_[idx(i, j)]; }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix dimension mismatch in product");
        PolyMatrix r(u_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                Polynomial s(u_);
                for (int k = 0; k < cols_; ++k) s += at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
        PolyMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    PolyMatrix scaled(const Polynomial& p) const {
        PolyMatrix r = *this;
        for (auto& e : r.a_) e = e * p;
        return r;
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero()) return false;
        return true;
    }

    // Column-evaluated matrix: substitutes in every entry.
    PolyMatrix substitute(const std::map<VarId, Polynomial>& bindings) const {
        PolyMatrix r = *this;
        for (auto& e : r.a_) e = e.substitute(bindings);
        return r;
    }

    Polynomial det() const {
        if (rows_ != cols_) throw Error("determinant of a non-square matrix");
        return det_rec(*this);
    }

    // adj(H) with H*adj(H) = adj(H)*H = det(H)*Id; the 1x1 adjugate is (1).
    PolyMatrix adjugate() const {
        if (rows_ != cols_) throw Error("adjugate of a non-square matrix");
        int n = rows_;
        PolyMatrix adj(u_, n, n);
        if (n == 1) {
            adj.at(0, 0) = Polynomial::constant(u_, 1);
            return adj;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Polynomial c = det_rec(minor_matrix(i, j));
                if ((i + j) & 1) c = -c;
                adj.at(j, i) = c;  // transposed cofactor
            }
        return adj;
    }

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error("matrix index out of range");
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    PolyMatrix minor_matrix(int drop_i, int drop_j) const {
        PolyMatrix m(u_, rows_ - 1, cols_ - 1);
        for (int i = 0, mi = 0; i < rows_; ++i) {
            if (i == drop_i) continue;
            for (int j = 0, mj = 0; j < cols_; ++j) {
                if (j == drop_j) continue;
                m.at(mi, mj) = at(i, j);
                ++mj;
            }
            ++mi;
        }
        return m;
    }

    static Polynomial det_rec(const PolyMatrix& m) {
        int n = m.rows_;
        if (n == 1) return m.at(0, 0);
        if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        Polynomial d(m.u_);
        for (int i = 0; i < n; ++i) {
            if (m.at(i, 0).is_zero()) continue;
            Polynomial c = m.at(i, 0) * det_rec(m.minor_matrix(i, 0));
            if (i & 1)
                d -= c;
            else
                d += c;
        }
        return d;
    }

    SharedUniverse u_;
    int rows_;
    int cols_;
    std::vector<Polynomial> a_;
};

}  // namespace neron
