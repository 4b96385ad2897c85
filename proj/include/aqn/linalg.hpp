// Small dense linear algebra on row-major matrices.  Problem sizes in this
// code stay below a few hundred, so everything is dense and direct.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqn/dd.hpp"

namespace aqn {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class Real>
using Vec = std::vector<Real>;

template <class Real>
struct Matrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<Real> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : n_rows(r), n_cols(c), data(r * c, Real(0)) {}

    Real& operator()(std::size_t i, std::size_t j) { return data[i * n_cols + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return data[i * n_cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1);
        return m;
    }
};

template <class Real>
Matrix<Real> operator+(const Matrix<Real>& a, const Matrix<Real>& b) {
    Matrix<Real> r(a.n_rows, a.n_cols);
    for (std::size_t k = 0; k < a.data.size(); ++k) r.data[k] = a.data[k] + b.data[k];
    return r;
}

template <class Real>
Vec<Real> matvec(const Matrix<Real>& m, const Vec<Real>& x) {
    Vec<Real> y(m.n_rows, Real(0));
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        Real acc(0);
        for (std::size_t j = 0; j < m.n_cols; ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <class Real>
Real norm2(const Vec<Real>& x) {
    Real acc(0);
    for (const Real& v : x) acc += v * v;
    return sqrt_of(acc);
}

template <class Real>
Real norm_inf(const Vec<Real>& x) {
    Real m(0);
    for (const Real& v : x) {
        Real a = abs(v);
        if (a > m) m = a;
    }
    return m;
}

template <class Real>
Real norm1(const Vec<Real>& x) {
    Real acc(0);
    for (const Real& v : x) acc += abs(v);
    return acc;
}

inline Matrix<DD> to_dd(const Matrix<double>& m) {
    Matrix<DD> r(m.n_rows, m.n_cols);
    for (std::size_t k = 0; k < m.data.size(); ++k) r.data[k] = DD(m.data[k]);
    return r;
}

inline Vec<DD> to_dd(const Vec<double>& v) {
    Vec<DD> r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = DD(v[k]);
    return r;
}

inline Vec<double> to_double_vec(const Vec<DD>& v) {
    Vec<double> r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = to_double(v[k]);
    return r;
}

inline const Vec<double>& to_double_vec(const Vec<double>& v) { return v; }

// Relative pivot floor declaring a matrix numerically singular: ~100x the
// round-off unit of the arithmetic (1e-14 in double, 1e-29 in double-double).
template <class Real>
inline constexpr double pivot_rtol = 1e-14;
template <>
inline constexpr double pivot_rtol<DD> = 1e-29;

// LU factorization with partial pivoting.  A pivot that underflows the
// relative threshold against the largest pivot seen so far signals a
// singular matrix.
template <class Real>
struct LuFactor {
    Matrix<Real> lu;
    std::vector<std::size_t> perm;

    explicit LuFactor(Matrix<Real> m) : lu(std::move(m)), perm(lu.n_rows) {
        const std::size_t n = lu.n_rows;
        if (lu.n_cols != n) throw std::invalid_argument("LuFactor: matrix must be square");
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        Real max_pivot(0);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            Real best = abs(lu(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                Real a = abs(lu(i, k));
                if (a > best) { best = a; piv = i; }
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
                std::swap(perm[k], perm[piv]);
            }
            Real p = abs(lu(k, k));
            if (p > max_pivot) max_pivot = p;
            if (!(p > Real(pivot_rtol<Real>) * max_pivot))
                throw SingularMatrixError("singular matrix: pivot " + std::to_string(k) +
                                          " underflows relative threshold");
            for (std::size_t i = k + 1; i < n; ++i) {
                Real f = lu(i, k) / lu(k, k);
                lu(i, k) = f;
                for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    Vec<Real> solve(const Vec<Real>& b) const {
        const std::size_t n = lu.n_rows;
        Vec<Real> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (std::size_t i = 1; i < n; ++i) {
            Real acc = x[i];
            for (std::size_t j = 0; j < i; ++j) acc -= lu(i, j) * x[j];
            x[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            Real acc = x[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * x[j];
            x[i] = acc / lu(i, i);
        }
        return x;
    }
};

// Residual b - M x accumulated in double-double.
inline Vec<DD> residual_dd(const Matrix<double>& m, const Vec<DD>& x, const Vec<double>& b) {
    const std::size_t n = m.n_rows;
    Vec<DD> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        DD acc(b[i]);
        for (std::size_t j = 0; j < n; ++j) acc -= DD(m(i, j)) * x[j];
        r[i] = acc;
    }
    return r;
}

// Dense solve with partial pivoting plus compensated iterative refinement.
// Gives a backward error near round-off whenever the condition number stays
// below ~1e15; the fully double-double path in the solvers covers the rest.
inline Vec<double> linear_solve(const Matrix<double>& m, const Vec<double>& b) {
    LuFactor<double> f(m);
    Vec<double> x = f.solve(b);
    Vec<DD> xd = to_dd(x);
    for (int pass = 0; pass < 3; ++pass) {
        Vec<DD> r = residual_dd(m, xd, b);
        Vec<double> rh(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) rh[i] = to_double(r[i]);
        Vec<double> dx = f.solve(rh);
        double nd = norm2(dx), nx = norm2(to_double_vec(xd));
        for (std::size_t i = 0; i < dx.size(); ++i) xd[i] += DD(dx[i]);
        if (nd <= 1e-18 * nx) break;
    }
    return to_double_vec(xd);
}

inline Vec<DD> linear_solve(const Matrix<DD>& m, const Vec<DD>& b) {
    LuFactor<DD> f(m);
    return f.solve(b);
}

} // namespace aqn
