#include "aqn/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aqn {
namespace {

// Diagonal similarity scaling by powers of two until row and column norms
// roughly agree (EISPACK-style balancing, exact in floating point).
void balance(Matrix<double>& a) {
    const std::size_t n = a.n_rows;
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) { f *= radix; c *= radix * radix; }
            g = r * radix;
            while (c > g) { f /= radix; c /= radix * radix; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
void hessenberg(Matrix<double>& a) {
    const std::size_t n = a.n_rows;
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::fabs(a(i, k));
        if (scale == 0.0) continue;
        double h = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            h += v[i] * v[i];
        }
        double g = v[k + 1] >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        for (std::size_t j = 0; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) f += v[i] * a(i, j);
            f /= h;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double f = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) f += a(i, j) * v[j];
            f /= h;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * v[j];
        }
        a(k + 1, k) = scale * g;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

} // namespace

// Francis double-shift QR on the Hessenberg form, eigenvalues only.
Spectrum eigenvalues(const Matrix<double>& m_in) {
    if (m_in.n_rows != m_in.n_cols) throw std::invalid_argument("eigenvalues: square matrix required");
    const long n = static_cast<long>(m_in.n_rows);
    Spectrum out;
    if (n == 0) return out;

    Matrix<double> a = m_in;
    balance(a);
    hessenberg(a);

    const double eps = std::numeric_limits<double>::epsilon();
    double anorm = 0.0;
    for (long i = 0; i < n; ++i)
        for (long j = std::max(i - 1, 0L); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) anorm = 1.0;

    auto& eig = out.eigenvalues;
    long nn = n - 1;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, x, y, z = 0.0, w, s, u, v;
    while (nn >= 0) {
        long its = 0;
        long l;
        do {
            for (l = nn; l >= 1; --l) {
                s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a(nn, nn);
            if (l == nn) {
                eig.emplace_back(x + t, 0.0);
                --nn;
            } else {
                y = a(nn - 1, nn - 1);
                w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        eig.emplace_back(x + z, 0.0);
                        eig.emplace_back(z != 0.0 ? x - w / z : x + z, 0.0);
                    } else {
                        eig.emplace_back(x + p, -z);
                        eig.emplace_back(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if (its == 30)
                        throw EigenConvergenceError("QR iteration failed to deflate");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (long i = 0; i <= nn; ++i) a(i, i) -= x;
                        s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    long m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) +
                                            std::fabs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (long i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (long k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = k != nn - 1 ? a(k + 2, k - 1) : 0.0;
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (long j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        long mmin = nn < k + 3 ? nn : k + 3;
                        for (long i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }

    for (const auto& lam : eig) out.rho = std::max(out.rho, std::abs(lam));
    return out;
}

} // namespace aqn
