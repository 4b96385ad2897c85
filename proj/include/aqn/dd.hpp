// Double-double scalar: an unevaluated sum hi + lo carrying ~31 significant
// decimal digits.  Needed because the flux-dominated linear systems at the
// extreme ends of the (Pi1, Pi2) box reach condition numbers ~1e17, where the
// pressure increments that drive the cubic-law fluxes fall below the
// resolution of a plain double.
#pragma once

#include <cmath>
#include <limits>

namespace aqn {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace detail {

// Error-free transforms (Knuth / Dekker).
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline DD operator+(DD a, DD b) {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - DD(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DD(q2) * b;
    double q3 = r.hi / b.hi;
    DD q = detail::quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { a = a + b; return a; }
inline DD& operator-=(DD& a, DD b) { a = a - b; return a; }
inline DD& operator*=(DD& a, DD b) { a = a * b; return a; }
inline DD& operator/=(DD& a, DD b) { a = a / b; return a; }

inline bool operator<(DD a, DD b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b)  { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(DD a, DD b) { return !(a == b); }

inline DD abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline DD sqrt(DD a) {
    if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
    double x = std::sqrt(a.hi);
    // one Newton step in double-double: x' = (x + a/x) / 2
    DD ax = a / DD(x);
    DD s = detail::two_sum(x, ax.hi);
    s.lo += ax.lo;
    s = detail::quick_two_sum(s.hi, s.lo);
    return s * DD(0.5);
}

inline double to_double(DD a) { return a.hi + a.lo; }
inline double to_double(double a) { return a; }

// Scalar shims so templated numerics read the same for double and DD.
inline double abs(double a) { return std::fabs(a); }
inline double sqrt_of(double a) { return std::sqrt(a); }
inline DD sqrt_of(DD a) { return sqrt(a); }

template <class Real> constexpr bool is_dd = false;
template <> inline constexpr bool is_dd<DD> = true;

} // namespace aqn
