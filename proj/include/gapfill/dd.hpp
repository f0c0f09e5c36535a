#pragma once

// Double-double arithmetic (~31 significant digits) used where plain doubles
// lose the digits we later assert on: the Gram-solve residual, the projection
// normalizer s = (xi, e0) which suffers catastrophic cancellation, and the
// inner-product accumulations the test suite checks at 1e-10 absolute.
//
// Requires that the compiler does not re-associate or contract these
// expressions; the build sets -ffp-contract=off.

#include <cmath>
#include <cstddef>

namespace gapfill::dd {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

// Error-free sum of two doubles (Knuth): hi + lo == a + b exactly.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Variant valid when |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

// Error-free product via FMA: hi + lo == a * b exactly.
inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD from(double a) { return {a, 0.0}; }
inline double to_double(const DD& a) { return a.hi + a.lo; }

inline DD add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD neg(const DD& a) { return {-a.hi, -a.lo}; }
inline DD sub(const DD& a, const DD& b) { return add(a, neg(b)); }
inline DD sub(const DD& a, double b) { return add(a, -b); }

inline DD mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD div(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return add(q, q3);
}

// sum_i x[i] * y[i] accumulated in double-double.
inline DD dot(const double* x, const double* y, std::size_t n) {
    DD acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc = add(acc, two_prod(x[i], y[i]));
    }
    return acc;
}

}  // namespace gapfill::dd
