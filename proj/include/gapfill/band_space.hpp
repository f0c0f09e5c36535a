#pragma once

// Linear algebra in L2(D_n), D_n = (pi - pi/n, pi), over the family
// {cos(t w)} with integer frequencies. Inner products have closed forms, so
// projections reduce to a small symmetric positive-definite Gram system.

#include <vector>

#include "gapfill/index_sets.hpp"

namespace gapfill {

struct BandGeometry {
    long long n = 2;  // >= 2

    static BandGeometry make(long long n);

    double lower() const;        // pi - pi/n, left edge of D_n
    double width() const;        // pi/n
    double passband_mass() const;  // pi - pi/n, also the normalization target
};

struct CosineTerm {
    long long freq = 0;  // nonnegative; 0 means the constant
    double coeff = 0.0;
};

// f(w) = sum_k coeff_k * cos(freq_k * w). Even in w by construction, which
// realizes the required even extension onto the mirrored band.
struct CosineSpan {
    long long n = 2;  // band parameter the span lives on
    std::vector<CosineTerm> terms;

    double eval(double omega) const;
};

// Numerical limits of the construction.
inline constexpr double kIllConditionedThreshold = 1e12;
inline constexpr double kDegenerateFloor = 1e-13;

// Closed-form integral of cos(a w) cos(b w) over D_n.
double inner_product(long long a, long long b, const BandGeometry& geom);

// (span, e_freq) in L2(D_n), accumulated in double-double so the result is
// exact for the coefficients as stored. This is what the orthogonality
// assertions measure.
double span_inner(const CosineSpan& f, long long freq, const BandGeometry& geom);

// (f, g) in L2(D_n) by expanding both spans.
double span_inner(const CosineSpan& f, const CosineSpan& g, const BandGeometry& geom);
double span_norm_sq(const CosineSpan& f, const BandGeometry& geom);

// Eigenvalue-based condition estimate of the Gram matrix of {e_k : k in P_T}.
// Returns 1 for an empty family; +inf when the smallest eigenvalue is <= 0.
double gram_condition(const DifferenceStructure& structure, const BandGeometry& geom);

struct ProjectionInfo {
    double s = 0.0;         // (xi, e0) = ||xi||^2, the normalizer
    double condition = 1.0; // Gram condition estimate
};

// xi = e0 - (projection of e0 onto span{e_k : k in P_T}).
// Throws IllConditioned when the Gram condition estimate exceeds
// kIllConditionedThreshold.
CosineSpan xi(const DifferenceStructure& structure, const BandGeometry& geom,
              ProjectionInfo* info = nullptr);

// w = (pi - pi/n) * xi / (xi, e0). Normalized so (w, e0) = pi - pi/n and
// (w, e_k) = 0 for every k. Throws DegenerateProjection when (xi, e0) falls
// to kDegenerateFloor or below.
CosineSpan w(const DifferenceStructure& structure, const BandGeometry& geom,
             ProjectionInfo* info = nullptr);

// Reference implementation of xi by sequential modified Gram-Schmidt with one
// reorthogonalization sweep. Kept for the equivalence test against the
// Gram-solve path; not used in production.
CosineSpan xi_gram_schmidt(const DifferenceStructure& structure,
                           const BandGeometry& geom);

}  // namespace gapfill
