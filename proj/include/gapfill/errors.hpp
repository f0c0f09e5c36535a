#pragma once

#include <stdexcept>
#include <string>

namespace gapfill {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input (CLI flag validation, malformed index sets, bad files).
struct InvalidArgument : Error {
    using Error::Error;
};

// Gram matrix of the cosine family is numerically singular; carries the
// condition estimate that tripped the threshold.
struct IllConditioned : Error {
    double condition;
    IllConditioned(const std::string& msg, double cond)
        : Error(msg), condition(cond) {}
};

// The constant is numerically inside the projection span: (xi, e0) fell
// below the positivity floor, so the normalization would blow up.
struct DegenerateProjection : Error {
    double s;
    DegenerateProjection(const std::string& msg, double s_value)
        : Error(msg), s(s_value) {}
};

// A nonzero kernel tap would multiply a missing sample. Means the kernel
// was built for a different missing set than the window carries.
struct MaskViolation : Error {
    long long index;
    MaskViolation(const std::string& msg, long long offending_index)
        : Error(msg), index(offending_index) {}
};

// Window does not cover the full tap support and the caller did not opt
// into truncation.
struct WindowTooSmall : Error {
    using Error::Error;
};

// Relative-error denominator below floor.
struct ZeroSignal : Error {
    using Error::Error;
};

// Synthesized samples came out with a non-negligible imaginary part,
// i.e. the spectral profile lost Hermitian symmetry.
struct NonRealSignal : Error {
    double residue;
    NonRealSignal(const std::string& msg, double r) : Error(msg), residue(r) {}
};

// Diagnostic grid has too few samples inside the evaluation band.
struct GridTooCoarse : Error {
    using Error::Error;
};

}  // namespace gapfill
