#pragma once

#include <cstddef>
#include <vector>

namespace gapfill {

// The finite set of missing-sample times. Sorted, distinct, non-empty.
struct MissingIndexSet {
    std::vector<long long> times;

    // Validates and normalizes (sorts). Duplicates are rejected, not
    // deduplicated: a repeated time in user input is almost always a typo.
    static MissingIndexSet from(std::vector<long long> times);

    long long max_abs() const;
};

// Difference set of the missing times plus the divisibility partition of its
// positive part for a given band parameter n.
struct DifferenceStructure {
    long long n = 0;                  // band parameter, >= 2
    std::vector<long long> s_T;       // {t - s : t, s in T}, sorted
    std::vector<long long> p_T;       // positive part of s_T
    std::vector<long long> p_nT;      // members of p_T divisible by n
    std::vector<long long> pbar_nT;   // the rest of p_T
    std::vector<long long> ordering;  // p_nT block first, then pbar_nT, each ascending

    std::size_t p() const { return p_nT.size(); }
    std::size_t q() const { return p_T.size(); }
    bool contains(long long t) const;  // membership in s_T
};

// {t - s : t, s in T}; symmetric about 0 and contains 0.
std::vector<long long> difference_set(const MissingIndexSet& T);

// Builds the partition for band parameter n (n >= 2, else InvalidArgument).
DifferenceStructure partition(const MissingIndexSet& T, long long n);

}  // namespace gapfill
