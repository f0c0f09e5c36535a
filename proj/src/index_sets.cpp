#include "gapfill/index_sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "gapfill/errors.hpp"

namespace gapfill {

MissingIndexSet MissingIndexSet::from(std::vector<long long> times) {
    if (times.empty()) {
        throw InvalidArgument("missing-time set must be non-empty");
    }
    std::sort(times.begin(), times.end());
    auto dup = std::adjacent_find(times.begin(), times.end());
    if (dup != times.end()) {
        throw InvalidArgument("duplicate missing time: " + std::to_string(*dup));
    }
    return MissingIndexSet{std::move(times)};
}

long long MissingIndexSet::max_abs() const {
    long long m = 0;
    for (long long t : times) m = std::max(m, std::llabs(t));
    return m;
}

bool DifferenceStructure::contains(long long t) const {
    return std::binary_search(s_T.begin(), s_T.end(), t);
}

std::vector<long long> difference_set(const MissingIndexSet& T) {
    std::set<long long> diffs;
    for (long long t : T.times) {
        for (long long s : T.times) {
            diffs.insert(t - s);
        }
    }
    return {diffs.begin(), diffs.end()};
}

DifferenceStructure partition(const MissingIndexSet& T, long long n) {
    if (n < 2) {
        throw InvalidArgument("band parameter n must be >= 2, got " +
                              std::to_string(n));
    }
    DifferenceStructure d;
    d.n = n;
    d.s_T = difference_set(T);
    for (long long s : d.s_T) {
        if (s > 0) d.p_T.push_back(s);
    }
    for (long long s : d.p_T) {
        (s % n == 0 ? d.p_nT : d.pbar_nT).push_back(s);
    }
    d.ordering = d.p_nT;
    d.ordering.insert(d.ordering.end(), d.pbar_nT.begin(), d.pbar_nT.end());
    return d;
}

}  // namespace gapfill
