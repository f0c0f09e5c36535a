#include "gapfill/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gapfill/errors.hpp"
#include "gapfill/quadrature.hpp"

namespace gapfill {

TransferFunction make_transfer(const MissingIndexSet& T, long long n) {
    const BandGeometry geom = BandGeometry::make(n);
    DifferenceStructure structure = partition(T, n);
    CosineSpan wn = w(structure, geom);
    return TransferFunction{geom, std::move(structure), std::move(wn)};
}

double transfer_eval(const TransferFunction& tf, double omega) {
    const double a = std::abs(omega);
    if (a < tf.geom.lower()) {
        return 1.0;
    }
    return -tf.w.eval(a);
}

double tilde_tap(const TransferFunction& tf, long long t) {
    if (t == 0) {
        return 0.0;
    }
    const long long a = std::llabs(t);
    const double td = static_cast<double>(t);
    const double nd = static_cast<double>(tf.geom.n);
    if (tf.structure.contains(a)) {
        // Band term is exactly zero by orthogonality of w to cos(a w).
        return std::sin(M_PI * td - M_PI * td / nd) / (M_PI * td);
    }
    const double passband = std::sin(tf.geom.lower() * td) / (M_PI * td);
    return passband - span_inner(tf.w, a, tf.geom) / M_PI;
}

double RecoveryKernel::tap(long long t) const {
    const long long a = std::llabs(t);
    if (a > tap_radius) return 0.0;
    return masked_[static_cast<std::size_t>(a)];
}

double RecoveryKernel::tap_unmasked(long long t) const {
    const long long a = std::llabs(t);
    if (a > tap_radius) return 0.0;
    return unmasked_[static_cast<std::size_t>(a)];
}

RecoveryKernel build_kernel(const MissingIndexSet& T, long long n,
                            long long tap_radius) {
    RecoveryKernel k{T, make_transfer(T, n), tap_radius, {}, {}};
    const long long max_s = k.transfer.structure.s_T.back();
    if (tap_radius < max_s) {
        throw InvalidArgument("tap_radius " + std::to_string(tap_radius) +
                              " smaller than the difference-set bound " +
                              std::to_string(max_s));
    }
    k.unmasked_.resize(static_cast<std::size_t>(tap_radius) + 1);
    k.masked_.resize(static_cast<std::size_t>(tap_radius) + 1);
    for (long long t = 0; t <= tap_radius; ++t) {
        const double v = tilde_tap(k.transfer, t);
        k.unmasked_[static_cast<std::size_t>(t)] = v;
        k.masked_[static_cast<std::size_t>(t)] =
            k.transfer.structure.contains(t) ? 0.0 : v;
    }
    return k;
}

bool is_member_H_T(const DifferenceStructure& structure,
                   const std::function<double(long long)>& tap) {
    for (long long s : structure.s_T) {
        if (tap(s) != 0.0) return false;
    }
    return true;
}

bool is_member_H_T(const RecoveryKernel& kernel) {
    return is_member_H_T(kernel.transfer.structure,
                         [&kernel](long long t) { return kernel.tap(t); });
}

double kappa(const TransferFunction& tf, int grid_size) {
    if (grid_size < 1000) {
        throw InvalidArgument("kappa grid must have at least 1000 points");
    }
    const double L = tf.geom.lower();
    double best = 1.0;  // passband value
    const double h = M_PI / static_cast<double>(grid_size);
    for (int i = 0; i <= grid_size; ++i) {
        best = std::max(best, std::abs(transfer_eval(tf, h * static_cast<double>(i))));
    }
    // Refine around the band edge where the piecewise switch sits.
    const double h2 = 2.0 * h / 64.0;
    for (int i = 0; i <= 64; ++i) {
        const double om = L - h + h2 * static_cast<double>(i);
        if (om >= 0.0 && om <= M_PI) {
            best = std::max(best, std::abs(transfer_eval(tf, om)));
        }
    }
    best = std::max(best, std::abs(transfer_eval(tf, L)));
    best = std::max(best, std::abs(transfer_eval(tf, M_PI)));
    return best;
}

double l1_mass(const TransferFunction& tf) {
    const double band = integrate(
                            [&tf](double om) { return std::abs(tf.w.eval(om)); },
                            tf.geom.lower(), M_PI, 1e-10, {}, 4000)
                            .value;
    return 2.0 * tf.geom.passband_mass() + 2.0 * band;
}

double mask_correction_l1(const TransferFunction& tf) {
    double acc = 0.0;
    for (long long s : tf.structure.p_T) {
        acc += 2.0 * std::abs(tilde_tap(tf, s));  // taps are even
    }
    return acc;
}

KernelCache& KernelCache::instance() {
    static KernelCache cache;
    return cache;
}

std::shared_ptr<const RecoveryKernel> KernelCache::get(const MissingIndexSet& T,
                                                       long long n,
                                                       long long tap_radius) {
    const auto key = std::make_pair(T.times, std::make_pair(n, tap_radius));
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    // Build outside the lock; a racing duplicate build is harmless and the
    // first insert wins.
    auto built = std::make_shared<const RecoveryKernel>(build_kernel(T, n, tap_radius));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(built));
    return it->second;
}

}  // namespace gapfill
