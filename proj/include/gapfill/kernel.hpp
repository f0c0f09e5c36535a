#pragma once

// The spectral multiplier (1 on the passband, -w on the band), its exact
// inverse-transform taps, the masked recovering kernel, and diagnostics.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gapfill/band_space.hpp"
#include "gapfill/index_sets.hpp"

namespace gapfill {

struct TransferFunction {
    BandGeometry geom;
    DifferenceStructure structure;  // provenance; drives the exact-tap branch
    CosineSpan w;                   // band weight, orthogonal to {e_k}
};

TransferFunction make_transfer(const MissingIndexSet& T, long long n);

// Piecewise value: 1 for |omega| < pi - pi/n, -w(omega) for
// |omega| in [pi - pi/n, pi). The band edge takes the band value.
double transfer_eval(const TransferFunction& tf, double omega);

// Exact inverse-transform tap of the unmasked kernel.
//   t = 0:             0
//   |t| in S_T \ {0}:  sin(pi t - pi t / n) / (pi t), the band integral
//                      vanishes by orthogonality so the passband term is all
//                      that survives; evaluated with this literal expression
//                      so tests can assert bit equality
//   otherwise:         sin(L t)/(pi t) - (1/pi) (w, e_|t|)
double tilde_tap(const TransferFunction& tf, long long t);

struct RecoveryKernel {
    MissingIndexSet missing;  // the T the kernel was built for
    TransferFunction transfer;
    long long tap_radius = 0;

    // Masked tap: tilde_tap zeroed on the difference set, 0 beyond radius.
    double tap(long long t) const;
    // Unmasked tap (the pre-mask kernel), 0 beyond radius.
    double tap_unmasked(long long t) const;

    std::vector<double> masked_;    // index |t|, size radius + 1
    std::vector<double> unmasked_;
};

// tap_radius must cover the difference set (>= max S_T).
RecoveryKernel build_kernel(const MissingIndexSet& T, long long n,
                            long long tap_radius);

// True iff the tap table vanishes exactly (bit zero) on the difference set.
bool is_member_H_T(const RecoveryKernel& kernel);
bool is_member_H_T(const DifferenceStructure& structure,
                   const std::function<double(long long)>& tap);

// sup |transfer| over [-pi, pi]: uniform grid of grid_size points on [0, pi]
// (the function is even) plus refinement around the band edge and exact
// endpoint evaluations. grid_size >= 1000 required.
double kappa(const TransferFunction& tf, int grid_size = 4096);

// Integral of |transfer| over (-pi, pi): 2(pi - pi/n) plus the band integral
// of |w| by adaptive quadrature.
double l1_mass(const TransferFunction& tf);

// l1 norm of the mask correction: sum over t in S_T \ {0} of |tilde_tap(t)|.
// Bounds the spectral gap between the masked and unmasked kernels.
double mask_correction_l1(const TransferFunction& tf);

// Process-wide cache of built kernels keyed by (T, n, radius). Insertion is
// synchronized; returned kernels are immutable, so tap lookup after
// construction involves no locks.
class KernelCache {
  public:
    static KernelCache& instance();
    std::shared_ptr<const RecoveryKernel> get(const MissingIndexSet& T,
                                              long long n, long long tap_radius);

  private:
    std::mutex mu_;
    std::map<std::pair<std::vector<long long>, std::pair<long long, long long>>,
             std::shared_ptr<const RecoveryKernel>>
        cache_;
};

}  // namespace gapfill
