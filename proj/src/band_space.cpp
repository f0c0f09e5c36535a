#include "gapfill/band_space.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "gapfill/dd.hpp"
#include "gapfill/errors.hpp"

namespace gapfill {

BandGeometry BandGeometry::make(long long n) {
    if (n < 2) {
        throw InvalidArgument("band parameter n must be >= 2, got " +
                              std::to_string(n));
    }
    return BandGeometry{n};
}

double BandGeometry::lower() const { return M_PI - M_PI / static_cast<double>(n); }
double BandGeometry::width() const { return M_PI / static_cast<double>(n); }
double BandGeometry::passband_mass() const { return lower(); }

double CosineSpan::eval(double omega) const {
    double acc = 0.0;
    for (const auto& t : terms) {
        acc += t.coeff * std::cos(static_cast<double>(t.freq) * omega);
    }
    return acc;
}

double inner_product(long long a, long long b, const BandGeometry& geom) {
    if (a < 0 || b < 0) {
        throw InvalidArgument("inner_product frequencies must be nonnegative");
    }
    const double L = geom.lower();
    const double nd = static_cast<double>(geom.n);
    if (a == 0 && b == 0) {
        return M_PI / nd;
    }
    if (a == b) {
        const double ad = static_cast<double>(a);
        return M_PI / (2.0 * nd) - std::sin(2.0 * ad * L) / (4.0 * ad);
    }
    // sin(m pi) = 0 for integer m kills the upper endpoint terms.
    const double dmn = static_cast<double>(a - b);
    const double dpl = static_cast<double>(a + b);
    return -0.5 * (std::sin(dmn * L) / dmn + std::sin(dpl * L) / dpl);
}

double span_inner(const CosineSpan& f, long long freq, const BandGeometry& geom) {
    dd::DD acc{0.0, 0.0};
    for (const auto& t : f.terms) {
        acc = dd::add(acc, dd::two_prod(t.coeff, inner_product(t.freq, freq, geom)));
    }
    return dd::to_double(acc);
}

double span_inner(const CosineSpan& f, const CosineSpan& g, const BandGeometry& geom) {
    dd::DD acc{0.0, 0.0};
    for (const auto& tf : f.terms) {
        for (const auto& tg : g.terms) {
            acc = dd::add(acc, dd::two_prod(tf.coeff * tg.coeff,
                                            inner_product(tf.freq, tg.freq, geom)));
        }
    }
    return dd::to_double(acc);
}

double span_norm_sq(const CosineSpan& f, const BandGeometry& geom) {
    return span_inner(f, f, geom);
}

namespace {

// Shared construction state for xi and w.
struct GramSystem {
    std::vector<long long> freqs;  // ordering t_1..t_q
    Eigen::MatrixXd G;             // (e_j, e_k)
    Eigen::VectorXd g;             // (e_0, e_k)
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    Eigen::VectorXd c;             // projection coefficients
    double condition = 1.0;
};

double condition_estimate(const Eigen::MatrixXd& G) {
    if (G.rows() == 0) return 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

// Residual r = g - G c with double-double accumulation per row. The refined
// c then carries a residual near the storage floor of double coefficients,
// which is what bounds the orthogonality defect of w.
Eigen::VectorXd refined_residual(const GramSystem& sys) {
    const auto q = sys.g.size();
    Eigen::VectorXd r(q);
    for (Eigen::Index k = 0; k < q; ++k) {
        dd::DD acc = dd::from(sys.g[k]);
        for (Eigen::Index j = 0; j < q; ++j) {
            acc = dd::sub(acc, dd::two_prod(sys.G(k, j), sys.c[j]));
        }
        r[k] = dd::to_double(acc);
    }
    return r;
}

GramSystem solve_gram(const DifferenceStructure& structure, const BandGeometry& geom) {
    GramSystem sys;
    sys.freqs = structure.ordering;
    const auto q = static_cast<Eigen::Index>(sys.freqs.size());
    sys.G.resize(q, q);
    sys.g.resize(q);
    for (Eigen::Index j = 0; j < q; ++j) {
        sys.g[j] = inner_product(0, sys.freqs[j], geom);
        for (Eigen::Index k = 0; k <= j; ++k) {
            const double v = inner_product(sys.freqs[j], sys.freqs[k], geom);
            sys.G(j, k) = v;
            sys.G(k, j) = v;
        }
    }
    sys.condition = condition_estimate(sys.G);
    if (!(sys.condition < kIllConditionedThreshold)) {
        throw IllConditioned(
            "Gram matrix condition estimate " + std::to_string(sys.condition) +
                " exceeds " + std::to_string(kIllConditionedThreshold) +
                "; reduce n or the missing-set size",
            sys.condition);
    }
    if (q == 0) {
        return sys;
    }
    sys.ldlt.compute(sys.G);
    sys.c = sys.ldlt.solve(sys.g);
    for (int iter = 0; iter < 2; ++iter) {
        sys.c += sys.ldlt.solve(refined_residual(sys)).eval();
    }
    return sys;
}

// (xi, e0) = pi/n - g.c, evaluated in double-double. The subtraction cancels
// almost completely when e0 is nearly inside the span, which is exactly the
// regime the DegenerateProjection floor guards.
dd::DD projection_normalizer(const GramSystem& sys, const BandGeometry& geom) {
    dd::DD s = dd::from(inner_product(0, 0, geom));
    for (Eigen::Index j = 0; j < sys.g.size(); ++j) {
        s = dd::sub(s, dd::two_prod(sys.g[j], sys.c[j]));
    }
    return s;
}

CosineSpan span_from(const GramSystem& sys, const BandGeometry& geom,
                     double c0, double scale) {
    CosineSpan out;
    out.n = geom.n;
    out.terms.push_back({0, c0});
    for (Eigen::Index j = 0; j < sys.g.size(); ++j) {
        out.terms.push_back({sys.freqs[j], -scale * sys.c[j]});
    }
    return out;
}

// Final polish in the represented space: measure the actual inner products of
// the stored double coefficients (exact via double-double) and solve the same
// Gram system for a correction. Two sweeps push the orthogonality defect to
// the coefficient-quantization floor.
void polish_w(CosineSpan* w_span, const GramSystem& sys, const BandGeometry& geom) {
    const auto q = sys.g.size();
    if (q == 0) return;
    const double target = geom.passband_mass();
    for (int sweep = 0; sweep < 2; ++sweep) {
        Eigen::VectorXd r(q);
        for (Eigen::Index k = 0; k < q; ++k) {
            r[k] = span_inner(*w_span, sys.freqs[k], geom);
        }
        const Eigen::VectorXd delta = sys.ldlt.solve(r);
        for (Eigen::Index k = 0; k < q; ++k) {
            w_span->terms[static_cast<std::size_t>(k) + 1].coeff -= delta[k];
        }
        const double r0 = span_inner(*w_span, 0, geom) - target;
        w_span->terms[0].coeff -= r0 / inner_product(0, 0, geom);
    }
}

}  // namespace

double gram_condition(const DifferenceStructure& structure, const BandGeometry& geom) {
    const auto& freqs = structure.ordering;
    const auto q = static_cast<Eigen::Index>(freqs.size());
    Eigen::MatrixXd G(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            const double v = inner_product(freqs[j], freqs[k], geom);
            G(j, k) = v;
            G(k, j) = v;
        }
    }
    return condition_estimate(G);
}

CosineSpan xi(const DifferenceStructure& structure, const BandGeometry& geom,
              ProjectionInfo* info) {
    GramSystem sys = solve_gram(structure, geom);
    if (info) {
        info->condition = sys.condition;
        info->s = dd::to_double(projection_normalizer(sys, geom));
    }
    return span_from(sys, geom, 1.0, 1.0);
}

CosineSpan w(const DifferenceStructure& structure, const BandGeometry& geom,
             ProjectionInfo* info) {
    GramSystem sys = solve_gram(structure, geom);
    const dd::DD s = projection_normalizer(sys, geom);
    const double s_val = dd::to_double(s);
    if (!(s_val > kDegenerateFloor)) {
        throw DegenerateProjection(
            "projection normalizer (xi, e0) = " + std::to_string(s_val) +
                " is at or below the positivity floor; the constant is "
                "numerically inside the span",
            s_val);
    }
    if (info) {
        info->condition = sys.condition;
        info->s = s_val;
    }
    // scale = (pi - pi/n) / s in double-double, then round per coefficient.
    const dd::DD scale = dd::div(dd::from(geom.passband_mass()), s);
    CosineSpan out;
    out.n = geom.n;
    out.terms.push_back({0, dd::to_double(scale)});
    for (Eigen::Index j = 0; j < sys.g.size(); ++j) {
        out.terms.push_back(
            {sys.freqs[j], dd::to_double(dd::mul(scale, -sys.c[j]))});
    }
    polish_w(&out, sys, geom);
    return out;
}

CosineSpan xi_gram_schmidt(const DifferenceStructure& structure,
                           const BandGeometry& geom) {
    const auto& freqs = structure.ordering;
    const auto q = static_cast<Eigen::Index>(freqs.size());
    Eigen::MatrixXd G(q, q);
    Eigen::VectorXd g(q);
    for (Eigen::Index j = 0; j < q; ++j) {
        g[j] = inner_product(0, freqs[j], geom);
        for (Eigen::Index k = 0; k <= j; ++k) {
            const double v = inner_product(freqs[j], freqs[k], geom);
            G(j, k) = v;
            G(k, j) = v;
        }
    }
    // Orthonormal v_k as coefficient vectors over {e_1..e_q}; inner products
    // of coefficient vectors u, v are u' G v.
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index k = 0; k < q; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(q);
        v[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {  // MGS plus one reorthogonalization
            for (const auto& u : basis) {
                v -= (u.dot(G * v)) * u;
            }
        }
        const double norm = std::sqrt(v.dot(G * v));
        basis.push_back(v / norm);
    }
    // Projection coefficients of e0: sum_k (e0, v_k) v_k.
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(q);
    for (const auto& v : basis) {
        proj += g.dot(v) * v;
    }
    CosineSpan out;
    out.n = geom.n;
    out.terms.push_back({0, 1.0});
    for (Eigen::Index j = 0; j < q; ++j) {
        out.terms.push_back({freqs[j], -proj[j]});
    }
    return out;
}

}  // namespace gapfill
