#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "densecode/bounds.hpp"
#include "densecode/linalg.hpp"
#include "densecode/states.hpp"

namespace densecode {

/// -sum l log2 l over a clamped spectrum; 0 log 0 = 0.
inline double entropy_of_spectrum(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double l : clamp_spectrum(eigenvalues)) {
        if (l > 0.0) s -= l * std::log2(l);
    }
    return s;
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    return entropy_of_spectrum(eig_hermitian(rho).values);
}

inline double von_neumann_entropy(const DensityOperator& rho) {
    return entropy_of_spectrum(rho.spectrum());
}

struct CapacityReport {
    double p = std::numeric_limits<double>::quiet_NaN();  // NaN when not from a family
    double chi = 0.0;
    double S_B = 0.0;
    double S_AB = 0.0;
    double log2_dA = 0.0;
    bool dense_codeable = false;
};

/// chi = log2 dA + S(rho_B) - S(rho_AB). Not clamped; dense codeable iff S_B > S_AB.
inline CapacityReport dense_coding_capacity(const DensityOperator& rho) {
    CapacityReport r;
    r.log2_dA = std::log2(static_cast<double>(rho.dA()));
    r.S_B = von_neumann_entropy(rho.marginal(Keep::B));
    r.S_AB = von_neumann_entropy(rho);
    r.chi = r.log2_dA + r.S_B - r.S_AB;
    r.dense_codeable = r.S_B > r.S_AB;
    return r;
}

inline CapacityReport dense_coding_capacity(const StateFamily& family, double p) {
    CapacityReport r = dense_coding_capacity(family(p));
    r.p = p;
    return r;
}

// ---------------------------------------------------------------------------
// Steerability

enum class SteerRule { WernerFigure1, IsotropicHd };

inline std::string to_string(SteerRule rule) {
    return rule == SteerRule::WernerFigure1 ? "werner-figure1" : "isotropic-Hd";
}

struct SteerVerdict {
    bool steerable = false;
    SteerRule rule = SteerRule::IsotropicHd;
    double threshold = 0.0;
};

struct SteerOptions {
    /// Half-width of the unsteerable window around 1/sqrt(3) for Werner states.
    double werner_window = 1e-9;
};

/**
 * Werner: unsteerable at p = 0 and within werner_window of 1/sqrt(3), steerable
 * everywhere else on [0, 1]. Isotropic-d: steerable iff p > (H_d - 1)/(d - 1).
 */
inline SteerVerdict is_steerable(const StateFamily& family, double p, SteerOptions options = {}) {
    require_unit_interval(p);
    switch (family.kind) {
        case FamilyKind::Werner: {
            const double point = werner_unsteerable_point();
            const bool unsteerable = p == 0.0 || std::abs(p - point) <= options.werner_window;
            return {!unsteerable, SteerRule::WernerFigure1, point};
        }
        case FamilyKind::Isotropic: {
            const double t = steerability_threshold(family.d);
            return {p > t, SteerRule::IsotropicHd, t};
        }
    }
    throw invalid_argument("unknown family");
}

// ---------------------------------------------------------------------------
// Concurrence

/// Eigenvalues below this are treated as outside the support of rho.
inline constexpr double kSupportCutoff = 1e-13;

/**
 * Wootters concurrence of a two-qubit state, max(0, l1 - l2 - l3 - l4).
 *
 * The l_i are the singular values of tau_ij = w_i^T (sy x sy) w_j, where
 * w_i = sqrt(mu_i) e_i runs over the eigen-decomposition of rho restricted to
 * its support. Working on the support keeps pure states exact instead of
 * taking square roots of rounding noise.
 */
inline double concurrence(const DensityOperator& rho) {
    if (rho.dA() != 2 || rho.dB() != 2) throw invalid_argument("concurrence needs a 2x2 state");

    const EigenResult eig = eig_hermitian(rho.matrix());
    std::vector<std::vector<Complex>> weighted;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= kSupportCutoff) continue;
        std::vector<Complex> w = eig.vector(k);
        for (Complex& z : w) z *= std::sqrt(eig.values[k]);
        weighted.push_back(std::move(w));
    }

    // sy x sy in the computational basis.
    const ComplexMatrix flip(4, {0, 0, 0, -1,  //
                                 0, 0, 1, 0,   //
                                 0, 1, 0, 0,   //
                                 -1, 0, 0, 0});
    const std::size_t r = weighted.size();
    ComplexMatrix tau(r);
    for (std::size_t i = 0; i < r; ++i) {
        const std::vector<Complex> conj_wi = [&] {
            std::vector<Complex> c(weighted[i]);
            for (Complex& z : c) z = std::conj(z);
            return c;
        }();
        for (std::size_t j = 0; j < r; ++j) tau(i, j) = inner(conj_wi, mat_vec(flip, weighted[j]));
    }

    std::vector<double> lambdas;
    if (r == 1) {
        lambdas.push_back(std::abs(tau(0, 0)));
    } else {
        for (double x : eig_hermitian(hermitian_part(tau * dagger(tau))).values)
            lambdas.push_back(std::sqrt(std::max(0.0, x)));
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    double c = lambdas.empty() ? 0.0 : lambdas[0];
    for (std::size_t i = 1; i < lambdas.size(); ++i) c -= lambdas[i];
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace densecode
