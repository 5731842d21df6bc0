#pragma once

// Closed-form steering bounds. Part of the thresholds module; split out so the
// steerability verdicts in measures.hpp can use them without a cycle.

#include <cmath>
#include <cstddef>
#include <string>

#include "densecode/error.hpp"

namespace densecode {

/// H_d = 1 + 1/2 + ... + 1/d
inline double harmonic_number(std::size_t d) {
    if (d < 1) throw invalid_argument("harmonic_number needs d >= 1");
    double sum = 0.0;
    // Smallest terms first.
    for (std::size_t n = d; n >= 1; --n) sum += 1.0 / static_cast<double>(n);
    return sum;
}

/// Isotropic states on C^d x C^d are steerable iff p > (H_d - 1)/(d - 1).
inline double steerability_threshold(std::size_t d) {
    if (d < 2) throw invalid_argument("steerability_threshold needs d >= 2, got " + std::to_string(d));
    return (harmonic_number(d) - 1.0) / static_cast<double>(d - 1);
}

/// The single Werner parameter reported unsteerable away from p = 0.
inline double werner_unsteerable_point() { return 1.0 / std::sqrt(3.0); }

}  // namespace densecode
