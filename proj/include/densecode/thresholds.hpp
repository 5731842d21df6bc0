#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "densecode/bounds.hpp"
#include "densecode/measures.hpp"
#include "densecode/states.hpp"

namespace densecode {

enum class ThresholdKind { DenseCoding, Steerability };

inline std::string to_string(ThresholdKind kind) {
    return kind == ThresholdKind::DenseCoding ? "dense-coding" : "steerability";
}

struct ThresholdResult {
    StateFamily family;
    ThresholdKind kind = ThresholdKind::DenseCoding;
    double p_star = 0.0;
    double tolerance = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;  // g < 0 here
    double bracket_hi = 1.0;  // g > 0 here
};

/// g(p) = S(rho_B) - S(rho_AB); positive exactly where the state is dense codeable.
inline double coherent_gap(const StateFamily& family, double p) {
    const CapacityReport r = dense_coding_capacity(family, p);
    return r.S_B - r.S_AB;
}

/// Upper bound on bisection steps needed to shrink [0, 1] below tol.
inline int max_bisection_iterations(double tol) {
    return static_cast<int>(std::ceil(std::log2(1.0 / tol))) + 2;
}

/**
 * Bisects g(p) = S_B - S_AB on [0, 1] until the sign-change bracket is no wider
 * than tol. p_star is the bracket midpoint.
 */
inline ThresholdResult find_dense_coding_threshold(const StateFamily& family, double tol = 1e-6) {
    if (!(tol > 0.0 && tol < 1.0)) throw invalid_argument("tolerance must be in (0, 1)");

    double lo = 0.0;
    double hi = 1.0;
    const double g_lo = coherent_gap(family, lo);
    const double g_hi = coherent_gap(family, hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) {
        throw numerical_failure("no threshold in domain for " + family.label());
    }

    int iterations = 0;
    const int limit = max_bisection_iterations(tol);
    while (hi - lo > tol) {
        if (iterations >= limit) throw numerical_failure("bisection did not converge");
        const double mid = 0.5 * (lo + hi);
        if (coherent_gap(family, mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++iterations;
    }
    return {family, ThresholdKind::DenseCoding, 0.5 * (lo + hi), tol, iterations, lo, hi};
}

/// Analytic steerability boundary: (H_d - 1)/(d - 1) for isotropic, 1/sqrt(3) for Werner.
inline ThresholdResult steering_boundary(const StateFamily& family) {
    const double p = family.kind == FamilyKind::Werner ? werner_unsteerable_point()
                                                       : steerability_threshold(family.d);
    return {family, ThresholdKind::Steerability, p, 0.0, 0, p, p};
}

// ---------------------------------------------------------------------------
// Region maps

struct RegionLabels {
    bool steerable = false;
    bool dense_codeable = false;

    friend bool operator==(const RegionLabels&, const RegionLabels&) = default;
};

/// Interval of p with open/closed ends. lo == hi with both ends closed is a point.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
    RegionLabels labels;

    bool contains(double p) const {
        const bool above = lo_closed ? p >= lo : p > lo;
        const bool below = hi_closed ? p <= hi : p < hi;
        return above && below;
    }

    bool is_point() const { return lo == hi; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

struct RegionMap {
    StateFamily family;
    double dense_coding_threshold = 0.0;
    std::vector<Segment> segments;

    const Segment* find(double p) const {
        for (const Segment& s : segments)
            if (s.contains(p)) return &s;
        return nullptr;
    }
};

inline RegionLabels labels_at(const StateFamily& family, double p) {
    return {is_steerable(family, p).steerable, dense_coding_capacity(family, p).dense_codeable};
}

/// True when the segments tile [0, 1] with no gaps or overlaps.
inline bool is_partition_of_unit_interval(const std::vector<Segment>& segments) {
    if (segments.empty()) return false;
    if (segments.front().lo != 0.0 || !segments.front().lo_closed) return false;
    if (segments.back().hi != 1.0 || !segments.back().hi_closed) return false;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        if (s.lo > s.hi) return false;
        if (s.lo == s.hi && !(s.lo_closed && s.hi_closed)) return false;
        if (i + 1 < segments.size()) {
            const Segment& next = segments[i + 1];
            if (next.lo != s.hi) return false;
            if (next.lo_closed == s.hi_closed) return false;  // gap or overlap at the seam
        }
    }
    return true;
}

/**
 * Splits [0, 1] at the family's critical points and labels each piece by
 * evaluating is_steerable and dense_coding_capacity at its midpoint.
 *
 * Werner cuts: the point 0, the point 1/sqrt(3), and the dense-coding
 * threshold (closed on its upper side). Isotropic cuts: the steerability bound
 * (closed on its lower side, since steering needs p strictly above it) and
 * the dense-coding threshold. Every grid point p_i = i/(grid-1) away from a
 * cut is then checked against its segment's labels.
 */
inline RegionMap build_region_map(const StateFamily& family, int grid = 1000, double tol = 1e-6) {
    if (grid < 100) throw invalid_argument("region map grid must be >= 100");

    const ThresholdResult dense = find_dense_coding_threshold(family, tol);
    const double p_dense = dense.p_star;

    std::vector<Segment> pieces;
    if (family.kind == FamilyKind::Werner) {
        const double u = werner_unsteerable_point();
        pieces.push_back({0.0, 0.0, true, true, {}});
        if (p_dense > u) {
            pieces.push_back({0.0, u, false, false, {}});
            pieces.push_back({u, u, true, true, {}});
            pieces.push_back({u, p_dense, false, false, {}});
            pieces.push_back({p_dense, 1.0, true, true, {}});
        } else {
            pieces.push_back({0.0, p_dense, false, false, {}});
            pieces.push_back({p_dense, u, true, false, {}});
            pieces.push_back({u, u, true, true, {}});
            pieces.push_back({u, 1.0, false, true, {}});
        }
    } else {
        const double t = steerability_threshold(family.d);
        if (t < p_dense) {
            pieces.push_back({0.0, t, true, true, {}});
            pieces.push_back({t, p_dense, false, false, {}});
            pieces.push_back({p_dense, 1.0, true, true, {}});
        } else {
            pieces.push_back({0.0, p_dense, true, false, {}});
            pieces.push_back({p_dense, t, true, true, {}});
            pieces.push_back({t, 1.0, false, true, {}});
        }
    }

    for (Segment& s : pieces) s.labels = labels_at(family, s.midpoint());

    // Every cut must sit within tol of a grid-invisible boundary; check the grid.
    const std::vector<double> cuts = [&] {
        std::vector<double> c{p_dense};
        if (family.kind == FamilyKind::Werner) {
            c.push_back(0.0);
            c.push_back(werner_unsteerable_point());
        } else {
            c.push_back(steerability_threshold(family.d));
        }
        return c;
    }();
    for (int i = 0; i < grid; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid - 1);
        bool near_cut = false;
        for (double c : cuts) near_cut = near_cut || (std::abs(p - c) <= tol && c != 0.0);
        if (near_cut) continue;
        const Segment* s = nullptr;
        for (const Segment& seg : pieces)
            if (seg.contains(p)) s = &seg;
        if (s == nullptr || !(s->labels == labels_at(family, p))) {
            throw numerical_failure("region map labels disagree with direct evaluation at p = " +
                                    std::to_string(p));
        }
    }

    return {family, p_dense, std::move(pieces)};
}

}  // namespace densecode
