#pragma once

// Exact density-matrix simulation of superdense coding and of GHZ-based
// controlled dense coding. No sampling anywhere: every probability is a trace.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "densecode/linalg.hpp"
#include "densecode/measures.hpp"
#include "densecode/states.hpp"

namespace densecode {

/// One of the four two-bit messages "00", "01", "10", "11".
class Message {
public:
    constexpr explicit Message(int value) : value_(value) {
        if (value < 0 || value > 3) throw invalid_argument("message must be in {0,1,2,3}");
    }
    constexpr int value() const noexcept { return value_; }
    friend constexpr bool operator==(Message, Message) = default;

private:
    int value_;
};

struct ProtocolOutcome {
    std::array<double, 4> per_message_success{};
    double success_probability = 0.0;  // mean of per_message_success
    std::optional<DensityOperator> shared_state_after_control;
};

namespace gates {

inline ComplexMatrix id2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix(2, {0, 1, 1, 0}); }
inline ComplexMatrix z() { return ComplexMatrix(2, {1, 0, 0, -1}); }

/// Alice's encoding of message m: I, X, Z, XZ.
inline ComplexMatrix encoding(Message m) {
    switch (m.value()) {
        case 0: return id2();
        case 1: return x();
        case 2: return z();
        default: return x() * z();
    }
}

}  // namespace gates

inline ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho) {
    return u * rho * dagger(u);
}

// ---------------------------------------------------------------------------
// Superdense coding

/// Bell-measurement vector Bob associates with message m: (U_m x I)|reference>.
inline PureState decoding_vector(Message m, Bell reference) {
    const ComplexMatrix u = kron(gates::encoding(m), gates::id2());
    return PureState(mat_vec(u, bell(reference).amplitudes()));
}

using OutcomeTable = std::array<std::array<double, 4>, 4>;

/**
 * table[m][k] = probability that Bob's Bell measurement decodes to message k
 * when Alice encoded m on her half of channel. Decoding uses the fixed
 * ideal-channel mapping for the reference Bell state; no likelihood weighting.
 */
inline OutcomeTable superdense_outcomes(const DensityOperator& channel,
                                        Bell reference = Bell::PsiMinus) {
    if (channel.dA() != 2 || channel.dB() != 2) {
        throw invalid_argument("superdense coding needs a two-qubit channel");
    }
    std::array<PureState, 4> decode{decoding_vector(Message(0), reference),
                                    decoding_vector(Message(1), reference),
                                    decoding_vector(Message(2), reference),
                                    decoding_vector(Message(3), reference)};
    OutcomeTable table{};
    for (int m = 0; m < 4; ++m) {
        const ComplexMatrix u = kron(gates::encoding(Message(m)), gates::id2());
        const ComplexMatrix encoded = conjugate_by(u, channel.matrix());
        for (int k = 0; k < 4; ++k) {
            const auto& b = decode[k].amplitudes();
            table[m][k] = inner(b, mat_vec(encoded, b)).real();
        }
    }
    return table;
}

inline ProtocolOutcome superdense_run(const DensityOperator& channel,
                                      Bell reference = Bell::PsiMinus) {
    const OutcomeTable table = superdense_outcomes(channel, reference);
    ProtocolOutcome out;
    double sum = 0.0;
    for (int m = 0; m < 4; ++m) {
        out.per_message_success[m] = table[m][m];
        sum += table[m][m];
    }
    out.success_probability = sum / 4.0;
    return out;
}

// ---------------------------------------------------------------------------
// Mixed-basis decoding

/// Outcome |chi^a>, |chi^b>, |chi^c>, |chi^d> decodes to message 0, 1, 2, 3.
inline constexpr std::array<int, 4> mixed_basis_decode_table() { return {0, 1, 2, 3}; }

inline Message decode_mixed_basis(int outcome) {
    if (outcome < 0 || outcome > 3) throw invalid_argument("mixed-basis outcome must be in 0..3");
    return Message(mixed_basis_decode_table()[outcome]);
}

/// Outcome probabilities when Alice prepares the mixed-basis state for m and
/// the pair is measured in the same basis over a noiseless channel.
inline std::array<double, 4> mixed_basis_run(Message m) {
    const auto basis = mixed_basis();
    const ComplexMatrix rho = basis[m.value()].projector();
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k) {
        const auto& v = basis[k].amplitudes();
        probs[k] = inner(v, mat_vec(rho, v)).real();
    }
    return probs;
}

// ---------------------------------------------------------------------------
// Controlled dense coding on |GHZ>

/// Cliff measures in {cos t|0> + sin t|1>, sin t|0> - cos t|1>}, t in [0, pi/2].
class ControlBasis {
public:
    explicit ControlBasis(double theta) : theta_(theta) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
            throw invalid_argument("control angle theta must be in [0, pi/2], got " +
                                   std::to_string(theta));
        }
    }
    double theta() const noexcept { return theta_; }

    std::array<Complex, 2> vector(int outcome) const {
        const double c = std::cos(theta_);
        const double s = std::sin(theta_);
        if (outcome == 0) return {c, s};
        return {s, -c};
    }

private:
    double theta_;
};

/// Full bookkeeping of one controlled run, beyond the ProtocolOutcome summary.
struct ControlledRun {
    ProtocolOutcome outcome;
    std::array<double, 2> cliff_probabilities{};
    /// [cliff outcome][ancilla outcome]; ancilla 0 is the success branch.
    std::array<std::array<double, 2>, 2> branch_probabilities{};
    /// Bob's reduced state after Cliff's (unread) measurement.
    ComplexMatrix bob_marginal_after_cliff;
    /// Bob's reduced state after Alice's correction and filtering, all branches kept.
    ComplexMatrix bob_marginal_after_filter;
};

namespace detail {

/**
 * Two-qubit unitary on (Alice, ancilla), index a*2 + x, that maps
 * alpha|00> + beta|11> (x) |0>_anc to a branch with the larger Schmidt amplitude
 * attenuated to the smaller one on ancilla 0.
 */
inline ComplexMatrix filtering_unitary(double alpha, double beta) {
    ComplexMatrix u = ComplexMatrix::identity(4);
    const bool damp_zero = alpha >= beta;
    const double big = damp_zero ? alpha : beta;
    const double small = damp_zero ? beta : alpha;
    const double r = big > 0.0 ? small / big : 1.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
    const std::size_t a = damp_zero ? 0 : 1;
    u(a * 2 + 0, a * 2 + 0) = r;
    u(a * 2 + 1, a * 2 + 0) = s;
    u(a * 2 + 0, a * 2 + 1) = -s;
    u(a * 2 + 1, a * 2 + 1) = r;
    return u;
}

/// Lifts a unitary on (Alice, ancilla) to the register ordered (Alice, Bob, ancilla).
inline ComplexMatrix embed_alice_ancilla(const ComplexMatrix& u4) {
    ComplexMatrix u8(8);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t a2 = 0; a2 < 2; ++a2)
                for (std::size_t x2 = 0; x2 < 2; ++x2)
                    for (std::size_t b = 0; b < 2; ++b)
                        u8(a * 4 + b * 2 + x, a2 * 4 + b * 2 + x2) = u4(a * 2 + x, a2 * 2 + x2);
    return u8;
}

inline ComplexMatrix projector_last_qubit(const std::array<Complex, 2>& v) {
    return kron(ComplexMatrix::identity(4), outer(v, v));
}

inline ComplexMatrix bob_marginal_of_three(const ComplexMatrix& rho8) {
    return partial_trace(partial_trace(rho8, 4, 2, Keep::A), 2, 2, Keep::B);
}

}  // namespace detail

/**
 * Controlled dense coding: Cliff measures his GHZ qubit in the basis set by
 * theta and announces the bit; Alice undoes the outcome phase with Z, adjoins
 * an ancilla, applies the filtering unitary and measures the ancilla. On
 * ancilla 0 Alice and Bob hold |phi+>, which is then used for superdense
 * coding. per_message_success[m] is the joint probability of filter success
 * and correct decoding of m.
 */
inline ControlledRun controlled_dense_coding_trace(const ControlBasis& basis) {
    const ComplexMatrix rho = ghz().projector();
    const ComplexMatrix anc0 = outer(std::array<Complex, 2>{1.0, 0.0}, std::array<Complex, 2>{1.0, 0.0});
    const double c = std::cos(basis.theta());
    const double s = std::sin(basis.theta());

    ControlledRun run;
    run.bob_marginal_after_cliff = ComplexMatrix(2);
    run.bob_marginal_after_filter = ComplexMatrix(2);
    ComplexMatrix success_mix(4);

    for (int k = 0; k < 2; ++k) {
        const ComplexMatrix proj = detail::projector_last_qubit(basis.vector(k));
        const ComplexMatrix branch = proj * rho * proj;
        const double pk = trace(branch).real();
        run.cliff_probabilities[k] = pk;
        run.bob_marginal_after_cliff += detail::bob_marginal_of_three(branch);

        ComplexMatrix pair = partial_trace(branch, 4, 2, Keep::A) * Complex(1.0 / pk);
        // Outcome 1 leaves sin|00> - cos|11>; Z on Alice restores a + sign.
        double alpha = c;
        double beta = s;
        if (k == 1) {
            pair = conjugate_by(kron(gates::z(), gates::id2()), pair);
            alpha = s;
            beta = c;
        }

        const ComplexMatrix u = detail::embed_alice_ancilla(detail::filtering_unitary(alpha, beta));
        const ComplexMatrix filtered = conjugate_by(u, kron(pair, anc0));
        for (int j = 0; j < 2; ++j) {
            std::array<Complex, 2> e{0.0, 0.0};
            e[j] = 1.0;
            const ComplexMatrix q = detail::projector_last_qubit(e);
            const ComplexMatrix sub = q * filtered * q;
            const double pj = trace(sub).real();
            run.branch_probabilities[k][j] = pk * pj;
            run.bob_marginal_after_filter += detail::bob_marginal_of_three(sub) * Complex(pk);
            if (j == 0) success_mix += partial_trace(sub, 4, 2, Keep::A) * Complex(pk);
        }
    }

    const double p_success = run.branch_probabilities[0][0] + run.branch_probabilities[1][0];
    ProtocolOutcome& out = run.outcome;
    // Below this the success branch is empty up to rounding.
    if (p_success > 1e-14) {
        DensityOperator shared(hermitian_part(success_mix * Complex(1.0 / p_success)), 2, 2);
        const ProtocolOutcome coded = superdense_run(shared, Bell::PhiPlus);
        for (int m = 0; m < 4; ++m) out.per_message_success[m] = p_success * coded.per_message_success[m];
        out.shared_state_after_control = std::move(shared);
    }
    double sum = 0.0;
    for (double x : out.per_message_success) sum += x;
    out.success_probability = sum / 4.0;
    return run;
}

inline ProtocolOutcome controlled_dense_coding_run(const ControlBasis& basis) {
    return controlled_dense_coding_trace(basis).outcome;
}

}  // namespace densecode
