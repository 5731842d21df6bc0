#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "densecode/error.hpp"
#include "densecode/linalg.hpp"

namespace densecode {

inline constexpr double kNormTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr std::size_t kMaxLocalDim = 8;

/// Normalized state vector. Basis index of |ij> in a dA x dB composite is i*dB + j.
class PureState {
public:
    explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.empty()) throw invalid_argument("empty state vector");
        double norm2 = 0.0;
        for (const Complex& z : amplitudes_) {
            if (!is_finite(z)) throw invalid_argument("state amplitude is not finite");
            norm2 += std::norm(z);
        }
        if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
            throw invalid_argument("state vector is not normalized (norm " +
                                   std::to_string(std::sqrt(norm2)) + ")");
        }
    }

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    ComplexMatrix projector() const { return outer(amplitudes_, amplitudes_); }

private:
    std::vector<Complex> amplitudes_;
};

/// Computational basis vector |index> in dimension dim.
inline PureState basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw invalid_argument("basis index out of range");
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

/// Validated bipartite density operator: Hermitian, unit trace, PSD.
class DensityOperator {
public:
    DensityOperator(ComplexMatrix matrix, std::size_t dA, std::size_t dB)
        : matrix_(std::move(matrix)), dA_(dA), dB_(dB) {
        if (dA_ == 0 || dB_ == 0 || matrix_.dim() != dA_ * dB_) {
            throw invalid_argument("density matrix dimension does not match dA*dB");
        }
        if (!is_hermitian(matrix_)) throw invalid_argument("density matrix is not Hermitian");
        const Complex tr = trace(matrix_);
        if (std::abs(tr - Complex(1.0)) > kTraceTol) {
            throw invalid_argument("density matrix trace " + std::to_string(tr.real()) + " != 1");
        }
        spectrum_ = eig_hermitian(matrix_).values;
        if (spectrum_.back() < -kNegativeEigenTol) {
            throw invalid_argument("density matrix is not positive semidefinite");
        }
    }

    static DensityOperator from_pure(const PureState& psi, std::size_t dA, std::size_t dB) {
        return DensityOperator(psi.projector(), dA, dB);
    }

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dA() const noexcept { return dA_; }
    std::size_t dB() const noexcept { return dB_; }
    std::size_t dim() const noexcept { return matrix_.dim(); }

    /// Raw eigenvalues (descending) computed during validation.
    const std::vector<double>& spectrum() const& noexcept { return spectrum_; }
    std::vector<double> spectrum() && { return std::move(spectrum_); }

    ComplexMatrix marginal(Keep keep) const { return partial_trace(matrix_, dA_, dB_, keep); }

private:
    ComplexMatrix matrix_;
    std::size_t dA_;
    std::size_t dB_;
    std::vector<double> spectrum_;
};

// ---------------------------------------------------------------------------
// Named states

enum class Bell { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline std::optional<Bell> parse_bell(std::string_view label) {
    if (label == "psi+") return Bell::PsiPlus;
    if (label == "psi-") return Bell::PsiMinus;
    if (label == "phi+") return Bell::PhiPlus;
    if (label == "phi-") return Bell::PhiMinus;
    return std::nullopt;
}

inline PureState bell(Bell which) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (which) {
        case Bell::PsiPlus: return PureState({0.0, h, h, 0.0});
        case Bell::PsiMinus: return PureState({0.0, h, -h, 0.0});
        case Bell::PhiPlus: return PureState({h, 0.0, 0.0, h});
        case Bell::PhiMinus: return PureState({h, 0.0, 0.0, -h});
    }
    throw invalid_argument("unknown Bell state");
}

inline PureState bell(std::string_view label) {
    const auto which = parse_bell(label);
    if (!which) throw invalid_argument("unknown Bell label '" + std::string(label) + "'");
    return bell(*which);
}

/// (|000> + |111>)/sqrt(2), qubit order A, B, C.
inline PureState ghz() {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Complex> v(8);
    v[0] = h;
    v[7] = h;
    return PureState(std::move(v));
}

/// {|psi->, |psi+>, |00>, |11>} in that order.
inline std::array<PureState, 4> mixed_basis() {
    return {bell(Bell::PsiMinus), bell(Bell::PsiPlus), basis_state(4, 0), basis_state(4, 3)};
}

inline void require_unit_interval(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw invalid_argument("parameter out of domain: p = " + std::to_string(p));
    }
}

/// p |psi-><psi-| + (1-p) I/4
inline DensityOperator werner(double p) {
    require_unit_interval(p);
    ComplexMatrix m = p * bell(Bell::PsiMinus).projector() +
                      ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
    return DensityOperator(std::move(m), 2, 2);
}

/// sum_i |ii> / sqrt(d)
inline PureState max_entangled(std::size_t d) {
    std::vector<Complex> v(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = amp;
    return PureState(std::move(v));
}

/// p |phi+><phi+| + (1-p) I/d^2 on C^d x C^d.
inline DensityOperator isotropic(std::size_t d, double p) {
    if (d < 2 || d > kMaxLocalDim) {
        throw invalid_argument("isotropic local dimension must be in [2, 8], got " +
                               std::to_string(d));
    }
    require_unit_interval(p);
    const double d2 = static_cast<double>(d * d);
    ComplexMatrix m = p * max_entangled(d).projector() +
                      ((1.0 - p) / d2) * ComplexMatrix::identity(d * d);
    return DensityOperator(std::move(m), d, d);
}

// ---------------------------------------------------------------------------
// One-parameter families

enum class FamilyKind { Werner, Isotropic };

struct StateFamily {
    FamilyKind kind = FamilyKind::Werner;
    std::size_t d = 2;

    static StateFamily make_werner() { return {FamilyKind::Werner, 2}; }

    static StateFamily make_isotropic(std::size_t d) {
        if (d < 2 || d > kMaxLocalDim) {
            throw invalid_argument("isotropic local dimension must be in [2, 8], got " +
                                   std::to_string(d));
        }
        return {FamilyKind::Isotropic, d};
    }

    /// Accepts "werner" (d ignored, fixed at 2) or "isotropic".
    static StateFamily parse(std::string_view name, std::size_t d = 2) {
        if (name == "werner") return make_werner();
        if (name == "isotropic") return make_isotropic(d);
        throw invalid_argument("unknown family '" + std::string(name) + "'");
    }

    std::string name() const { return kind == FamilyKind::Werner ? "werner" : "isotropic"; }

    std::string label() const {
        return kind == FamilyKind::Werner ? "werner" : "isotropic-" + std::to_string(d);
    }

    DensityOperator operator()(double p) const {
        return kind == FamilyKind::Werner ? werner(p) : isotropic(d, p);
    }

    friend bool operator==(const StateFamily&, const StateFamily&) = default;
};

}  // namespace densecode
