#pragma once

// Small dense complex linear algebra: just enough to build density operators,
// take partial traces and diagonalize Hermitian matrices up to 64x64.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "densecode/error.hpp"

namespace densecode {

using Complex = std::complex<double>;

/// Largest composite dimension any operation will build.
inline constexpr std::size_t kMaxCompositeDim = 64;

/// Tolerance on max |a(i,j) - conj(a(j,i))| for a matrix to count as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Eigenvalues in [-kNegativeEigenTol, 0) are rounding noise and clamp to 0.
inline constexpr double kNegativeEigenTol = 1e-10;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Square, row-major, dense complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw invalid_argument("matrix entries length " + std::to_string(entries_.size()) +
                                   " does not equal dim^2 = " + std::to_string(dim_ * dim_));
        }
        for (const Complex& z : entries_) {
            if (!is_finite(z)) throw invalid_argument("matrix entry is not finite");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Diagonal matrix from real values.
    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& other) {
        require_same_dim(other, "addition");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& other) {
        require_same_dim(other, "subtraction");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
        return *this;
    }

    ComplexMatrix& operator*=(Complex scale) {
        for (Complex& z : entries_) z *= scale;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_dim(const ComplexMatrix& other, const char* op) const {
        if (other.dim_ != dim_) {
            throw invalid_argument(std::string("dimension mismatch in matrix ") + op);
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw invalid_argument("dimension mismatch in matmul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

/// Entrywise complex conjugate (no transpose).
inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex sum{};
    for (std::size_t i = 0; i < a.dim(); ++i) sum += a(i, i);
    return sum;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const Complex& z : a.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw invalid_argument("dimension mismatch in max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

/// Kronecker product; entry (i*b.dim+k, j*b.dim+l) = a(i,j) * b(k,l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t max_dim = kMaxCompositeDim) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    if (na * nb > max_dim) {
        throw invalid_argument("dimension too large: " + std::to_string(na * nb) + " > " +
                               std::to_string(max_dim));
    }
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

/// Kronecker product of column vectors.
inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const Complex& x : a)
        for (const Complex& y : b) out.push_back(x * y);
    return out;
}

/// |a><b|
inline ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw invalid_argument("dimension mismatch in outer product");
    ComplexMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * std::conj(b[j]);
    return out;
}

/// <a|b>
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw invalid_argument("dimension mismatch in inner product");
    Complex sum{};
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& m, std::span<const Complex> v) {
    if (m.dim() != v.size()) throw invalid_argument("dimension mismatch in matrix-vector product");
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

enum class Keep { A, B };

/// Traces out one factor of a dA x dB composite.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dA, std::size_t dB,
                                   Keep keep) {
    if (dA == 0 || dB == 0 || rho.dim() != dA * dB) {
        throw invalid_argument("dimension mismatch in partial_trace: matrix is " +
                               std::to_string(rho.dim()) + ", factors " + std::to_string(dA) +
                               "x" + std::to_string(dB));
    }
    if (keep == Keep::A) {
        ComplexMatrix out(dA);
        for (std::size_t i = 0; i < dA; ++i)
            for (std::size_t j = 0; j < dA; ++j)
                for (std::size_t k = 0; k < dB; ++k) out(i, j) += rho(i * dB + k, j * dB + k);
        return out;
    }
    ComplexMatrix out(dB);
    for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l)
            for (std::size_t i = 0; i < dA; ++i) out(k, l) += rho(i * dB + k, i * dB + l);
    return out;
}

inline double hermiticity_defect(const ComplexMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    return worst;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol) {
    return hermiticity_defect(a) <= tol;
}

/// (a + a^dagger) / 2
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

struct EigenResult {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k pairs with values[k]

    std::vector<Complex> vector(std::size_t k) const {
        std::vector<Complex> v(vectors.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
        return v;
    }
};

struct JacobiOptions {
    double off_diagonal_tol = 1e-14;
    int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_mass(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// Zeroes a(p,q) with the unitary J = diag(1, conj(e)) * [[c, s], [-s, c]] acting on
// coordinates p and q, where e = a(p,q)/|a(p,q)|. Accumulates J into v.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex e = apq / r;
    const Complex ec = std::conj(e);

    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * ec * akq;
        a(k, q) = s * akp + c * ec * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * e * aqk;
        a(q, k) = s * apk + c * e * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * ec * vkq;
        v(k, q) = s * vkp + c * ec * vkq;
    }
}

}  // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * The input is symmetrized first, so asymmetry below kHermitianTol is
 * discarded. Sweeps stop once the off-diagonal Frobenius mass drops under
 * off_diagonal_tol (relative to max(1, |a|_F)).
 */
inline EigenResult eig_hermitian(const ComplexMatrix& input, JacobiOptions options = {}) {
    if (!is_hermitian(input)) throw invalid_argument("not Hermitian");
    const std::size_t n = input.dim();

    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = options.off_diagonal_tol * std::max(1.0, frobenius_norm(a));

    bool converged = detail::off_diagonal_mass(a) < target;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
        converged = detail::off_diagonal_mass(a) < target;
    }
    if (!converged) throw numerical_failure("eigensolver stalled");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenResult result{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        result.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
    }
    return result;
}

/// Clamps rounding-level negative eigenvalues to zero; anything below
/// -kNegativeEigenTol means the input was not positive semidefinite.
inline std::vector<double> clamp_spectrum(std::vector<double> values) {
    for (double& x : values) {
        if (x < -kNegativeEigenTol) throw numerical_failure("not positive semidefinite");
        if (x < 0.0) x = 0.0;
    }
    return values;
}

/// Descending eigenvalues of a positive semidefinite matrix, ready for entropy sums.
inline std::vector<double> psd_spectrum(const ComplexMatrix& a) {
    return clamp_spectrum(eig_hermitian(a).values);
}

}  // namespace densecode
