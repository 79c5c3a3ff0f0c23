#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>

#include "framecomp/spectrum.hpp"

namespace framecomp {

/// Spectral decomposition A = V diag(values) V^*, eigenvalues sorted
/// non-increasing, V unitary with columns matching the values in order.
struct Eigendecomposition {
    Eigen::VectorXd values;  // descending
    Eigen::MatrixXcd vectors;

    Spectrum values_desc() const;
    Spectrum values_asc() const;
    /// Columns reversed to pair with the ascending value order.
    Eigen::MatrixXcd vectors_asc() const;
};

/// Deterministic Hermitian eigensolver: cyclic sweeps of two-sided
/// complex plane rotations, off-diagonal threshold 1e-13 * |A|_F, at
/// most 60 sweeps. Same input always yields the same output, including
/// the eigenvector order within degenerate eigenvalues.
Eigendecomposition eig_hermitian(const Eigen::MatrixXcd& A);

/// Hermitian d x d matrix with a lazily computed, thread-safe
/// eigendecomposition cache shared across copies.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    /// Symmetrises its argument; throws if the Hermitian residual
    /// exceeds 1e-12 * max(1, |A|_F).
    explicit HermitianMatrix(const Eigen::MatrixXcd& entries);

    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix identity(Eigen::Index dim);
    static HermitianMatrix diagonal(const Spectrum& diag);

    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    const Eigendecomposition& eig() const;
    Spectrum eigenvalues_desc() const { return eig().values_desc(); }
    Spectrum eigenvalues_asc() const { return eig().values_asc(); }

    /// Largest eigenvalue magnitude (operator norm for PSD input).
    double spectral_norm() const;
    double frobenius_norm() const { return m_.norm(); }
    double trace() const { return m_.trace().real(); }

    bool is_psd(double tol = 1e-10) const;

private:
    struct Cache {
        std::once_flag once;
        std::unique_ptr<Eigendecomposition> value;
    };

    Eigen::MatrixXcd m_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Frobenius norm of the commutator [A, B] = AB - BA.
double commutator_norm(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

} // namespace framecomp
