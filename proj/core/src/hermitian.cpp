#include "framecomp/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

using Complex = std::complex<double>;

double offdiag_norm(const Eigen::MatrixXcd& A) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (i != j) acc += std::norm(A(i, j));
    return std::sqrt(acc);
}

} // namespace

Spectrum Eigendecomposition::values_desc() const {
    return Spectrum(std::vector<double>(values.data(), values.data() + values.size()),
                    Order::Descending);
}

Spectrum Eigendecomposition::values_asc() const {
    std::vector<double> v(values.data(), values.data() + values.size());
    std::reverse(v.begin(), v.end());
    return Spectrum(std::move(v), Order::Ascending);
}

Eigen::MatrixXcd Eigendecomposition::vectors_asc() const {
    return vectors.rowwise().reverse();
}

Eigendecomposition eig_hermitian(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols())
        throw PreconditionError("eig_hermitian requires a square matrix");
    const Eigen::Index n = A.rows();

    Eigen::MatrixXcd M = (A + A.adjoint()) / 2.0;
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);

    const double norm = M.norm();
    const double threshold = 1e-13 * norm;
    const double skip = threshold / (10.0 * std::max<double>(1.0, static_cast<double>(n)));
    constexpr int kMaxSweeps = 60;

    bool converged = offdiag_norm(M) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex beta = M(p, q);
                const double b = std::abs(beta);
                if (b <= skip) continue;

                const Complex phase = beta / b; // e^{i phi}
                const double alpha = M(p, p).real();
                const double gamma = M(q, q).real();
                const double theta = (gamma - alpha) / (2.0 * b);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;

                // Column update of M and V by the plane rotation, then the
                // matching row update of M (two-sided unitary conjugation).
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Complex mp = M(i, p), mq = M(i, q);
                    M(i, p) = c * mp - std::conj(sp) * mq;
                    M(i, q) = sp * mp + c * mq;
                    const Complex vp = V(i, p), vq = V(i, q);
                    V(i, p) = c * vp - std::conj(sp) * vq;
                    V(i, q) = sp * vp + c * vq;
                }
                for (Eigen::Index j = 0; j < n; ++j) {
                    const Complex mp = M(p, j), mq = M(q, j);
                    M(p, j) = c * mp - sp * mq;
                    M(q, j) = std::conj(sp) * mp + c * mq;
                }
                M(p, q) = Complex(0.0, 0.0);
                M(q, p) = Complex(0.0, 0.0);
                M(p, p) = Complex(M(p, p).real(), 0.0);
                M(q, q) = Complex(M(q, q).real(), 0.0);
            }
        }
        converged = offdiag_norm(M) <= threshold;
    }
    if (!converged)
        throw NoConvergenceError("Jacobi sweeps did not reach the off-diagonal threshold");

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&M](Eigen::Index a, Eigen::Index b) {
        return M(a, a).real() > M(b, b).real();
    });

    Eigendecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = M(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(i)]).real();
        out.vectors.col(i) = V.col(idx[static_cast<std::size_t>(i)]);
    }
    return out;
}

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& entries) {
    if (entries.rows() != entries.cols())
        throw PreconditionError("Hermitian matrix must be square");
    const double residual = (entries - entries.adjoint()).norm();
    if (residual > 1e-12 * std::max(1.0, entries.norm()))
        throw PreconditionError("matrix is not Hermitian within tolerance");
    m_ = (entries + entries.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
    return HermitianMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const Spectrum& diag) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(diag.size()),
                                                static_cast<Eigen::Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
    return HermitianMatrix(m);
}

const Eigendecomposition& HermitianMatrix::eig() const {
    std::call_once(cache_->once, [this] {
        cache_->value = std::make_unique<Eigendecomposition>(eig_hermitian(m_));
    });
    return *cache_->value;
}

double HermitianMatrix::spectral_norm() const {
    if (dim() == 0) return 0.0;
    const auto& e = eig();
    return std::max(std::abs(e.values(0)), std::abs(e.values(dim() - 1)));
}

bool HermitianMatrix::is_psd(double tol) const {
    if (dim() == 0) return true;
    return eig().values(dim() - 1) >= -tol * std::max(1.0, frobenius_norm());
}

double commutator_norm(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    return (A * B - B * A).norm();
}

} // namespace framecomp
