#include "framecomp/frame.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

using Complex = std::complex<double>;

constexpr double kPsdClamp = 1e-10;
constexpr double kMseFloor = 1e-12;

} // namespace

FrameSeq::FrameSeq(Eigen::MatrixXcd synthesis) : synthesis_(std::move(synthesis)) {
    if (synthesis_.rows() == 0)
        throw PreconditionError("frame vectors need a positive ambient dimension");
}

FrameSeq FrameSeq::empty(Eigen::Index dim) {
    return FrameSeq(Eigen::MatrixXcd::Zero(dim, 0));
}

Spectrum FrameSeq::norm_squares() const {
    std::vector<double> v(static_cast<std::size_t>(size()));
    for (Eigen::Index i = 0; i < size(); ++i)
        v[static_cast<std::size_t>(i)] = synthesis_.col(i).squaredNorm();
    return Spectrum(std::move(v), Order::Unordered);
}

HermitianMatrix frame_operator(const FrameSeq& F) {
    return HermitianMatrix(F.synthesis() * F.synthesis().adjoint());
}

double trace_phi(const HermitianMatrix& S, const ConvexFn& phi) {
    const Spectrum ev = S.eigenvalues_desc();
    const double clamp = kPsdClamp * std::max(1.0, S.frobenius_norm());
    double acc = 0.0;
    for (double raw : ev.entries()) {
        double x = raw;
        if (x < 0.0 && x >= -clamp) x = 0.0;
        if (phi.kind() == ConvexFn::Kind::Mse && x <= kMseFloor)
            throw DomainError("mse potential needs strictly positive spectrum");
        if (!phi.in_domain(x))
            throw DomainError("spectrum leaves the domain of " + phi.name());
        acc += phi(x);
    }
    return acc;
}

double potential(const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi) {
    if (S0.dim() != G.dim())
        throw LengthMismatchError("dimension mismatch between S0 and G");
    return trace_phi(HermitianMatrix(S0.matrix() + frame_operator(G).matrix()), phi);
}

double potential(const FrameSeq& F0, const FrameSeq& G, const ConvexFn& phi) {
    return potential(frame_operator(F0), G, phi);
}

FrameSeq schur_horn_design(const Spectrum& mu_desc, const Spectrum& a_desc,
                           Eigen::Index dim,
                           const std::optional<Eigen::MatrixXcd>& basis) {
    if (mu_desc.order() != Order::Descending || a_desc.order() != Order::Descending)
        throw PreconditionError("schur_horn_design expects descending mu and a");
    if (basis && basis->rows() != dim)
        throw PreconditionError("basis dimension mismatch");
    const std::size_t k = a_desc.size();
    const std::size_t d = static_cast<std::size_t>(dim);

    // Gram spectrum: mu sized to length k. Trailing entries dropped when
    // mu is longer must be (numerically) zero, which the majorization
    // test below guarantees whenever it passes.
    std::vector<double> gram_spec(k, 0.0);
    for (std::size_t i = 0; i < std::min(k, mu_desc.size()); ++i)
        gram_spec[i] = std::max(mu_desc[i], 0.0);

    std::size_t positives = 0;
    for (std::size_t i = 0; i < mu_desc.size(); ++i)
        if (mu_desc[i] > kPsdClamp * std::max(1.0, mu_desc.max_abs())) ++positives;
    if (positives > d)
        throw InfeasibleDesignError("mu has more positive entries than the ambient dimension", 0);

    // Frame-design feasibility: prefix dominance up to min(k, len mu)
    // plus equal totals. The trace test also rejects a mu whose dropped
    // tail (k < len mu) carries mass.
    {
        const double scale = std::max({1.0, a_desc.max_abs(), mu_desc.max_abs()});
        const double slack = kMajorizationTol * scale;
        double sa = 0.0, sm = 0.0;
        for (std::size_t j = 0; j < std::min(k, mu_desc.size()); ++j) {
            sa += a_desc[j];
            sm += std::max(mu_desc[j], 0.0);
            if (sa > sm + slack)
                throw InfeasibleDesignError(
                    "prescribed norms are not majorized by the spectrum", j + 1);
        }
        double mu_total = 0.0;
        for (std::size_t i = 0; i < mu_desc.size(); ++i)
            mu_total += std::max(mu_desc[i], 0.0);
        if (std::abs(a_desc.sum() - mu_total) > slack)
            throw InfeasibleDesignError("norm total differs from the spectrum total", k);
    }

    // Rotation chain on the Gram matrix: start from diag(gram_spec) and
    // fix positions 0..k-1 to a_0 >= a_1 >= ... in turn. Each step picks
    // the smallest-index unfixed bracket pair, rotates one entry to the
    // exact target, then swaps it into place. The unfixed principal
    // submatrix stays diagonal throughout, and the accumulated unitary
    // keeps the known eigenbasis: Gram = Q diag(gram_spec) Q^*.
    const Eigen::Index ki = static_cast<Eigen::Index>(k);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(ki, ki);
    for (std::size_t i = 0; i < k; ++i)
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = gram_spec[i];
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(ki, ki);

    const double match_tol = 1e-12 * std::max({1.0, a_desc.max_abs(), mu_desc.max_abs()});
    for (Eigen::Index m = 0; m < ki; ++m) {
        const double target = a_desc[static_cast<std::size_t>(m)];

        // Exact (or near-exact) match short-circuits the rotation.
        Eigen::Index exact = -1;
        for (Eigen::Index i = m; i < ki; ++i) {
            if (std::abs(M(i, i).real() - target) <= match_tol) {
                exact = i;
                break;
            }
        }
        if (exact >= 0) {
            if (exact != m) {
                M.row(m).swap(M.row(exact));
                M.col(m).swap(M.col(exact));
                Q.row(m).swap(Q.row(exact));
            }
            M(m, m) = target;
            continue;
        }

        Eigen::Index lo = -1, hi = -1;
        for (Eigen::Index i = m; i < ki; ++i) {
            const double di = M(i, i).real();
            if (lo < 0 && di <= target) lo = i;
            if (hi < 0 && di >= target) hi = i;
        }
        // Round-off fallback: the bracketing pair exists in exact
        // arithmetic; substitute the extreme entry if drift hid it.
        if (lo < 0 || hi < 0) {
            Eigen::Index mn = m, mx = m;
            for (Eigen::Index i = m; i < ki; ++i) {
                if (M(i, i).real() < M(mn, mn).real()) mn = i;
                if (M(i, i).real() > M(mx, mx).real()) mx = i;
            }
            if (lo < 0) lo = mn;
            if (hi < 0) hi = mx;
        }

        const double alpha = M(lo, lo).real();
        const double gamma = M(hi, hi).real();
        double s2 = (gamma > alpha) ? (target - alpha) / (gamma - alpha) : 0.0;
        s2 = std::clamp(s2, 0.0, 1.0);
        const double c = std::sqrt(1.0 - s2);
        const double s = std::sqrt(s2);

        // Rotation in the (lo, hi) plane sending the lo diagonal to the
        // target: columns then rows, and the same column op on Q^* i.e.
        // row op on Q ... we accumulate Q <- R^* Q so Gram = Q D Q^*.
        for (Eigen::Index i = 0; i < ki; ++i) {
            const Complex mlo = M(i, lo), mhi = M(i, hi);
            M(i, lo) = c * mlo + s * mhi;
            M(i, hi) = -s * mlo + c * mhi;
        }
        for (Eigen::Index j = 0; j < ki; ++j) {
            const Complex mlo = M(lo, j), mhi = M(hi, j);
            M(lo, j) = c * mlo + s * mhi;
            M(hi, j) = -s * mlo + c * mhi;
            const Complex qlo = Q(lo, j), qhi = Q(hi, j);
            Q(lo, j) = c * qlo + s * qhi;
            Q(hi, j) = -s * qlo + c * qhi;
        }
        M(lo, lo) = target;

        if (lo != m) {
            M.row(m).swap(M.row(lo));
            M.col(m).swap(M.col(lo));
            Q.row(m).swap(Q.row(lo));
        }
    }

    // Factor Gram = Q D Q^* as T^* T with T of size d x k: row i of T is
    // sqrt(d_i) times the conjugate of column i of Q.
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, ki);
    const Eigen::Index rows = std::min<Eigen::Index>(dim, ki);
    for (Eigen::Index i = 0; i < rows; ++i)
        T.row(i) = std::sqrt(gram_spec[static_cast<std::size_t>(i)]) * Q.col(i).adjoint();

    if (basis) return FrameSeq(*basis * T);
    return FrameSeq(std::move(T));
}

std::pair<FrameSeq, OptimalSpectrum> optimal_completion(
    const HermitianMatrix& S0, const Spectrum& a_desc, double tol) {
    const Eigen::Index d = S0.dim();
    const Spectrum lambda = S0.eigenvalues_asc();
    if (lambda[0] < -kPsdClamp * std::max(1.0, S0.frobenius_norm()))
        throw PreconditionError("S0 must be positive semidefinite");
    std::vector<double> lam = lambda.entries();
    for (double& x : lam) x = std::max(x, 0.0);
    const Spectrum lambda_clamped = Spectrum(std::move(lam), Order::Ascending);

    OptimalSpectrum opt = optimal_spectrum(lambda_clamped, a_desc, tol);

    std::vector<double> mu(static_cast<std::size_t>(d));
    const double scale = std::max(1.0, opt.nu_op.max_abs());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        mu[i] = opt.nu_op[i] - lambda_clamped[i];
        if (mu[i] < -tol * scale)
            throw InternalPairingError("negative completion mass in the optimal pairing");
        mu[i] = std::max(mu[i], 0.0);
    }
    for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
        if (mu[i + 1] > mu[i] + tol * scale)
            throw InternalPairingError("optimal pairing mass is not non-increasing");
        mu[i + 1] = std::min(mu[i + 1], mu[i]);
    }

    const FrameSeq G = schur_horn_design(Spectrum(std::move(mu), Order::Descending),
                                         a_desc, d, S0.eig().vectors_asc());
    return {G, std::move(opt)};
}

std::pair<FrameSeq, OptimalSpectrum> optimal_completion(
    const FrameSeq& F0, const Spectrum& a_desc, double tol) {
    return optimal_completion(frame_operator(F0), a_desc, tol);
}

FrameSeq random_completion(Eigen::Index dim, const Spectrum& a_desc,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd T(dim, static_cast<Eigen::Index>(a_desc.size()));
    for (Eigen::Index j = 0; j < T.cols(); ++j) {
        Eigen::VectorXcd g(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i) = Complex(re, im);
        }
        T.col(j) = g * (std::sqrt(a_desc[static_cast<std::size_t>(j)]) / g.norm());
    }
    return FrameSeq(std::move(T));
}

Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd Z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i)
            Z(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Qm = qr.householderQ();
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex r = R(j, j);
        const double mag = std::abs(r);
        if (mag > 0.0) Qm.col(j) *= r / mag;
    }
    return Qm;
}

} // namespace framecomp
