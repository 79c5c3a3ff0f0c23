#include "framecomp/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

using Complex = std::complex<double>;

constexpr double kTGrid[] = {0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002};

struct PairedStructure {
    Eigen::MatrixXcd basis;     // columns v_i, lambda ascending
    std::vector<double> lambda; // ascending
    std::vector<double> mu;     // diagonal of S_G in that basis
};

/// Simultaneous eigenbasis of commuting S0 and S_G, lambda ascending;
/// within equal-lambda groups the mu values are sorted descending (the
/// free conforming choice inside a degenerate eigenspace).
std::optional<PairedStructure> common_structure(const HermitianMatrix& S0,
                                                const HermitianMatrix& SG,
                                                double tol) {
    const double comm_scale =
        std::max(1.0, S0.frobenius_norm() * SG.frobenius_norm());
    if (commutator_norm(S0.matrix(), SG.matrix()) > tol * comm_scale)
        return std::nullopt;

    const Eigen::Index d = S0.dim();
    const Spectrum lam = S0.eigenvalues_asc();
    Eigen::MatrixXcd V = S0.eig().vectors_asc();
    const double group_tol = 1e-8 * std::max(1.0, lam.max_abs());

    PairedStructure out;
    out.lambda = lam.entries();
    out.mu.assign(static_cast<std::size_t>(d), 0.0);

    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start;
        while (end + 1 < d &&
               std::abs(lam[static_cast<std::size_t>(end + 1)] -
                        lam[static_cast<std::size_t>(start)]) <= group_tol)
            ++end;
        const Eigen::Index len = end - start + 1;
        const Eigen::MatrixXcd block =
            V.middleCols(start, len).adjoint() * SG.matrix() * V.middleCols(start, len);
        const Eigendecomposition be = eig_hermitian(block);
        // eig_hermitian sorts descending, which is the canonical order here.
        V.middleCols(start, len) = V.middleCols(start, len) * be.vectors;
        for (Eigen::Index i = 0; i < len; ++i)
            out.mu[static_cast<std::size_t>(start + i)] = be.values(i);
        start = end + 1;
    }
    out.basis = std::move(V);
    return out;
}

double frame_potential_value(const HermitianMatrix& S0, const FrameSeq& G,
                             const ConvexFn& phi) {
    return potential(S0, G, phi);
}

/// Restore the exact original norms after a perturbation built from
/// numerically-tolerant eigenvectors.
Eigen::MatrixXcd restore_norms(Eigen::MatrixXcd W, const FrameSeq& G) {
    for (Eigen::Index j = 0; j < W.cols(); ++j)
        W.col(j) *= G.vector(j).norm() / W.col(j).norm();
    return W;
}

/// Largest eigenvalue of the symmetric 2x2 [[a11, a12], [a12, a22]].
double sym2_max(double a11, double a22, double a12) {
    const double tr = a11 + a22;
    const double disc = std::sqrt((a11 - a22) * (a11 - a22) + 4.0 * a12 * a12);
    return (tr + disc) / 2.0;
}

std::optional<DescentCertificate> pairing_certificate(
    const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi,
    const PairedStructure& ps, double tol) {
    const std::size_t d = ps.lambda.size();
    double mu_max = 0.0;
    for (double m : ps.mu) mu_max = std::max(mu_max, m);
    const double zero_tol = tol * std::max(1.0, mu_max);

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < d; ++i)
        if (ps.mu[i] > zero_tol) support.push_back(i);
    if (support.size() < 2) return std::nullopt;

    std::vector<double> nu(d);
    for (std::size_t i = 0; i < d; ++i) nu[i] = ps.lambda[i] + ps.mu[i];
    double c1 = -std::numeric_limits<double>::infinity();
    for (std::size_t i : support) c1 = std::max(c1, nu[i]);
    const double merge = 1e-8 * std::max(1.0, c1);

    // Violation: an index of the top block sits above (to the right of)
    // an index from a lower block.
    std::optional<std::pair<std::size_t, std::size_t>> pair; // (i in K_1, j lower)
    for (std::size_t i : support) {
        if (std::abs(nu[i] - c1) > merge) continue;
        for (std::size_t j : support) {
            if (j < i && nu[j] < c1 - merge) {
                pair = {i, j};
                break;
            }
        }
        if (pair) break;
    }
    if (!pair) return std::nullopt;

    const auto [i, j] = *pair;
    const double mu_i = ps.mu[i], mu_j = ps.mu[j];
    const double ci = nu[i], cj = nu[j]; // ci = c_1 > cj
    const Eigen::VectorXcd vi = ps.basis.col(static_cast<Eigen::Index>(i));
    const Eigen::VectorXcd vj = ps.basis.col(static_cast<Eigen::Index>(j));
    const double base_value = frame_potential_value(S0, G, phi);

    for (double t : kTGrid) {
        double predicted;
        Eigen::MatrixXcd W;
        if (mu_j >= mu_i) {
            // Tilt-and-rediagonalize curve: the top-block vectors lean
            // towards v_j, transferring E(t) from the c_1 level down.
            const double a11 = mu_j + t * t * mu_i;      // v_j coordinate
            const double a22 = (1.0 - t * t) * mu_i;     // v_i coordinate
            const double a12 = t * std::sqrt(1.0 - t * t) * mu_i;
            const double L = sym2_max(a11, a22, a12);
            const double E = L - mu_j;
            if (E <= 0.0 || E > (ci - cj) / 2.0) continue;
            predicted = phi(ci) + phi(cj) - phi(ci - E) - phi(cj + E);

            // V(t) g_l followed by the 2x2 eigenvector re-conjugation.
            Eigen::MatrixXcd Vt = Eigen::MatrixXcd::Identity(S0.dim(), S0.dim());
            Vt += (std::sqrt(1.0 - t * t) - 1.0) * (vi * vi.adjoint());
            Vt += t * (vj * vi.adjoint());

            // Unit eigenvector of [[a11, a12], [a12, a22]] for L.
            double x1, x2;
            if (std::abs(a12) > 0.0) {
                x1 = a12;
                x2 = L - a11;
            } else {
                x1 = 1.0;
                x2 = 0.0;
            }
            const double nrm = std::hypot(x1, x2);
            x1 /= nrm;
            x2 /= nrm;
            // U acts on span(v_j, v_i): columns (x1, x2) and the
            // orthogonal complement (-x2, x1).
            Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(S0.dim(), S0.dim());
            U += (x1 - 1.0) * (vj * vj.adjoint());
            U += x2 * (vi * vj.adjoint());
            U += (-x2) * (vj * vi.adjoint());
            U += (x1 - 1.0) * (vi * vi.adjoint());
            W = restore_norms(U.adjoint() * Vt * G.synthesis(), G);
        } else {
            // Plane-rotation curve: mixes the co-monotone (lambda, mu)
            // pair, contracting the two paired levels.
            const double c = std::cos(t), s = std::sin(t);
            const double b11 = c * c * mu_j + s * s * mu_i;
            const double b22 = s * s * mu_j + c * c * mu_i;
            const double b12 = c * s * (mu_i - mu_j);
            const double m11 = ps.lambda[j] + b11;
            const double m22 = ps.lambda[i] + b22;
            const double tr = m11 + m22;
            const double disc =
                std::sqrt((m11 - m22) * (m11 - m22) + 4.0 * b12 * b12);
            const double hi_val = (tr + disc) / 2.0, lo_val = (tr - disc) / 2.0;
            predicted = phi(ci) + phi(cj) - phi(hi_val) - phi(lo_val);
            if (predicted <= 0.0) continue;

            Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(S0.dim(), S0.dim());
            R += (c - 1.0) * (vj * vj.adjoint() + vi * vi.adjoint());
            R += s * (vi * vj.adjoint()) - s * (vj * vi.adjoint());
            W = restore_norms(R * G.synthesis(), G);
        }

        const FrameSeq cand(W);
        const double drop = base_value - frame_potential_value(S0, cand, phi);
        if (predicted > 1e-14 * std::max(1.0, base_value) && drop >= 0.6 * predicted) {
            DescentCertificate cert;
            cert.kind = DescentCertificate::Kind::PairingOrder;
            cert.description =
                "pairing violation between positions " + std::to_string(j + 1) +
                " and " + std::to_string(i + 1);
            cert.t = t;
            cert.predicted_decrease = predicted;
            cert.perturbed = cand;
            return cert;
        }
    }
    return std::nullopt;
}

std::optional<DescentCertificate> dependence_certificate(
    const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi,
    const HermitianMatrix& SF, const std::vector<double>& ray) {
    const Eigen::Index k = G.size();
    const double scale = std::max(1.0, SF.frobenius_norm());
    const double group_tol = 1e-8 * scale;

    // J-blocks from the eigenvalue each frame vector carries.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&ray](Eigen::Index a, Eigen::Index b) {
        return ray[static_cast<std::size_t>(a)] > ray[static_cast<std::size_t>(b)];
    });

    const Spectrum sf_vals = SF.eigenvalues_desc();
    const double min_eig = sf_vals[sf_vals.size() - 1];

    std::size_t pos = 0;
    while (pos < order.size()) {
        const double cj = ray[static_cast<std::size_t>(order[pos])];
        std::vector<Eigen::Index> block;
        while (pos < order.size() &&
               std::abs(ray[static_cast<std::size_t>(order[pos])] - cj) <= group_tol)
            block.push_back(order[pos++]);

        if (min_eig >= cj - group_tol) continue; // no smaller eigenvalue

        // Linear dependence of the block family.
        Eigen::MatrixXcd cols(G.dim(), static_cast<Eigen::Index>(block.size()));
        for (std::size_t b = 0; b < block.size(); ++b)
            cols.col(static_cast<Eigen::Index>(b)) = G.vector(block[b]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double rank_tol =
            1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0) *
            static_cast<double>(std::max(G.dim(), cols.cols()));
        Eigen::Index rank = 0;
        for (Eigen::Index s = 0; s < sv.size(); ++s)
            if (sv(s) > rank_tol) ++rank;
        if (rank == cols.cols()) continue; // independent family

        // Dependency coefficients: kernel vector of the scaled columns.
        // sum_l conj(z_l) sqrt(a_l) g_l = 0 with max |z_l| = 1/2.
        const Eigen::VectorXcd w = svd.matrixV().col(cols.cols() - 1);
        std::vector<Complex> z(block.size());
        double zmax = 0.0;
        for (std::size_t b = 0; b < block.size(); ++b) {
            const double al = G.vector(block[b]).squaredNorm();
            z[b] = std::conj(w(static_cast<Eigen::Index>(b))) / std::sqrt(al);
            zmax = std::max(zmax, std::abs(z[b]));
        }
        for (auto& zb : z) zb *= 0.5 / zmax;

        // Receiving direction: eigenvector of S_F at the smallest
        // eigenvalue, orthogonal to the block by spectral separation.
        const Eigen::VectorXcd h = SF.eig().vectors.col(SF.dim() - 1);

        // Spectrum data for the predicted drop.
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(G.dim(), G.dim());
        double mass = 0.0;
        for (std::size_t b = 0; b < block.size(); ++b) {
            const Eigen::VectorXcd gl = G.vector(block[b]);
            B += std::norm(z[b]) * (gl * gl.adjoint());
            mass += std::norm(z[b]) * gl.squaredNorm();
        }
        const Eigendecomposition be = eig_hermitian(B);
        std::vector<double> gammas;
        for (Eigen::Index s = 0; s < be.values.size(); ++s)
            if (be.values(s) > 1e-12 * std::max(1.0, mass)) gammas.push_back(be.values(s));
        if (gammas.empty()) continue;

        const double base_value = frame_potential_value(S0, G, phi);
        for (double t : kTGrid) {
            double predicted = phi(min_eig) - phi(min_eig + t * t * mass);
            bool in_domain = true;
            for (double g : gammas) {
                const double lowered = cj - t * t * g;
                if (!phi.in_domain(lowered) || lowered < min_eig) {
                    in_domain = false;
                    break;
                }
                predicted += phi(cj) - phi(cj - t * t * g);
            }
            if (!in_domain || predicted <= 0.0) continue;

            Eigen::MatrixXcd W = G.synthesis();
            for (std::size_t b = 0; b < block.size(); ++b) {
                const Eigen::VectorXcd gl = G.vector(block[b]);
                const double al = gl.squaredNorm();
                W.col(block[b]) =
                    std::sqrt(1.0 - t * t * std::norm(z[b])) * gl +
                    (t * z[b] * std::sqrt(al)) * h;
            }
            const FrameSeq cand(restore_norms(W, G));
            const double drop = base_value - frame_potential_value(S0, cand, phi);
            if (predicted > 1e-14 * std::max(1.0, base_value) &&
                drop >= 0.6 * predicted) {
                DescentCertificate cert;
                cert.kind = DescentCertificate::Kind::DependentBlock;
                cert.description = "dependent family at level " + std::to_string(cj) +
                                   " with a smaller eigenvalue available";
                cert.t = t;
                cert.predicted_decrease = predicted;
                cert.perturbed = cand;
                return cert;
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<DescentCertificate> strict_descent_certificate(
    const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi,
    double tol) {
    if (S0.dim() != G.dim())
        throw LengthMismatchError("dimension mismatch between S0 and G");
    const HermitianMatrix SG = frame_operator(G);
    const HermitianMatrix SF(S0.matrix() + SG.matrix());
    const double scale = std::max(1.0, SF.frobenius_norm());

    // Block structure prerequisite: every vector is an eigenvector of
    // S_F. Otherwise the completion is outside the analysed class.
    std::vector<double> ray(static_cast<std::size_t>(G.size()));
    for (Eigen::Index l = 0; l < G.size(); ++l) {
        const Eigen::VectorXcd g = G.vector(l);
        const Eigen::VectorXcd Sg = SF.matrix() * g;
        const double rho = g.dot(Sg).real() / g.squaredNorm();
        if ((Sg - rho * g).norm() > 1e-6 * scale * g.norm()) return std::nullopt;
        ray[static_cast<std::size_t>(l)] = rho;
    }

    if (const auto ps = common_structure(S0, SG, tol)) {
        if (auto cert = pairing_certificate(S0, G, phi, *ps, tol)) return cert;
    }
    return dependence_certificate(S0, G, phi, SF, ray);
}

} // namespace framecomp
