#include "framecomp/fod.hpp"

#include <cmath>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

/// Reflected profile |S0| 1_d - lambda(S0): ascending by construction,
/// non-negative up to round-off.
Spectrum reflected_lambda(const HermitianMatrix& S0) {
    const Spectrum desc = S0.eigenvalues_desc();
    const double top = desc.empty() ? 0.0 : desc[0];
    std::vector<double> v(desc.size());
    for (std::size_t i = 0; i < desc.size(); ++i)
        v[i] = std::max(top - desc[i], 0.0);
    return Spectrum(std::move(v), Order::Ascending);
}

} // namespace

Spectrum fod_delta(const HermitianMatrix& S0, const Spectrum& a_desc, double tol) {
    if (!S0.is_psd())
        throw PreconditionError("fod requires a positive semidefinite S0");
    const double top = S0.spectral_norm();
    const OptimalSpectrum opt = optimal_spectrum(reflected_lambda(S0), a_desc, tol);
    std::vector<double> delta(opt.nu_op.size());
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = top - opt.nu_op[i];
    return Spectrum(std::move(delta), Order::Unordered);
}

FodSolution fod_minimum(const HermitianMatrix& S0, const Spectrum& a_desc,
                        const UINorm& norm, double tol) {
    if (!S0.is_psd())
        throw PreconditionError("fod requires a positive semidefinite S0");
    const double top = S0.spectral_norm();
    const Spectrum lam_tilde = reflected_lambda(S0);

    // Descending eigenvectors of S0 carry the ascending reflected
    // profile, so they are the completion basis as-is.
    const Eigen::MatrixXcd V = S0.eig().vectors;

    OptimalSpectrum opt = optimal_spectrum(lam_tilde, a_desc, tol);
    std::vector<double> mu(opt.nu_op.size());
    const double scale = std::max(1.0, opt.nu_op.max_abs());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        mu[i] = opt.nu_op[i] - lam_tilde[i];
        if (mu[i] < -tol * scale)
            throw InternalPairingError("negative completion mass in the fod pairing");
        mu[i] = std::max(mu[i], 0.0);
    }
    for (std::size_t i = 0; i + 1 < mu.size(); ++i)
        mu[i + 1] = std::min(mu[i + 1], mu[i]);

    FodSolution out;
    out.G_op = schur_horn_design(Spectrum(std::move(mu), Order::Descending), a_desc,
                                 S0.dim(), V);

    std::vector<double> delta(opt.nu_op.size());
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = top - opt.nu_op[i];
    out.delta = Spectrum(std::move(delta), Order::Unordered);
    out.min_value = uin_eval(norm, out.delta);

    const HermitianMatrix SG = frame_operator(out.G_op);
    const HermitianMatrix diff(S0.matrix() - SG.matrix());
    out.achieved_value = uin_eval(norm, diff);
    out.commutator_residual = commutator_norm(S0.matrix(), SG.matrix());
    return out;
}

double fod_equals_potential_const(const HermitianMatrix& S0,
                                  const Spectrum& a_desc, int trials,
                                  std::uint64_t seed) {
    if (trials < 2)
        throw PreconditionError("fod_equals_potential_const needs at least 2 trials");
    const double top = S0.spectral_norm();
    const HermitianMatrix S0_tilde(
        top * Eigen::MatrixXcd::Identity(S0.dim(), S0.dim()) - S0.matrix());
    const ConvexFn square = ConvexFn::square();

    double first = 0.0, max_dev = 0.0;
    for (int i = 0; i < trials; ++i) {
        const FrameSeq G = random_completion(S0.dim(), a_desc,
                                             seed + static_cast<std::uint64_t>(i));
        const HermitianMatrix SG = frame_operator(G);
        const double theta2 = (S0.matrix() - SG.matrix()).norm();
        const double psi = potential(S0_tilde, G, square);
        const double dev = theta2 * theta2 - psi;
        if (i == 0)
            first = dev;
        else
            max_dev = std::max(max_dev, std::abs(dev - first));
    }
    return max_dev;
}

bool fod_uniqueness_check(const HermitianMatrix& S0, const Spectrum& a_desc,
                          const FrameSeq& G, const UINorm& norm, double tol) {
    if (!norm.strictly_convex())
        throw PreconditionError("uniqueness check needs a strictly convex norm");
    const Spectrum delta = fod_delta(S0, a_desc);
    const HermitianMatrix SG = frame_operator(G);
    const HermitianMatrix diff(S0.matrix() - SG.matrix());

    const double scale = std::max(1.0, uin_eval(norm, delta));
    const bool value_optimal =
        std::abs(uin_eval(norm, diff) - uin_eval(norm, delta)) <= tol * scale;

    const Spectrum delta_desc = sort_desc(delta);
    const Spectrum spec_desc = diff.eigenvalues_desc();
    bool spectrum_matches = true;
    const double entry_scale = std::max(1.0, delta_desc.max_abs());
    for (std::size_t i = 0; i < delta_desc.size(); ++i) {
        if (std::abs(delta_desc[i] - spec_desc[i]) > tol * entry_scale) {
            spectrum_matches = false;
            break;
        }
    }

    bool ok = (value_optimal == spectrum_matches);
    if (value_optimal) {
        const double comm_scale =
            std::max(1.0, S0.frobenius_norm() * SG.frobenius_norm());
        ok = ok && commutator_norm(S0.matrix(), SG.matrix()) <= tol * comm_scale;
    }
    return ok;
}

} // namespace framecomp
