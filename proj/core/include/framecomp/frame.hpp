#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>

#include "framecomp/convex.hpp"
#include "framecomp/hermitian.hpp"
#include "framecomp/optimal_spectrum.hpp"
#include "framecomp/spectrum.hpp"

namespace framecomp {

/// Ordered finite sequence of vectors in C^d, stored as the columns of
/// the synthesis operator.
class FrameSeq {
public:
    FrameSeq() = default;
    /// d x k matrix whose columns are the frame vectors. k = 0 is a
    /// valid empty sequence with a known ambient dimension.
    explicit FrameSeq(Eigen::MatrixXcd synthesis);

    static FrameSeq empty(Eigen::Index dim);

    Eigen::Index dim() const { return synthesis_.rows(); }
    Eigen::Index size() const { return synthesis_.cols(); }
    const Eigen::MatrixXcd& synthesis() const { return synthesis_; }
    Eigen::VectorXcd vector(Eigen::Index i) const { return synthesis_.col(i); }

    Spectrum norm_squares() const;

private:
    Eigen::MatrixXcd synthesis_;
};

/// S_F = sum_i f_i f_i^*; positive semidefinite.
HermitianMatrix frame_operator(const FrameSeq& F);

/// tr phi(S) with PSD round-off clamped: eigenvalues in
/// [-1e-10 * max(1, |S|_F), 0) are treated as 0. Mse still rejects any
/// eigenvalue <= 1e-12.
double trace_phi(const HermitianMatrix& S, const ConvexFn& phi);

/// Convex potential of the completed sequence, tr phi(S0 + S_G).
double potential(const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi);
double potential(const FrameSeq& F0, const FrameSeq& G, const ConvexFn& phi);

/// Build G = {g_i} with |g_i|^2 = a_i and lambda(S_G) = mu (padded with
/// zeros), via a chain of at most k-1 plane rotations on the Gram matrix
/// (each fixes one prescribed diagonal entry exactly), followed by a
/// rank factorisation. Requires the majorization a ≺ mu-padded and at
/// most `dim` positive entries in mu; when `basis` is given its columns
/// carry the eigenvectors of S_G in the order of mu.
FrameSeq schur_horn_design(const Spectrum& mu_desc, const Spectrum& a_desc,
                           Eigen::Index dim,
                           const std::optional<Eigen::MatrixXcd>& basis = std::nullopt);

/// Optimal completion: the Schur-Horn realisation of nu_op - lambda in
/// the ascending eigenbasis of S0, so that S0 + S_G has spectrum
/// nu_op sorted descending.
std::pair<FrameSeq, OptimalSpectrum> optimal_completion(
    const HermitianMatrix& S0, const Spectrum& a_desc,
    double tol = kMajorizationTol);
std::pair<FrameSeq, OptimalSpectrum> optimal_completion(
    const FrameSeq& F0, const Spectrum& a_desc, double tol = kMajorizationTol);

/// Seeded rotation-invariant draw on each sphere |g_i|^2 = a_i.
FrameSeq random_completion(Eigen::Index dim, const Spectrum& a_desc,
                           std::uint64_t seed);

/// Haar-like random unitary (QR of a Ginibre draw with the phase of the
/// R diagonal fixed); deterministic per seed.
Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::uint64_t seed);

} // namespace framecomp
