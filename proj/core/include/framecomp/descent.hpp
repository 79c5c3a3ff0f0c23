#pragma once

#include <cstdint>
#include <vector>

#include "framecomp/frame.hpp"

namespace framecomp {

struct DescentConfig {
    int max_iters = 5000;
    double step_init = 1.0;
    double step_shrink = 0.5;
    double grad_tol = 1e-8;
    int restarts = 20;
    std::uint64_t seed = 1;
    /// Random tangent kicks applied after a first convergence so the run
    /// certifies a minimum rather than a saddle (commuting mispaired
    /// configurations are genuine critical points).
    int saddle_kicks = 2;
};

struct RestartResult {
    double final_value = 0.0;
    double gap = 0.0;
    int iters = 0;
    bool converged = false;
};

struct TrajectoryPoint {
    int restart = 0;
    int iter = 0;
    double value = 0.0;
};

struct DescentReport {
    double final_value = 0.0;  // best over restarts
    double global_value = 0.0; // certified lower bound
    double gap = 0.0;          // final - global
    int iters = 0;             // iterations of the best restart
    bool converged = false;    // best restart converged
    /// Best restart's final point: the synthesis matrix of the
    /// completion (sphere-product mode) or the unitary U with
    /// G = U D_mu U^* (orbit mode).
    Eigen::MatrixXcd best_state;
    std::vector<RestartResult> restarts;
    std::vector<TrajectoryPoint> trajectory; // filled only on request
};

/// Per-vector Riemannian gradient of G -> tr phi(S0 + S_G) on the
/// product of spheres: the Euclidean gradient 2 phi'(S) g_i with its
/// radial component removed. Columns follow the order of G.
Eigen::MatrixXcd riemannian_grad(const HermitianMatrix& S0, const FrameSeq& G,
                                 const ConvexFn& phi);

/// Multi-start projected gradient descent over completions with
/// prescribed norms; the certified global value is tr phi(nu_op).
/// Restarts run concurrently, each on its own sub-seeded RNG, merged by
/// restart index.
DescentReport descend_Ta(const HermitianMatrix& S0, const Spectrum& a_desc,
                         const ConvexFn& phi, const DescentConfig& cfg,
                         bool record_trajectory = false);

/// Descent of G -> tr phi(S + G) over the unitary orbit of diag(mu):
/// steps move U <- exp(-eta X) U along the skew-Hermitian commutator
/// X = [phi'(S+G), G]; the certified global value is
/// sum phi(lambda_i ascending + mu_i).
DescentReport descend_orbit(const HermitianMatrix& S, const Spectrum& mu_desc,
                            const ConvexFn& phi, const DescentConfig& cfg,
                            bool record_trajectory = false);

} // namespace framecomp
