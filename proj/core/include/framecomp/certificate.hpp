#pragma once

#include <optional>
#include <string>

#include "framecomp/frame.hpp"

namespace framecomp {

/// Explicit strict-descent direction at a block-structured completion
/// that violates one of the local-minimum necessary conditions. The
/// perturbed frame lives on the same sphere product and evaluates to a
/// strictly smaller potential.
struct DescentCertificate {
    enum class Kind {
        DependentBlock, // dependent block family beside a smaller eigenvalue
        PairingOrder    // out-of-order eigenvalue pairing
    };
    Kind kind = Kind::DependentBlock;
    std::string description;
    double t = 0.0;
    double predicted_decrease = 0.0;
    FrameSeq perturbed;
};

/// Inspects the completion's block structure and, when a necessary
/// condition fails, returns the matching perturbation curve evaluated at
/// a small parameter where the potential strictly drops. Returns absent
/// at conforming points and at completions that are not block
/// structured (some g_i is not an eigenvector of S0 + S_G).
std::optional<DescentCertificate> strict_descent_certificate(
    const HermitianMatrix& S0, const FrameSeq& G, const ConvexFn& phi,
    double tol = 1e-8);

} // namespace framecomp
