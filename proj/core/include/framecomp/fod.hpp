#pragma once

#include <cstdint>

#include "framecomp/frame.hpp"
#include "framecomp/norms.hpp"

namespace framecomp {

/// Minimal frame-operator distance for one norm: the gap vector delta,
/// the certified minimum |D_delta|, the constructed minimizer and the
/// value it actually achieves.
struct FodSolution {
    /// Unsorted layout pairing the descending eigenbasis of S0.
    Spectrum delta;
    double min_value = 0.0;
    FrameSeq G_op;
    double achieved_value = 0.0;
    /// Frobenius norm of [S0, S_{G_op}] (vanishes at the minimizer).
    double commutator_residual = 0.0;
};

/// The gap vector delta = |S0| 1_d - nu_op(|S0| 1_d - lambda(S0), a);
/// shared by the minimum value and the uniqueness predicate.
Spectrum fod_delta(const HermitianMatrix& S0, const Spectrum& a_desc,
                   double tol = kMajorizationTol);

/// Minimal distance min { |S0 - S_G| : |g_i|^2 = a_i } for any
/// unitarily invariant norm, with the minimizer built as an optimal
/// completion against the reflected operator |S0| I - S0 in the
/// eigenbasis of S0. No assumption on k vs d or on a vs lambda(S0).
FodSolution fod_minimum(const HermitianMatrix& S0, const Spectrum& a_desc,
                        const UINorm& norm, double tol = kMajorizationTol);

/// Draws `trials` random completions and returns the largest deviation
/// of Theta_2(G)^2 - Psi_square(G) from its first-sample value; the
/// identity says the difference is constant in G.
double fod_equals_potential_const(const HermitianMatrix& S0,
                                  const Spectrum& a_desc, int trials,
                                  std::uint64_t seed);

/// For a strictly convex norm: value optimality iff the spectrum of
/// S0 - S_G equals delta sorted descending; at optimizers S0 and S_G
/// commute and that is verified too.
bool fod_uniqueness_check(const HermitianMatrix& S0, const Spectrum& a_desc,
                          const FrameSeq& G, const UINorm& norm,
                          double tol = 1e-7);

} // namespace framecomp
