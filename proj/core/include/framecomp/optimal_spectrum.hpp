#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "framecomp/spectrum.hpp"
#include "framecomp/waterfill.hpp"

namespace framecomp {

/// The optimal completion spectrum nu_op together with its defining
/// ladder: indexes 0 = s_0 < s_1 < ... < s_q <= d and constants
/// c_1 > c_2 > ... > c_q (the last block comes from the tail
/// water-fill over the minimal feasible index s_star).
struct OptimalSpectrum {
    /// Unsorted layout: pairs entrywise with lambda ascending (ladder
    /// blocks first, then the tail water-fill, then untouched
    /// eigenvalues when k < d).
    Spectrum nu_op;
    Spectrum nu_op_desc;
    std::vector<std::size_t> s_indices; // s_0 = 0, s_1, ..., s_q
    std::vector<double> c_consts;       // c_1 > ... > c_q
    std::size_t q = 0;
    std::size_t s_star = 0;
};

/// Block decomposition of a structured completion spectrum: constants
/// c_1 > ... > c_p over the support of mu, the boundary indexes s_j,
/// the K/J index ranges and the untouched eigenvalue tail.
struct BlockAnalysis {
    std::size_t p = 0;
    std::vector<double> c_list;                                 // descending
    std::vector<std::size_t> s_list;                            // s_1 < ... < s_p
    std::vector<std::pair<std::size_t, std::size_t>> K_blocks;  // 1-based inclusive
    std::vector<std::pair<std::size_t, std::size_t>> J_blocks;
    std::vector<double> residual_tail; // lambda_{s_p+1..d}
};

/// Sliding average (1/(r-j+1)) * sum_{i=j..r} (lambda_i + a_i); 1-based
/// inclusive indices, 1 <= j <= r <= d and r <= k.
double avg_P(const Spectrum& lambda_asc, const Spectrum& a_desc,
             std::size_t j, std::size_t r);

/// The recursive optimal-spectrum construction: minimal feasible index,
/// argmax ladder of sliding averages (largest maximizer wins ties), tail
/// water-fill; the k < d case runs the algorithm on the leading k
/// eigenvalues and appends the rest.
OptimalSpectrum optimal_spectrum(const Spectrum& lambda_asc,
                                 const Spectrum& a_desc,
                                 double tol = kMajorizationTol);

/// nu_op majorized by an achieved completion spectrum (the lower-bound
/// relation every completion satisfies).
bool majorization_bound_check(const OptimalSpectrum& opt,
                              const Spectrum& spectrum,
                              double tol = kMajorizationTol);

/// Decompose a paired spectrum (lambda_i + mu_i) into its constant
/// blocks over supp(mu). group_tol merges eigenvalues within
/// group_tol * max(1, c_1). Throws NotBlockStructuredError when the
/// paired vector fails to be non-increasing by blocks over supp(mu).
BlockAnalysis analyze_completion(const Spectrum& lambda_asc,
                                 const Spectrum& a_desc,
                                 const Spectrum& pairing,
                                 double group_tol = 1e-8);

} // namespace framecomp
