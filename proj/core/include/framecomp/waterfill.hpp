#pragma once

#include <cstddef>
#include <optional>

#include "framecomp/spectrum.hpp"

namespace framecomp {

/// Output of a water-fill: level c, the lifted spectrum nu, the mass
/// vector mu = nu - lambda, and the number r of entries lifted to c.
struct WaterfillResult {
    double c = 0.0;
    Spectrum nu;
    Spectrum mu;
    std::size_t r = 0;
};

struct FeasibilityReport {
    bool feasible = false;
    Spectrum mu;
    /// 1-based index of the first failing prefix inequality, absent when
    /// feasible.
    std::optional<std::size_t> violated_prefix;
    /// Minimal feasible index, filled only when requested (k >= d).
    std::optional<std::size_t> s_star;
};

/// h_lambda(x) = sum_i max(x - lambda_i, 0). Requires x >= lambda_1.
double h_lambda(const Spectrum& lambda_asc, double x);

/// Water-fill lambda (ascending, non-negative) with total mass t > 0.
/// The level is found by exact piecewise-linear inversion over prefix
/// sums, no iterative root-finding: c = (t + sum_{i<=r} lambda_i)/r for
/// the unique block size r with lambda_r <= c and (r = d or c < lambda_{r+1}).
WaterfillResult waterfill_t(const Spectrum& lambda_asc, double t);

/// Completion variant: with r0 = min(k, d) and t = sum(a), fills the
/// full profile when k >= d, otherwise fills only the first k entries
/// and leaves the tail untouched; nu is tagged unordered in that case
/// (the level may exceed lambda_{k+1}).
WaterfillResult waterfill_a(const Spectrum& lambda_asc, const Spectrum& a_desc);

/// Feasibility of the pair per the prefix inequalities
/// sum_{i<=j} a_i <= sum_{i<=j} mu_i for j = 1..min(k,d)-1; the shared
/// total is guaranteed by construction. When with_s_star is set (legal
/// only for k >= d) the minimal feasible index is filled in as well.
FeasibilityReport is_feasible_pair(const Spectrum& lambda_asc,
                                   const Spectrum& a_desc,
                                   double tol = kMajorizationTol,
                                   bool with_s_star = false);

/// Feasibility of truncation index s: drops the first s entries of both
/// lambda and a and tests the reduced pair. Requires 0 <= s <= d-1 and
/// s < k.
bool is_feasible_index(const Spectrum& lambda_asc, const Spectrum& a_desc,
                       std::size_t s, double tol = kMajorizationTol);

/// Smallest feasible truncation index; requires k >= d, under which
/// s = d-1 is always feasible so the scan terminates.
std::size_t minimal_feasible_index(const Spectrum& lambda_asc,
                                   const Spectrum& a_desc,
                                   double tol = kMajorizationTol);

} // namespace framecomp
