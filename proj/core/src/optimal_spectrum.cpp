#include "framecomp/optimal_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

double avg_P(const Spectrum& lambda_asc, const Spectrum& a_desc,
             std::size_t j, std::size_t r) {
    if (j < 1 || j > r || r > lambda_asc.size() || r > a_desc.size())
        throw IndexOutOfRangeError("avg_P indices must satisfy 1 <= j <= r <= d, r <= k");
    double acc = 0.0;
    for (std::size_t i = j; i <= r; ++i)
        acc += lambda_asc[i - 1] + a_desc[i - 1];
    return acc / static_cast<double>(r - j + 1);
}

namespace {

// Largest maximizer of P_{base+1, r} over base < r <= hi; averages that
// tie within tol * max(1, |P|) count as equal.
std::pair<std::size_t, double> ladder_step(const Spectrum& lambda,
                                           const Spectrum& a,
                                           std::size_t base, std::size_t hi,
                                           double tol) {
    double best = avg_P(lambda, a, base + 1, base + 1);
    for (std::size_t r = base + 2; r <= hi; ++r)
        best = std::max(best, avg_P(lambda, a, base + 1, r));
    const double slack = tol * std::max(1.0, std::abs(best));
    std::size_t arg = base + 1;
    for (std::size_t r = base + 1; r <= hi; ++r) {
        if (avg_P(lambda, a, base + 1, r) >= best - slack) arg = r;
    }
    return {arg, avg_P(lambda, a, base + 1, arg)};
}

OptimalSpectrum optimal_spectrum_k_ge_d(const Spectrum& lambda,
                                        const Spectrum& a, double tol) {
    const std::size_t d = lambda.size();
    OptimalSpectrum out;
    out.s_star = minimal_feasible_index(lambda, a, tol);
    out.s_indices.push_back(0);

    std::vector<double> assembled(d);
    std::size_t s = 0;
    while (s < out.s_star) {
        const auto [next, c] = ladder_step(lambda, a, s, out.s_star, tol);
        for (std::size_t i = s; i < next; ++i) assembled[i] = c;
        out.c_consts.push_back(c);
        out.s_indices.push_back(next);
        s = next;
    }

    // Tail: water-fill the truncated pair. Remaining budget and profile
    // both drop the first s_star entries.
    std::vector<double> lam_tail(lambda.entries().begin() + static_cast<long>(out.s_star),
                                 lambda.entries().end());
    std::vector<double> a_tail(a.entries().begin() + static_cast<long>(out.s_star),
                               a.entries().end());
    const WaterfillResult wr = waterfill_a(
        Spectrum(std::move(lam_tail), Order::Ascending),
        Spectrum(std::move(a_tail), Order::Descending));
    for (std::size_t i = 0; i < d - out.s_star; ++i)
        assembled[out.s_star + i] = wr.nu[i];
    out.c_consts.push_back(wr.c);
    out.s_indices.push_back(out.s_star + wr.r);
    out.q = out.c_consts.size();

    out.nu_op = Spectrum(std::move(assembled), Order::Unordered);
    out.nu_op_desc = sort_desc(out.nu_op);
    return out;
}

} // namespace

OptimalSpectrum optimal_spectrum(const Spectrum& lambda_asc,
                                 const Spectrum& a_desc, double tol) {
    const std::size_t d = lambda_asc.size();
    const std::size_t k = a_desc.size();
    if (k >= d) return optimal_spectrum_k_ge_d(lambda_asc, a_desc, tol);

    // k < d: solve on the leading k eigenvalues, append the rest untouched.
    std::vector<double> head(lambda_asc.entries().begin(),
                             lambda_asc.entries().begin() + static_cast<long>(k));
    OptimalSpectrum out = optimal_spectrum_k_ge_d(
        Spectrum(std::move(head), Order::Ascending), a_desc, tol);

    std::vector<double> assembled = out.nu_op.entries();
    assembled.insert(assembled.end(),
                     lambda_asc.entries().begin() + static_cast<long>(k),
                     lambda_asc.entries().end());
    out.nu_op = Spectrum(std::move(assembled), Order::Unordered);
    out.nu_op_desc = sort_desc(out.nu_op);
    return out;
}

bool majorization_bound_check(const OptimalSpectrum& opt,
                              const Spectrum& spectrum, double tol) {
    if (spectrum.size() != opt.nu_op.size())
        throw LengthMismatchError("spectrum length must match nu_op");
    return majorizes(spectrum, opt.nu_op, tol);
}

BlockAnalysis analyze_completion(const Spectrum& lambda_asc,
                                 const Spectrum& a_desc,
                                 const Spectrum& pairing, double group_tol) {
    const std::size_t d = lambda_asc.size();
    const std::size_t k = a_desc.size();
    if (pairing.size() != d)
        throw LengthMismatchError("pairing vector must have length d");
    if (lambda_asc.order() != Order::Ascending)
        throw PreconditionError("lambda must be tagged ascending");

    std::vector<double> mu(d);
    for (std::size_t i = 0; i < d; ++i) mu[i] = pairing[i] - lambda_asc[i];

    const double scale = std::max(1.0, pairing.max_abs());
    const double zero_tol = group_tol * scale;
    for (std::size_t i = 0; i + 1 < d; ++i)
        if (mu[i + 1] > mu[i] + zero_tol)
            throw NotBlockStructuredError("mu is not non-increasing");

    std::size_t s_F = d;
    while (s_F > 0 && mu[s_F - 1] <= zero_tol) --s_F;

    BlockAnalysis out;
    if (s_F == 0) {
        out.residual_tail = lambda_asc.entries();
        return out;
    }

    const double merge = group_tol * std::max(1.0, pairing[0]);
    std::size_t start = 0;
    while (start < s_F) {
        const double c = pairing[start];
        std::size_t end = start;
        while (end + 1 < s_F && std::abs(pairing[end + 1] - c) <= merge) ++end;
        // Blocks must strictly decrease along the support.
        if (!out.c_list.empty() && c >= out.c_list.back() - merge)
            throw NotBlockStructuredError(
                "paired vector is not decreasing by blocks over supp(mu)");
        out.c_list.push_back(c);
        out.s_list.push_back(end + 1);
        out.K_blocks.emplace_back(start + 1, end + 1);
        out.J_blocks.emplace_back(start + 1, end + 1);
        start = end + 1;
    }
    out.p = out.c_list.size();
    // The last J-block runs to k.
    out.J_blocks.back().second = k;
    out.residual_tail.assign(lambda_asc.entries().begin() + static_cast<long>(s_F),
                             lambda_asc.entries().end());
    return out;
}

} // namespace framecomp
