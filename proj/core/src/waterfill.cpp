#include "framecomp/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

void require_lambda(const Spectrum& lambda) {
    if (lambda.empty())
        throw PreconditionError("lambda must be nonempty");
    if (lambda.order() != Order::Ascending)
        throw PreconditionError("lambda must be tagged ascending");
    if (lambda[0] < 0.0)
        throw DomainError("lambda entries must be non-negative");
}

void require_norms(const Spectrum& a) {
    if (a.empty())
        throw DomainError("norm vector a must be nonempty");
    if (a.order() != Order::Descending)
        throw PreconditionError("a must be tagged descending");
    if (a[a.size() - 1] <= 0.0)
        throw DomainError("norm vector a must be strictly positive");
}

Spectrum truncate_asc(const Spectrum& lambda, std::size_t s) {
    std::vector<double> v(lambda.entries().begin() + static_cast<long>(s),
                          lambda.entries().end());
    return Spectrum(std::move(v), Order::Ascending);
}

Spectrum truncate_desc(const Spectrum& a, std::size_t s) {
    std::vector<double> v(a.entries().begin() + static_cast<long>(s),
                          a.entries().end());
    return Spectrum(std::move(v), Order::Descending);
}

} // namespace

double h_lambda(const Spectrum& lambda_asc, double x) {
    require_lambda(lambda_asc);
    if (x < lambda_asc[0])
        throw DomainError("h_lambda requires x >= lambda_1");
    double acc = 0.0;
    for (double li : lambda_asc.entries()) acc += std::max(x - li, 0.0);
    return acc;
}

WaterfillResult waterfill_t(const Spectrum& lambda_asc, double t) {
    require_lambda(lambda_asc);
    if (!(t > 0.0))
        throw DomainError("waterfill requires t > 0");

    const std::size_t d = lambda_asc.size();
    double prefix = 0.0;
    double c = 0.0;
    std::size_t r = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        prefix += lambda_asc[i - 1];
        const double level = (t + prefix) / static_cast<double>(i);
        if (lambda_asc[i - 1] <= level && (i == d || level < lambda_asc[i])) {
            c = level;
            r = i;
            break;
        }
    }
    // Existence and uniqueness hold for every t > 0; reaching here with
    // r == 0 would mean the piecewise-linear inversion is broken.
    if (r == 0)
        throw NoConvergenceError("water level inversion found no block");

    std::vector<double> nu(d), mu(d);
    for (std::size_t i = 0; i < d; ++i) {
        nu[i] = std::max(c, lambda_asc[i]);
        mu[i] = std::max(c - lambda_asc[i], 0.0);
    }
    return WaterfillResult{c, Spectrum(std::move(nu), Order::Ascending),
                           Spectrum(std::move(mu), Order::Descending), r};
}

WaterfillResult waterfill_a(const Spectrum& lambda_asc, const Spectrum& a_desc) {
    require_lambda(lambda_asc);
    require_norms(a_desc);

    const std::size_t d = lambda_asc.size();
    const std::size_t k = a_desc.size();
    const double t = a_desc.sum();
    if (k >= d) return waterfill_t(lambda_asc, t);

    // k < d: fill only the leading k-profile, keep the tail eigenvalues.
    std::vector<double> head(lambda_asc.entries().begin(),
                             lambda_asc.entries().begin() + static_cast<long>(k));
    const WaterfillResult wr = waterfill_t(Spectrum(std::move(head), Order::Ascending), t);

    std::vector<double> nu(d), mu(d, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        nu[i] = wr.nu[i];
        mu[i] = wr.mu[i];
    }
    for (std::size_t i = k; i < d; ++i) nu[i] = lambda_asc[i];
    return WaterfillResult{wr.c, Spectrum(std::move(nu), Order::Unordered),
                           Spectrum(std::move(mu), Order::Descending), wr.r};
}

FeasibilityReport is_feasible_pair(const Spectrum& lambda_asc,
                                   const Spectrum& a_desc, double tol,
                                   bool with_s_star) {
    const WaterfillResult wr = waterfill_a(lambda_asc, a_desc);
    const std::size_t r = std::min(a_desc.size(), lambda_asc.size());
    const double slack = tol * comparison_scale(a_desc, wr.mu);

    FeasibilityReport report;
    report.mu = wr.mu;
    report.feasible = true;
    double sa = 0.0, sm = 0.0;
    for (std::size_t j = 1; j < r; ++j) {
        sa += a_desc[j - 1];
        sm += wr.mu[j - 1];
        if (sa > sm + slack) {
            report.feasible = false;
            report.violated_prefix = j;
            break;
        }
    }
    if (with_s_star)
        report.s_star = minimal_feasible_index(lambda_asc, a_desc, tol);
    return report;
}

bool is_feasible_index(const Spectrum& lambda_asc, const Spectrum& a_desc,
                       std::size_t s, double tol) {
    require_lambda(lambda_asc);
    require_norms(a_desc);
    if (s > lambda_asc.size() - 1 || s >= a_desc.size())
        throw IndexOutOfRangeError("truncation index out of range");
    return is_feasible_pair(truncate_asc(lambda_asc, s),
                            truncate_desc(a_desc, s), tol)
        .feasible;
}

std::size_t minimal_feasible_index(const Spectrum& lambda_asc,
                                   const Spectrum& a_desc, double tol) {
    require_lambda(lambda_asc);
    require_norms(a_desc);
    if (a_desc.size() < lambda_asc.size())
        throw PreconditionError("minimal feasible index requires k >= d");
    for (std::size_t s = 0; s + 1 <= lambda_asc.size(); ++s) {
        if (is_feasible_index(lambda_asc, a_desc, s, tol)) return s;
    }
    throw NoConvergenceError("no feasible index found; s = d-1 should always be feasible");
}

} // namespace framecomp
