#include "framecomp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

bool is_sorted_for(const std::vector<double>& v, Order order) {
    if (order == Order::Ascending)
        return std::is_sorted(v.begin(), v.end());
    if (order == Order::Descending)
        return std::is_sorted(v.begin(), v.end(), std::greater<double>());
    return true;
}

} // namespace

Spectrum::Spectrum(std::vector<double> entries, Order order)
    : v_(std::move(entries)), order_(order) {
    if (!is_sorted_for(v_, order_))
        throw PreconditionError("spectrum entries do not match the declared order tag");
}

Spectrum::Spectrum(std::initializer_list<double> entries, Order order)
    : Spectrum(std::vector<double>(entries), order) {}

Spectrum Spectrum::ascending(std::vector<double> entries) {
    return Spectrum(std::move(entries), Order::Ascending);
}

Spectrum Spectrum::descending(std::vector<double> entries) {
    return Spectrum(std::move(entries), Order::Descending);
}

double Spectrum::sum() const noexcept {
    return std::accumulate(v_.begin(), v_.end(), 0.0);
}

double Spectrum::max_abs() const noexcept {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

Spectrum sort_desc(const Spectrum& x) {
    std::vector<double> v = x.entries();
    std::stable_sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum(std::move(v), Order::Descending);
}

Spectrum sort_asc(const Spectrum& x) {
    std::vector<double> v = x.entries();
    std::stable_sort(v.begin(), v.end());
    return Spectrum(std::move(v), Order::Ascending);
}

Spectrum abs(const Spectrum& x) {
    std::vector<double> v = x.entries();
    for (double& e : v) e = std::abs(e);
    return Spectrum(std::move(v), Order::Unordered);
}

double comparison_scale(const Spectrum& x, const Spectrum& y) {
    return std::max({1.0, x.max_abs(), y.max_abs()});
}

bool submajorizes(const Spectrum& y, const Spectrum& x, double tol) {
    if (x.empty() || y.empty())
        throw PreconditionError("submajorizes requires nonempty vectors");
    const Spectrum xd = sort_desc(x);
    const Spectrum yd = sort_desc(y);
    const double slack = tol * comparison_scale(x, y);
    const std::size_t m = std::min(xd.size(), yd.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        sx += xd[j];
        sy += yd[j];
        if (sx > sy + slack) return false;
    }
    return true;
}

bool majorizes(const Spectrum& y, const Spectrum& x, double tol) {
    if (x.size() != y.size())
        throw LengthMismatchError("majorizes requires equal lengths");
    if (!submajorizes(y, x, tol)) return false;
    const double slack = tol * comparison_scale(x, y);
    return std::abs(x.sum() - y.sum()) <= slack;
}

double trace_phi(const Spectrum& x, const ConvexFn& phi) {
    double acc = 0.0;
    for (double e : x.entries()) {
        if (!phi.in_domain(e))
            throw DomainError("entry outside the domain of " + phi.name());
        acc += phi(e);
    }
    return acc;
}

bool strict_major_equal_implies_perm(const Spectrum& a, const Spectrum& b,
                                     double tol) {
    if (a.size() != b.size())
        throw LengthMismatchError("strict_major_equal_implies_perm requires equal lengths");
    const double slack = tol * comparison_scale(a, b);
    auto close = [slack](const Spectrum& u, const Spectrum& v) {
        for (std::size_t i = 0; i < u.size(); ++i)
            if (std::abs(u[i] - v[i]) > slack) return false;
        return true;
    };
    const bool hypotheses =
        majorizes(a, b, tol) && close(sort_desc(abs(a)), sort_desc(abs(b)));
    if (!hypotheses) return true;
    return close(sort_desc(a), sort_desc(b));
}

} // namespace framecomp
