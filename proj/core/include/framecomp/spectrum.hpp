#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "framecomp/convex.hpp"

namespace framecomp {

enum class Order { Ascending, Descending, Unordered };

/// Finite real vector with an ordering tag: the common carrier for
/// eigenvalue lists (ascending), prescribed squared norms (descending)
/// and water-filling outputs (possibly unordered).
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<double> entries, Order order = Order::Unordered);
    Spectrum(std::initializer_list<double> entries, Order order = Order::Unordered);

    static Spectrum ascending(std::vector<double> entries);
    static Spectrum descending(std::vector<double> entries);

    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& entries() const noexcept { return v_; }
    Order order() const noexcept { return order_; }

    double sum() const noexcept;
    double max_abs() const noexcept;

    bool operator==(const Spectrum& other) const noexcept {
        return v_ == other.v_;
    }

private:
    std::vector<double> v_;
    Order order_ = Order::Unordered;
};

/// Stable descending (resp. ascending) re-sort; ties keep input order.
Spectrum sort_desc(const Spectrum& x);
Spectrum sort_asc(const Spectrum& x);

/// Entrywise absolute value, tag reset to unordered.
Spectrum abs(const Spectrum& x);

/// Relative comparison scale used by the majorization predicates:
/// max(1, |x|_inf, |y|_inf).
double comparison_scale(const Spectrum& x, const Spectrum& y);

constexpr double kMajorizationTol = 1e-9;

/// x submajorized by y: every partial sum of x-sorted-descending is at
/// most the matching partial sum of y, up to tol * comparison_scale.
/// Lengths may differ; prefixes run to the shorter length.
bool submajorizes(const Spectrum& y, const Spectrum& x,
                  double tol = kMajorizationTol);

/// x majorized by y: submajorization plus matching totals. Lengths must
/// agree.
bool majorizes(const Spectrum& y, const Spectrum& x,
               double tol = kMajorizationTol);

/// Sum of phi over the entries. Throws DomainError when any entry falls
/// outside phi's domain.
double trace_phi(const Spectrum& x, const ConvexFn& phi);

/// Truth of: (a majorizes b and |a| and |b| sort equal) implies a and b
/// sort equal. Vacuously true when the hypotheses fail. Property-test
/// hook for the uniqueness step of the distance minimizer.
bool strict_major_equal_implies_perm(const Spectrum& a, const Spectrum& b,
                                     double tol = kMajorizationTol);

} // namespace framecomp
