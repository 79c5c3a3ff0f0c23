#pragma once

#include <functional>
#include <limits>
#include <string>

namespace framecomp {

/// Scalar convex map applied entrywise to spectra (and through the
/// functional calculus to Hermitian matrices). The closed enumeration
/// covers the potentials used throughout: x^2 (frame potential), 1/x
/// (mean squared error), x^p, exp(x); Custom takes user callbacks with a
/// declared domain and strictness flag.
class ConvexFn {
public:
    enum class Kind { Square, Mse, PPower, Exp, Custom };

    static ConvexFn square();
    static ConvexFn mse();
    static ConvexFn p_power(double p);
    static ConvexFn exponential();
    static ConvexFn custom(std::function<double(double)> fn,
                           std::function<double(double)> derivative,
                           double domain_min,
                           bool strictly_convex,
                           std::string name = "custom");

    Kind kind() const noexcept { return kind_; }
    bool strictly_convex() const noexcept { return strictly_convex_; }
    /// Values strictly below this are outside the domain. Square/Exp use
    /// -inf; Mse and PPower require the non-negative axis (Mse strictly
    /// positive, enforced by the caller's tolerance policy).
    double domain_min() const noexcept { return domain_min_; }
    bool differentiable() const noexcept { return static_cast<bool>(dfn_); }
    const std::string& name() const noexcept { return name_; }

    double operator()(double x) const { return fn_(x); }
    double derivative(double x) const { return dfn_(x); }

    bool in_domain(double x) const noexcept { return x >= domain_min_; }

private:
    ConvexFn(Kind kind, std::function<double(double)> fn,
             std::function<double(double)> dfn, double domain_min,
             bool strictly_convex, std::string name)
        : kind_(kind), fn_(std::move(fn)), dfn_(std::move(dfn)),
          domain_min_(domain_min), strictly_convex_(strictly_convex),
          name_(std::move(name)) {}

    Kind kind_;
    std::function<double(double)> fn_;
    std::function<double(double)> dfn_;
    double domain_min_;
    bool strictly_convex_;
    std::string name_;
};

} // namespace framecomp
