#include "framecomp/convex.hpp"

#include <cmath>

namespace framecomp {

ConvexFn ConvexFn::square() {
    return ConvexFn(Kind::Square,
                    [](double x) { return x * x; },
                    [](double x) { return 2.0 * x; },
                    -std::numeric_limits<double>::infinity(),
                    /*strictly_convex=*/true, "square");
}

ConvexFn ConvexFn::mse() {
    return ConvexFn(Kind::Mse,
                    [](double x) { return 1.0 / x; },
                    [](double x) { return -1.0 / (x * x); },
                    /*domain_min=*/std::numeric_limits<double>::min(),
                    /*strictly_convex=*/true, "mse");
}

ConvexFn ConvexFn::p_power(double p) {
    return ConvexFn(Kind::PPower,
                    [p](double x) { return std::pow(x, p); },
                    [p](double x) { return p * std::pow(x, p - 1.0); },
                    /*domain_min=*/0.0,
                    /*strictly_convex=*/p > 1.0, "p_power(" + std::to_string(p) + ")");
}

ConvexFn ConvexFn::exponential() {
    return ConvexFn(Kind::Exp,
                    [](double x) { return std::exp(x); },
                    [](double x) { return std::exp(x); },
                    -std::numeric_limits<double>::infinity(),
                    /*strictly_convex=*/true, "exp");
}

ConvexFn ConvexFn::custom(std::function<double(double)> fn,
                          std::function<double(double)> derivative,
                          double domain_min, bool strictly_convex,
                          std::string name) {
    return ConvexFn(Kind::Custom, std::move(fn), std::move(derivative),
                    domain_min, strictly_convex, std::move(name));
}

} // namespace framecomp
