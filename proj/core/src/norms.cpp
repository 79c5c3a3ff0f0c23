#include "framecomp/norms.hpp"

#include <algorithm>
#include <cmath>

#include "framecomp/errors.hpp"

namespace framecomp {

UINorm UINorm::frobenius() { return UINorm(Kind::Frobenius, 2.0, 0, true); }

UINorm UINorm::spectral() { return UINorm(Kind::Spectral, 0.0, 0, false); }

UINorm UINorm::schatten(double p) {
    if (p < 1.0) throw PreconditionError("Schatten norm requires p >= 1");
    return UINorm(Kind::SchattenP, p, 0, p > 1.0 && std::isfinite(p));
}

UINorm UINorm::ky_fan(std::size_t j) {
    if (j == 0) throw PreconditionError("Ky Fan norm requires j >= 1");
    return UINorm(Kind::KyFan, 0.0, j, false);
}

double uin_eval(const UINorm& norm, const Spectrum& values) {
    const Spectrum s = sort_desc(abs(values));
    switch (norm.kind()) {
        case UINorm::Kind::Frobenius: {
            double acc = 0.0;
            for (double x : s.entries()) acc += x * x;
            return std::sqrt(acc);
        }
        case UINorm::Kind::Spectral:
            return s.empty() ? 0.0 : s[0];
        case UINorm::Kind::SchattenP: {
            double acc = 0.0;
            for (double x : s.entries()) acc += std::pow(x, norm.p());
            return std::pow(acc, 1.0 / norm.p());
        }
        case UINorm::Kind::KyFan: {
            double acc = 0.0;
            const std::size_t m = std::min(norm.fan_j(), s.size());
            for (std::size_t i = 0; i < m; ++i) acc += s[i];
            return acc;
        }
    }
    return 0.0;
}

double uin_eval(const UINorm& norm, const HermitianMatrix& A) {
    return uin_eval(norm, A.eigenvalues_desc());
}

} // namespace framecomp
