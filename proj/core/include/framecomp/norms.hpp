#pragma once

#include <cstddef>

#include "framecomp/hermitian.hpp"
#include "framecomp/spectrum.hpp"

namespace framecomp {

/// Unitarily invariant norm, evaluated on singular values: Frobenius
/// (l2), spectral (l-inf), Schatten-p (lp), Ky Fan (sum of the j
/// largest). Strict convexity holds for Frobenius and Schatten with
/// 1 < p < inf; it gates the uniqueness checks downstream.
class UINorm {
public:
    enum class Kind { Frobenius, Spectral, SchattenP, KyFan };

    static UINorm frobenius();
    static UINorm spectral();
    static UINorm schatten(double p);
    static UINorm ky_fan(std::size_t j);

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    std::size_t fan_j() const noexcept { return j_; }
    bool strictly_convex() const noexcept { return strictly_convex_; }

private:
    UINorm(Kind kind, double p, std::size_t j, bool sc)
        : kind_(kind), p_(p), j_(j), strictly_convex_(sc) {}

    Kind kind_;
    double p_;
    std::size_t j_;
    bool strictly_convex_;
};

/// Norm of a vector of singular values (entries are taken in absolute
/// value, so eigenvalue lists of Hermitian matrices work directly).
double uin_eval(const UINorm& norm, const Spectrum& values);

/// Norm of a Hermitian matrix: singular values are the absolute
/// eigenvalues.
double uin_eval(const UINorm& norm, const HermitianMatrix& A);

} // namespace framecomp
