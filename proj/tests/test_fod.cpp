#include <doctest.h>

#include <random>

#include "framecomp/errors.hpp"
#include "framecomp/fod.hpp"
#include "support/oracles.hpp"

using namespace framecomp;

namespace {

Spectrum rand_norms(std::mt19937_64& rng, std::size_t k) {
    auto v = oracles::random_vector(rng, k, 0.05, 4.0);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum(std::move(v), Order::Descending);
}

const UINorm kNorms[] = {UINorm::frobenius(), UINorm::spectral(),
                         UINorm::schatten(3.0), UINorm::ky_fan(2)};

} // namespace

TEST_CASE("norm evaluation on singular values") {
    CHECK(uin_eval(UINorm::frobenius(), Spectrum({-2.0, 0.0})) == doctest::Approx(2.0));
    CHECK(uin_eval(UINorm::spectral(), Spectrum({1.0, 1.0, 1.0})) == doctest::Approx(1.0));
    CHECK(uin_eval(UINorm::ky_fan(1), Spectrum({3.0, 1.0})) == doctest::Approx(3.0));
    CHECK(uin_eval(UINorm::schatten(2.0), Spectrum({3.0, 4.0})) == doctest::Approx(5.0));
    CHECK_THROWS_AS(UINorm::schatten(0.5), PreconditionError);
    CHECK_THROWS_AS(UINorm::ky_fan(0), PreconditionError);
}

TEST_CASE("unitary invariance spot check") {
    std::mt19937_64 rng(503);
    for (int i = 0; i < 50; ++i) {
        const int d = 2 + i % 4;
        const HermitianMatrix A(oracles::random_psd(rng, d, 1.0));
        const Eigen::MatrixXcd U = random_unitary(d, 600 + static_cast<std::uint64_t>(i));
        const HermitianMatrix B(U * A.matrix() * U.adjoint());
        for (const auto& n : kNorms)
            CHECK(uin_eval(n, A) == doctest::Approx(uin_eval(n, B)).epsilon(1e-9));

        // Two-sided definition check: singular values of U A V (computed
        // with an independent SVD) carry the same norm.
        const Eigen::MatrixXcd V = random_unitary(d, 1600 + static_cast<std::uint64_t>(i));
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(U * A.matrix() * V);
        std::vector<double> sv(svd.singularValues().data(),
                               svd.singularValues().data() + d);
        for (const auto& n : kNorms)
            CHECK(uin_eval(n, Spectrum(sv)) ==
                  doctest::Approx(uin_eval(n, A)).epsilon(1e-9));
    }
}

TEST_CASE("worked fod instances") {
    {
        // a majorized by the spectrum: distance zero, S_G = S0.
        const HermitianMatrix S0 = HermitianMatrix::diagonal(Spectrum::descending({2.0, 2.0}));
        const auto sol = fod_minimum(S0, Spectrum::descending({2.0, 2.0}), UINorm::frobenius());
        CHECK(sol.min_value == doctest::Approx(0.0));
        CHECK((frame_operator(sol.G_op).matrix() - S0.matrix()).norm() <= 1e-8);
    }
    {
        const HermitianMatrix S0 = HermitianMatrix::diagonal(Spectrum::descending({1.0, 0.0}));
        const auto sol = fod_minimum(S0, Spectrum::descending({3.0}), UINorm::frobenius());
        CHECK(sol.min_value == doctest::Approx(2.0));
        CHECK(sol.achieved_value == doctest::Approx(2.0));
        const Spectrum dd = sort_desc(sol.delta);
        CHECK(dd[0] == doctest::Approx(0.0));
        CHECK(dd[1] == doctest::Approx(-2.0));
        // Optimizer is sqrt(3) e1 up to phase.
        CHECK(sol.G_op.norm_squares()[0] == doctest::Approx(3.0));
        CHECK(std::abs(sol.G_op.synthesis()(0, 0)) == doctest::Approx(std::sqrt(3.0)));
        // Direct sweep over unit directions confirms the minimum.
        Eigen::Matrix2cd s0m = Eigen::Matrix2cd::Zero();
        s0m(0, 0) = 1.0;
        double best = 1e300;
        for (int i = 0; i < 20000; ++i) {
            const double th = M_PI * i / 20000.0;
            Eigen::Vector2cd g(std::cos(th), std::sin(th));
            g *= std::sqrt(3.0);
            best = std::min(best, (s0m - g * g.adjoint()).norm());
        }
        CHECK(best == doctest::Approx(2.0).epsilon(1e-4));
    }
    {
        const HermitianMatrix S0 = HermitianMatrix::diagonal(Spectrum::descending({1.0, 0.0}));
        const auto sol = fod_minimum(S0, Spectrum::descending({3.0}), UINorm::spectral());
        CHECK(sol.min_value == doctest::Approx(2.0));
        CHECK(sol.achieved_value == doctest::Approx(2.0).epsilon(1e-8));
    }
}

TEST_CASE("random instances: attainment, lower bound, commutation") {
    std::mt19937_64 rng(509);
    for (int i = 0; i < 60; ++i) {
        const int d = 2 + i % 4;
        const std::size_t k = 1 + (i * 3) % 7; // includes k < d and k > d
        const HermitianMatrix S0(oracles::random_psd(rng, d, 1.5));
        const Spectrum a = rand_norms(rng, k);

        for (const auto& norm : kNorms) {
            const auto sol = fod_minimum(S0, a, norm);
            const double scale = std::max(1.0, sol.min_value);
            CHECK(sol.achieved_value <= sol.min_value + 1e-8 * scale);
            CHECK(sol.achieved_value >= sol.min_value - 1e-8 * scale);

            for (int rep = 0; rep < 25; ++rep) {
                const FrameSeq G = random_completion(d, a,
                                                     static_cast<std::uint64_t>(i * 53 + rep));
                const HermitianMatrix diff(S0.matrix() - frame_operator(G).matrix());
                CHECK(uin_eval(norm, diff) >= sol.min_value - 1e-9 * scale);
            }

            const double comm_scale = std::max(
                1.0, S0.frobenius_norm() * frame_operator(sol.G_op).frobenius_norm());
            CHECK(sol.commutator_residual <= 1e-8 * comm_scale);
        }
    }
}

TEST_CASE("reflection identity per random completion") {
    // lambda(S0 - S_G) ascending equals |S0| 1 - lambda(S0_tilde + S_G) desc.
    std::mt19937_64 rng(521);
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + i % 4;
        const std::size_t k = 1 + i % 6;
        const HermitianMatrix S0(oracles::random_psd(rng, d, 1.0));
        const Spectrum a = rand_norms(rng, k);
        const double top = S0.spectral_norm();
        const HermitianMatrix S0t(top * Eigen::MatrixXcd::Identity(d, d) - S0.matrix());

        const FrameSeq G = random_completion(d, a, 4000 + static_cast<std::uint64_t>(i));
        const HermitianMatrix SG = frame_operator(G);
        const Spectrum lhs =
            HermitianMatrix(S0.matrix() - SG.matrix()).eigenvalues_asc();
        const Spectrum sum =
            HermitianMatrix(S0t.matrix() + SG.matrix()).eigenvalues_desc();
        for (int j = 0; j < d; ++j)
            CHECK(lhs[static_cast<std::size_t>(j)] ==
                  doctest::Approx(top - sum[static_cast<std::size_t>(j)]).epsilon(1e-9));
    }
}

TEST_CASE("distance squared minus square potential is constant") {
    std::mt19937_64 rng(523);
    for (int i = 0; i < 10; ++i) {
        const int d = 2 + i % 3;
        const std::size_t k = 1 + i % 5;
        const HermitianMatrix S0(oracles::random_psd(rng, d, 1.0));
        const Spectrum a = rand_norms(rng, k);
        const double dev = fod_equals_potential_const(S0, a, 50, 77 + static_cast<std::uint64_t>(i));
        CHECK(dev <= 1e-8 * std::max(1.0, S0.frobenius_norm() + a.sum()));
    }
    // Degenerate bases.
    CHECK(fod_equals_potential_const(HermitianMatrix::zero(2),
                                     Spectrum::descending({1.0, 0.5}), 10, 3) <= 1e-10);
    CHECK(fod_equals_potential_const(HermitianMatrix::diagonal(Spectrum::descending({2.0})),
                                     Spectrum::descending({1.0}), 5, 4) <= 1e-10);
}

TEST_CASE("uniqueness predicate") {
    std::mt19937_64 rng(541);
    for (int i = 0; i < 30; ++i) {
        const int d = 2 + i % 3;
        const std::size_t k = 1 + i % 5;
        const HermitianMatrix S0(oracles::random_psd(rng, d, 1.0));
        const Spectrum a = rand_norms(rng, k);
        const auto sol = fod_minimum(S0, a, UINorm::frobenius());
        CHECK(fod_uniqueness_check(S0, a, sol.G_op, UINorm::frobenius()));
        for (int rep = 0; rep < 10; ++rep) {
            const FrameSeq G = random_completion(d, a, 8800 + static_cast<std::uint64_t>(i * 17 + rep));
            CHECK(fod_uniqueness_check(S0, a, G, UINorm::frobenius()));
        }
    }
    CHECK_THROWS_AS(fod_uniqueness_check(HermitianMatrix::zero(2),
                                         Spectrum::descending({1.0}),
                                         random_completion(2, Spectrum::descending({1.0}), 1),
                                         UINorm::spectral()),
                    PreconditionError);
}
