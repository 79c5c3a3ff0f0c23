#include <doctest.h>

#include <random>

#include "framecomp/errors.hpp"
#include "framecomp/frame.hpp"
#include "support/oracles.hpp"

using namespace framecomp;

namespace {

Spectrum rand_lambda(std::mt19937_64& rng, std::size_t d) {
    auto v = oracles::random_vector(rng, d, 0.0, 5.0);
    std::sort(v.begin(), v.end());
    return Spectrum(std::move(v), Order::Ascending);
}

Spectrum rand_norms(std::mt19937_64& rng, std::size_t k) {
    auto v = oracles::random_vector(rng, k, 0.05, 5.0);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum(std::move(v), Order::Descending);
}

} // namespace

TEST_CASE("frame operator basics") {
    {
        Eigen::MatrixXcd onb = Eigen::MatrixXcd::Identity(2, 2);
        CHECK((frame_operator(FrameSeq(onb)).matrix() -
               Eigen::MatrixXcd::Identity(2, 2))
                  .norm() == doctest::Approx(0.0));
    }
    {
        Eigen::MatrixXcd one(2, 1);
        one << std::sqrt(3.0), 0.0;
        const auto S = frame_operator(FrameSeq(one));
        CHECK(S.matrix()(0, 0).real() == doctest::Approx(3.0));
        CHECK(S.matrix()(1, 1).real() == doctest::Approx(0.0));
    }
    {
        // Norm-squared 2 along (1,1)/sqrt(2): the all-ones matrix.
        Eigen::MatrixXcd v(2, 1);
        v << 1.0, 1.0;
        const auto S = frame_operator(FrameSeq(v));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(S.matrix()(i, j).real() == doctest::Approx(1.0));
    }
}

TEST_CASE("potential values") {
    const FrameSeq onb(Eigen::MatrixXcd::Identity(2, 2));
    CHECK(potential(HermitianMatrix::zero(2), onb, ConvexFn::square()) ==
          doctest::Approx(2.0));
    CHECK(trace_phi(HermitianMatrix::diagonal(Spectrum::descending({3.0, 1.0})),
                    ConvexFn::square()) == doctest::Approx(10.0));
    CHECK(trace_phi(HermitianMatrix::diagonal(Spectrum::descending({2.0, 2.0})),
                    ConvexFn::mse()) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_phi(HermitianMatrix::diagonal(Spectrum::descending({1.0, 0.0})),
                              ConvexFn::mse()),
                    DomainError);
}

TEST_CASE("schur-horn design worked instances") {
    {
        const FrameSeq G = schur_horn_design(Spectrum::descending({1.0, 1.0}),
                                             Spectrum::descending({1.0, 1.0}), 2);
        const auto S = frame_operator(G);
        CHECK((S.matrix() - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-10);
    }
    {
        const FrameSeq G = schur_horn_design(Spectrum::descending({2.0, 2.0}),
                                             Spectrum::descending({2.0, 2.0}), 2);
        const Spectrum norms = G.norm_squares();
        CHECK(norms[0] == doctest::Approx(2.0));
        CHECK(norms[1] == doctest::Approx(2.0));
        CHECK(std::abs(G.vector(0).dot(G.vector(1))) <= 1e-10);
    }
    {
        // Rank-one target: both vectors parallel.
        const FrameSeq G = schur_horn_design(Spectrum::descending({4.0, 0.0}),
                                             Spectrum::descending({3.0, 1.0}), 2);
        const Spectrum norms = G.norm_squares();
        CHECK(norms[0] == doctest::Approx(3.0));
        CHECK(norms[1] == doctest::Approx(1.0));
        const Spectrum spec = frame_operator(G).eigenvalues_desc();
        CHECK(spec[0] == doctest::Approx(4.0));
        CHECK(spec[1] == doctest::Approx(0.0));
        // Gram cross term for parallel vectors of norms 3 and 1.
        CHECK(std::abs(G.vector(0).dot(G.vector(1))) == doctest::Approx(std::sqrt(3.0)));
    }
    CHECK_THROWS_AS(schur_horn_design(Spectrum::descending({2.0, 2.0}),
                                      Spectrum::descending({3.0, 1.0}), 2),
                    InfeasibleDesignError);
}

TEST_CASE("schur-horn round-trip on random feasible targets") {
    std::mt19937_64 rng(401);
    for (int i = 0; i < 250; ++i) {
        const std::size_t d = 1 + i % 5;
        const std::size_t k = 1 + (i * 3) % 8;
        // Feasible instance: draw a completion, use its data.
        const Spectrum a = rand_norms(rng, k);
        const FrameSeq seed_frame =
            random_completion(static_cast<Eigen::Index>(d), a, 900 + static_cast<std::uint64_t>(i));
        const Spectrum mu = frame_operator(seed_frame).eigenvalues_desc();

        const FrameSeq G = schur_horn_design(mu, a, static_cast<Eigen::Index>(d));
        const Spectrum norms = G.norm_squares();
        for (std::size_t j = 0; j < k; ++j)
            CHECK(std::abs(norms[j] - a[j]) <= 1e-10 * std::max(1.0, a[0]));
        const Spectrum spec = frame_operator(G).eigenvalues_desc();
        for (std::size_t j = 0; j < d; ++j)
            CHECK(std::abs(spec[j] - mu[j]) <= 1e-8 * std::max(1.0, mu.max_abs()));
    }
}

TEST_CASE("infeasible design reports the violated prefix") {
    try {
        schur_horn_design(Spectrum::descending({2.0, 2.0}),
                          Spectrum::descending({3.0, 1.0}), 2);
        FAIL("expected InfeasibleDesignError");
    } catch (const InfeasibleDesignError& e) {
        CHECK(e.violated_prefix() == 1);
    }
}

TEST_CASE("optimal completion attains nu_op") {
    {
        // Empty base, tight completion.
        const auto [G, opt] = optimal_completion(HermitianMatrix::zero(2),
                                                 Spectrum::descending({2.0, 2.0}));
        const Spectrum spec = frame_operator(G).eigenvalues_desc();
        CHECK(spec[0] == doctest::Approx(2.0));
        CHECK(spec[1] == doctest::Approx(2.0));
    }
    {
        const auto [G, opt] = optimal_completion(HermitianMatrix::zero(2),
                                                 Spectrum::descending({3.0, 1.0}));
        const Spectrum spec = frame_operator(G).eigenvalues_desc();
        CHECK(spec[0] == doctest::Approx(3.0));
        CHECK(spec[1] == doctest::Approx(1.0));
        CHECK(potential(HermitianMatrix::zero(2), G, ConvexFn::square()) ==
              doctest::Approx(10.0));
    }
}

TEST_CASE("optimal completion randomized attainment and minimality") {
    std::mt19937_64 rng(409);
    for (int i = 0; i < 120; ++i) {
        const std::size_t d = 2 + i % 4;
        const std::size_t k = 1 + (i * 5) % 7;
        const Spectrum lam = rand_lambda(rng, d);
        const Spectrum a = rand_norms(rng, k);
        // Random base operator with spectrum lam in a random basis.
        const Eigen::MatrixXcd U =
            random_unitary(static_cast<Eigen::Index>(d), 7000 + static_cast<std::uint64_t>(i));
        Eigen::MatrixXcd S0m = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t j = 0; j < d; ++j)
            S0m += lam[j] * (U.col(static_cast<Eigen::Index>(j)) *
                             U.col(static_cast<Eigen::Index>(j)).adjoint());
        const HermitianMatrix S0(S0m);

        const auto [G, opt] = optimal_completion(S0, a);
        const HermitianMatrix SF(S0.matrix() + frame_operator(G).matrix());
        const Spectrum achieved = SF.eigenvalues_desc();
        for (std::size_t j = 0; j < d; ++j)
            CHECK(std::abs(achieved[j] - opt.nu_op_desc[j]) <=
                  1e-8 * std::max(1.0, opt.nu_op_desc[0]));

        const Spectrum norms = G.norm_squares();
        for (std::size_t j = 0; j < k; ++j)
            CHECK(std::abs(norms[j] - a[j]) <= 1e-10 * std::max(1.0, a[0]));

        // Constructed completion minimizes several potentials at once.
        std::vector<ConvexFn> phis = {ConvexFn::square(), ConvexFn::p_power(3.0)};
        if (opt.nu_op_desc[d - 1] > 0.05) phis.push_back(ConvexFn::mse());
        for (const auto& phi : phis) {
            const double val = potential(S0, G, phi);
            const double bound = trace_phi(sort_desc(opt.nu_op), phi);
            CHECK(std::abs(val - bound) <= 1e-8 * std::max(1.0, bound));
            for (int rep = 0; rep < 20; ++rep) {
                const FrameSeq R = random_completion(static_cast<Eigen::Index>(d), a,
                                                     static_cast<std::uint64_t>(i * 37 + rep));
                if (phi.kind() == ConvexFn::Kind::Mse) continue; // random G may be singular
                CHECK(potential(S0, R, phi) >= val - 1e-8 * std::max(1.0, val));
            }
        }
    }
}

TEST_CASE("random completion determinism, norms, isotropy") {
    const Spectrum a = Spectrum::descending({2.0, 1.0, 0.5});
    const FrameSeq G1 = random_completion(3, a, 42);
    const FrameSeq G2 = random_completion(3, a, 42);
    CHECK((G1.synthesis() - G2.synthesis()).norm() == 0.0);
    const FrameSeq G3 = random_completion(3, a, 43);
    CHECK((G1.synthesis() - G3.synthesis()).norm() > 0.0);

    const Spectrum norms = G1.norm_squares();
    CHECK(norms[0] == doctest::Approx(2.0));
    CHECK(norms[1] == doctest::Approx(1.0));
    CHECK(norms[2] == doctest::Approx(0.5));

    // Monte-Carlo isotropy: the average frame operator approaches
    // (tr a / d) I.
    const int draws = 10000;
    const int d = 2;
    const Spectrum a2 = Spectrum::descending({1.5, 1.0});
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < draws; ++i)
        avg += frame_operator(random_completion(d, a2, 10000 + static_cast<std::uint64_t>(i)))
                   .matrix();
    avg /= double(draws);
    const Eigen::MatrixXcd target =
        (a2.sum() / d) * Eigen::MatrixXcd::Identity(d, d);
    CHECK((avg - target).norm() <= 0.05 * target.norm());
}
