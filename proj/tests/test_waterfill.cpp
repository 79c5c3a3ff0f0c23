#include <doctest.h>

#include <random>

#include "framecomp/errors.hpp"
#include "framecomp/waterfill.hpp"
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

TEST_CASE("h_lambda basics") {
    CHECK(h_lambda(Spectrum::ascending({0.0, 0.0}), 1.0) == doctest::Approx(2.0));
    CHECK(h_lambda(Spectrum::ascending({1.0, 2.0, 4.0}), 2.5) == doctest::Approx(2.0));
    CHECK(h_lambda(Spectrum::ascending({1.0, 2.0, 4.0}), 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(h_lambda(Spectrum::ascending({1.0, 2.0}), 0.5), DomainError);
}

TEST_CASE("waterfill_t worked instances") {
    {
        const auto r = waterfill_t(Spectrum::ascending({0.0, 0.0}), 4.0);
        CHECK(r.c == doctest::Approx(2.0));
        CHECK(r.nu.entries() == std::vector<double>{2.0, 2.0});
        CHECK(r.mu.entries() == std::vector<double>{2.0, 2.0});
        CHECK(r.r == 2);
    }
    {
        const auto r = waterfill_t(Spectrum::ascending({1.0, 2.0, 4.0}), 2.0);
        CHECK(r.c == doctest::Approx(2.5));
        CHECK(r.nu[0] == doctest::Approx(2.5));
        CHECK(r.nu[1] == doctest::Approx(2.5));
        CHECK(r.nu[2] == doctest::Approx(4.0));
        CHECK(r.mu[0] == doctest::Approx(1.5));
        CHECK(r.mu[1] == doctest::Approx(0.5));
        CHECK(r.mu[2] == doctest::Approx(0.0));
        CHECK(r.r == 2);
    }
    {
        const auto r = waterfill_t(Spectrum::ascending({1.0, 2.0, 4.0}), 10.0);
        CHECK(r.c == doctest::Approx(17.0 / 3.0));
        CHECK(r.r == 3);
        CHECK(r.nu.sum() == doctest::Approx(17.0));
    }
    CHECK_THROWS_AS(waterfill_t(Spectrum::ascending({1.0}), 0.0), DomainError);
}

TEST_CASE("closed-form level agrees with bisection") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> tdist(0.01, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 1 + i % 8;
        const Spectrum lam = rand_lambda(rng, d);
        const double t = tdist(rng);
        const auto r = waterfill_t(lam, t);
        const double c_ref = oracles::bisect_water_level(lam.entries(), t);
        CHECK(std::abs(r.c - c_ref) <= 1e-10 * std::max(1.0, c_ref));
        CHECK(std::abs(h_lambda(lam, r.c) - t) <= 1e-10 * std::max(1.0, t));
        CHECK(std::abs(r.nu.sum() - (lam.sum() + t)) <= 1e-10 * std::max(1.0, lam.sum() + t));
        for (std::size_t j = 0; j < d; ++j) CHECK(r.nu[j] >= lam[j]);
        for (std::size_t j = 0; j + 1 < d; ++j) CHECK(r.mu[j] >= r.mu[j + 1] - 1e-12);
    }
}

TEST_CASE("lift uniqueness among flat-prefix candidates") {
    // Any vector (e 1_s, lambda_{s+1}, ..) that dominates lambda with the
    // right trace is the water-fill output.
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 2 + i % 5;
        const Spectrum lam = rand_lambda(rng, d);
        const double t = tdist(rng);
        const auto wf = waterfill_t(lam, t);
        int admissible = 0;
        for (std::size_t s = 1; s <= d; ++s) {
            double tail = 0.0;
            for (std::size_t j = s; j < d; ++j) tail += lam[j];
            const double e = (lam.sum() + t - tail) / static_cast<double>(s);
            bool ok = e > 0.0;
            for (std::size_t j = 0; j < s && ok; ++j) ok = e >= lam[j] - 1e-12;
            if (s < d && e > lam[s] + 1e-12) ok = false; // must stay ordered
            if (!ok) continue;
            ++admissible;
            CHECK(std::abs(e - wf.c) <= 1e-9 * std::max(1.0, wf.c));
        }
        CHECK(admissible >= 1);
    }
}

TEST_CASE("waterfill_a branches") {
    {
        const auto r = waterfill_a(Spectrum::ascending({0.0, 0.0}),
                                   Spectrum::descending({3.0, 1.0}));
        CHECK(r.nu.entries() == std::vector<double>{2.0, 2.0});
        CHECK(r.mu.entries() == std::vector<double>{2.0, 2.0});
    }
    {
        // k < d: only the leading profile is filled.
        const auto r = waterfill_a(Spectrum::ascending({0.0, 1.0}),
                                   Spectrum::descending({3.0}));
        CHECK(r.nu.entries() == std::vector<double>{3.0, 1.0});
        CHECK(r.mu.entries() == std::vector<double>{3.0, 0.0});
        CHECK(r.nu.order() == Order::Unordered);
    }
    {
        const auto r = waterfill_a(Spectrum::ascending({0.0}), Spectrum::descending({5.0}));
        CHECK(r.nu.entries() == std::vector<double>{5.0});
        CHECK(r.mu.entries() == std::vector<double>{5.0});
    }
    CHECK_THROWS_AS(waterfill_a(Spectrum::ascending({0.0}), Spectrum::descending({})),
                    DomainError);
}

TEST_CASE("feasible pairs") {
    CHECK(is_feasible_pair(Spectrum::ascending({0.0, 0.0}),
                           Spectrum::descending({2.0, 2.0}))
              .feasible);
    {
        const auto rep = is_feasible_pair(Spectrum::ascending({0.0, 0.0}),
                                          Spectrum::descending({3.0, 1.0}));
        CHECK_FALSE(rep.feasible);
        REQUIRE(rep.violated_prefix.has_value());
        CHECK(*rep.violated_prefix == 1);
    }
    {
        const auto rep = is_feasible_pair(Spectrum::ascending({1.0, 2.0, 4.0}),
                                          Spectrum::descending({1.5, 0.5}));
        CHECK(rep.feasible);
        CHECK(rep.mu[0] == doctest::Approx(1.5));
        CHECK(rep.mu[1] == doctest::Approx(0.5));
        CHECK(rep.mu[2] == doctest::Approx(0.0));
    }
}

TEST_CASE("feasible index and the minimal scan") {
    const Spectrum lam = Spectrum::ascending({0.0, 0.0});
    const Spectrum a = Spectrum::descending({3.0, 1.0});
    CHECK(is_feasible_index(lam, a, 0) ==
          is_feasible_pair(lam, a).feasible); // s = 0 is the pair itself
    CHECK_FALSE(is_feasible_index(lam, a, 0));
    CHECK(is_feasible_index(lam, a, 1));
    CHECK(minimal_feasible_index(lam, a) == 1);

    CHECK(minimal_feasible_index(Spectrum::ascending({0.0, 0.0}),
                                 Spectrum::descending({2.0, 2.0})) == 0);
    CHECK(minimal_feasible_index(Spectrum::ascending({0.0, 0.0, 0.0}),
                                 Spectrum::descending({9.0, 1.0, 1.0, 1.0})) == 1);

    const auto rep = is_feasible_pair(lam, a, kMajorizationTol, /*with_s_star=*/true);
    REQUIRE(rep.s_star.has_value());
    CHECK(*rep.s_star == 1);

    CHECK_THROWS_AS(is_feasible_index(lam, a, 2), IndexOutOfRangeError);
    CHECK_THROWS_AS(minimal_feasible_index(Spectrum::ascending({0.0, 0.0}),
                                           Spectrum::descending({1.0})),
                    PreconditionError);
}

TEST_CASE("minimal index is minimal and always exists for k >= d") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 300; ++i) {
        const std::size_t d = 2 + i % 5;
        const std::size_t k = d + i % 4;
        const Spectrum lam = rand_lambda(rng, d);
        const Spectrum a = rand_norms(rng, k);
        const std::size_t s = minimal_feasible_index(lam, a);
        CHECK(is_feasible_index(lam, a, s));
        for (std::size_t below = 0; below < s; ++below)
            CHECK_FALSE(is_feasible_index(lam, a, below));
    }
}
