#include "doctest.h"

#include "test_support.hpp"

using namespace evicomb;
using testsup::frame_of;
using testsup::max_focal_gap;
using testsup::throws_mentioning;

TEST_CASE("dichotomous construction is validated") {
    const Frame f = frame_of(3);
    CHECK_NOTHROW(DichotomousMass(f, 0, 0.5, 0.3, 0.2));
    CHECK_THROWS_AS(DichotomousMass(f, 3, 0.5, 0.3, 0.2), MassError);
    CHECK_THROWS_AS(DichotomousMass(f, 0, 0.5, 0.3, 0.3), MassError);
    CHECK_THROWS_AS(DichotomousMass(f, 0, -0.1, 0.6, 0.5), MassError);
    CHECK_THROWS_AS(DichotomousMass(frame_of(1), 0, 0.5, 0.3, 0.2), MassError);

    const DichotomousMass d(f, 1, 0.5, 0.3, 0.2);
    CHECK(d.focus() == 1);
    CHECK(d.d() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(DichotomousMass::vacuous(f, 2).r() == 1.0);
}

TEST_CASE("bridge to the general representation") {
    const Frame f3 = frame_of(3);
    const DichotomousMass d(f3, 1, 0.5, 0.3, 0.2);
    const MassFunction g = to_general(d);
    CHECK(g.focal_count() == 3);
    CHECK(g.mass_bits(0b010u) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.mass_bits(0b101u) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(g.mass_bits(0b111u) == doctest::Approx(0.2).epsilon(1e-12));

    // At frame size 2 the complement of the focus is the other singleton.
    const Frame f2 = frame_of(2);
    const MassFunction g2 = to_general(DichotomousMass(f2, 0, 0.6, 0.4, 0.0));
    CHECK(g2.focal_count() == 2);
    CHECK(g2.mass_bits(0b10u) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("repeated-focus pair reproduces the worked values") {
    const Frame f = frame_of(3);
    const std::vector<DichotomousMass> ds{DichotomousMass(f, 0, 0.4, 0.4, 0.2),
                                          DichotomousMass(f, 0, 0.5, 0.3, 0.2)};
    CHECK(normalization_repeated(ds) == doctest::Approx(0.68).epsilon(1e-12));
    const DichotomousMass c = combine_repeated(ds);
    CHECK(c.p() == doctest::Approx(0.38 / 0.68).epsilon(1e-12));
    CHECK(c.c() == doctest::Approx(0.26 / 0.68).epsilon(1e-12));
    CHECK(c.r() == doctest::Approx(0.04 / 0.68).epsilon(1e-12));
}

TEST_CASE("repeated-focus chains match the general oracle") {
    Sampler sampler(21);
    double worst_mass = 0.0, worst_norm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Frame f = frame_of(2 + trial % 5);
        const std::size_t focus = sampler.uniform_index(f.size());
        const std::size_t l = 1 + sampler.uniform_index(6);
        std::vector<DichotomousMass> ds;
        std::vector<MassFunction> ms;
        double oracle_k = 1.0;
        for (std::size_t i = 0; i < l; ++i) {
            ds.push_back(sampler.dichotomous(f, focus));
            ms.push_back(to_general(ds.back()));
            if (i > 0) oracle_k *= 1.0 - conflict(combine_all({ms.data(), i}), ms[i]);
        }
        worst_mass = std::max(
            worst_mass, max_focal_gap(to_general(combine_repeated(ds)), combine_all(ms)));
        worst_norm = std::max(worst_norm,
                              std::abs(normalization_repeated(ds) - oracle_k));
    }
    CHECK(worst_mass <= 1e-12);
    CHECK(worst_norm <= 1e-12);
}

TEST_CASE("certainty special cases collapse to the closed forms") {
    Sampler sampler(22);
    const Frame f = frame_of(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t l = 2 + sampler.uniform_index(4);
        std::vector<DichotomousMass> ds;
        for (std::size_t i = 0; i < l; ++i) ds.push_back(sampler.dichotomous(f, 2));
        const std::size_t certain = sampler.uniform_index(l);

        // p_i = 1: K^-1 collapses to the product of (1 - c_j) over the rest,
        // and the combined mass is certain about the focus.
        {
            std::vector<DichotomousMass> with_p = ds;
            with_p[certain] = DichotomousMass(f, 2, 1.0, 0.0, 0.0);
            double expect_k = 1.0;
            for (std::size_t j = 0; j < l; ++j) {
                if (j != certain) expect_k *= 1.0 - with_p[j].c();
            }
            CHECK(normalization_repeated(with_p) ==
                  doctest::Approx(expect_k).epsilon(1e-12));
            const DichotomousMass c = combine_repeated(with_p);
            CHECK(c.p() == doctest::Approx(1.0).epsilon(1e-12));
            std::vector<MassFunction> ms;
            for (const auto& d : with_p) ms.push_back(to_general(d));
            CHECK(max_focal_gap(to_general(c), combine_all(ms)) <= 1e-12);
        }
        // c_i = 1: K^-1 collapses to the product of d_j = c_j + r_j.
        {
            std::vector<DichotomousMass> with_c = ds;
            with_c[certain] = DichotomousMass(f, 2, 0.0, 1.0, 0.0);
            double expect_k = 1.0;
            for (std::size_t j = 0; j < l; ++j) {
                if (j != certain) expect_k *= with_c[j].d();
            }
            CHECK(normalization_repeated(with_c) ==
                  doctest::Approx(expect_k).epsilon(1e-12));
            const DichotomousMass c = combine_repeated(with_c);
            CHECK(c.p() == doctest::Approx(0.0).epsilon(1e-12));
            std::vector<MassFunction> ms;
            for (const auto& d : with_c) ms.push_back(to_general(d));
            CHECK(max_focal_gap(to_general(c), combine_all(ms)) <= 1e-12);
        }
    }
}

TEST_CASE("opposing certainties are non-combinable") {
    const Frame f = frame_of(2);
    const std::vector<DichotomousMass> ds{DichotomousMass(f, 0, 1.0, 0.0, 0.0),
                                          DichotomousMass(f, 0, 0.0, 1.0, 0.0)};
    try {
        combine_repeated(ds);
        FAIL("expected TotalConflictError");
    } catch (const TotalConflictError& e) {
        CHECK(e.step() == 1);
        CHECK(std::string(e.what()).find("fold step 1") != std::string::npos);
    }
}

TEST_CASE("chain preconditions are enforced") {
    const Frame f = frame_of(3);
    const DichotomousMass a(f, 0, 0.5, 0.3, 0.2);
    const DichotomousMass b(f, 1, 0.5, 0.3, 0.2);
    const std::vector<DichotomousMass> mixed{a, b};
    CHECK(throws_mentioning([&] { combine_repeated(mixed); }, "mixed focuses"));
    CHECK_THROWS_AS(combine_repeated({}), MassError);

    const Frame other = frame_of(3);
    const std::vector<DichotomousMass> crossed{a, DichotomousMass(other, 0, 0.5, 0.3, 0.2)};
    CHECK_THROWS_AS(combine_repeated(crossed), FrameMismatchError);

    const std::vector<DichotomousMass> single{a};
    const DichotomousMass same = combine_repeated(single);
    CHECK(same.p() == a.p());
    CHECK(normalization_repeated(single) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vacuous evidence does not move a chain") {
    Sampler sampler(23);
    const Frame f = frame_of(3);
    for (int trial = 0; trial < 20; ++trial) {
        const DichotomousMass d = sampler.dichotomous(f, 1);
        const std::vector<DichotomousMass> ds{d, DichotomousMass::vacuous(f, 1)};
        const DichotomousMass c = combine_repeated(ds);
        CHECK(c.p() == doctest::Approx(d.p()).epsilon(1e-12));
        CHECK(c.c() == doctest::Approx(d.c()).epsilon(1e-12));
        CHECK(c.r() == doctest::Approx(d.r()).epsilon(1e-12));
    }
}

TEST_CASE("long chains stay numerically sane") {
    Sampler sampler(24);
    const Frame f = frame_of(2);
    std::vector<DichotomousMass> ds;
    for (int i = 0; i < 5000; ++i) ds.push_back(sampler.dichotomous(f, 0));
    const DichotomousMass c = combine_repeated(ds);
    CHECK(c.p() + c.c() + c.r() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.p() >= 0.0);
    CHECK(c.r() >= 0.0);
}
