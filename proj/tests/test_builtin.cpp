#include "mns/builtin.hpp"
#include "mns/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mns;

namespace {

double real_image(const DiscMoebius& f, double x) {
    return circle_to_real(f.apply(oracle::real_to_circle(x))).value().real();
}

bool covers_real(const NumberSystemSpec& spec, const char* symbol, double x) {
    return spec.cover[spec.alphabet.index_of(symbol)].contains(CirclePoint::from_complex(oracle::real_to_circle(x)));
}

const DiscMoebius& map_of(const NumberSystemSpec& spec, const char* symbol) {
    return spec.transforms[spec.alphabet.index_of(symbol)];
}

} // namespace

TEST(Registry, Names) {
    EXPECT_EQ(builtin_names(), (std::vector<std::string>{"parabolic3", "cf", "binary", "hyperbolic4"}));
    for (const auto& name : builtin_names()) {
        const NumberSystemSpec spec = builtin_spec(name);
        EXPECT_EQ(spec.name, name);
        EXPECT_NO_THROW(spec.validate());
    }
    EXPECT_THROW(builtin_spec("ternary"), ConfigError);
}

TEST(Binary, RealLineMaps) {
    const NumberSystemSpec spec = binary_system();
    for (double x : {-3.0, -0.4, 0.0, 0.3, 1.7, 12.0}) {
        EXPECT_NEAR(real_image(map_of(spec, "1-"), x), (x - 1.0) / 2.0, 1e-9);
        EXPECT_NEAR(real_image(map_of(spec, "0"), x), x / 2.0, 1e-9);
        EXPECT_NEAR(real_image(map_of(spec, "1"), x), (x + 1.0) / 2.0, 1e-9);
        EXPECT_NEAR(real_image(map_of(spec, "2"), x), 2.0 * x, 1e-9);
    }
    for (const auto& f : spec.transforms) {
        EXPECT_NEAR(f.trace_squared(), 4.5, tol::trace);
        EXPECT_EQ(classify(f).kind, MoebiusKind::hyperbolic);
    }
}

TEST(Binary, CoverEndpoints) {
    const NumberSystemSpec spec = binary_system();
    const double q_minus = std::arg(cplx(-8.0, -15.0));
    const double q_plus = std::arg(cplx(8.0, -15.0));
    const double h_minus = std::arg(cplx(-4.0, -3.0));
    const double h_plus = std::arg(cplx(4.0, -3.0));
    auto only_arc = [&](const char* s) { return spec.cover[spec.alphabet.index_of(s)].arcs().at(0); };
    EXPECT_NEAR(circle_distance(only_arc("1-").start(), pi), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("1-").end(), q_minus), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("0").start(), h_minus), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("0").end(), h_plus), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("1").start(), q_plus), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("1").end(), 0.0), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("2").start(), h_plus), 0.0, 1e-12);
    EXPECT_NEAR(circle_distance(only_arc("2").end(), h_minus), 0.0, 1e-12);
}

TEST(Binary, CoverOnTheRealLine) {
    const NumberSystemSpec spec = binary_system();
    // W_1- = (-1, -1/4), W_0 = (-1/2, 1/2), W_1 = (1/4, 1), W_2 = |x| > 1/2.
    EXPECT_TRUE(covers_real(spec, "1-", -0.5));
    EXPECT_FALSE(covers_real(spec, "1-", -0.2));
    EXPECT_FALSE(covers_real(spec, "1-", -1.1));
    EXPECT_TRUE(covers_real(spec, "0", 0.0));
    EXPECT_FALSE(covers_real(spec, "0", 0.6));
    EXPECT_TRUE(covers_real(spec, "1", 0.5));
    EXPECT_FALSE(covers_real(spec, "1", 1.1));
    EXPECT_TRUE(covers_real(spec, "2", 0.75));
    EXPECT_TRUE(covers_real(spec, "2", -40.0));
    EXPECT_FALSE(covers_real(spec, "2", 0.25));
}

TEST(Binary, ForbiddenWords) {
    const NumberSystemSpec spec = binary_system();
    EXPECT_EQ(spec.subshift.forbidden().size(), 6u);
    for (auto w : {"20", "02", "12", "1-2", "11-", "1-1"})
        EXPECT_FALSE(spec.subshift.in_language(spec.alphabet.parse(w))) << w;
}

TEST(BinaryTrivial, FullCover) {
    const NumberSystemSpec spec = binary_trivial_cover_system();
    for (const auto& w : spec.cover)
        EXPECT_TRUE(w.is_full());
}

TEST(Cf, Maps) {
    const NumberSystemSpec spec = cf_system();
    for (double x : {-2.5, -0.3, 0.7, 4.0}) {
        EXPECT_NEAR(real_image(map_of(spec, "1"), x), x + 1.0, 1e-9);
        EXPECT_NEAR(real_image(map_of(spec, "1-"), x), x - 1.0, 1e-9);
        EXPECT_NEAR(real_image(map_of(spec, "0"), x), -1.0 / x, 1e-9);
    }
    EXPECT_EQ(classify(map_of(spec, "1")).kind, MoebiusKind::parabolic);
    EXPECT_EQ(classify(map_of(spec, "1-")).kind, MoebiusKind::parabolic);
    EXPECT_EQ(classify(map_of(spec, "0")).kind, MoebiusKind::elliptic);
    EXPECT_EQ(classify(map_of(spec, "0") * map_of(spec, "1")).kind, MoebiusKind::elliptic);
}

TEST(Cf, CoverOnTheRealLine) {
    const NumberSystemSpec spec = cf_system();
    // W_1- = x < -1, W_0 = |x| < 1, W_1 = x > 1.
    EXPECT_TRUE(covers_real(spec, "1", 2.0));
    EXPECT_TRUE(covers_real(spec, "1-", -2.0));
    EXPECT_TRUE(covers_real(spec, "0", 0.5));
    EXPECT_TRUE(covers_real(spec, "0", -0.5));
    EXPECT_FALSE(covers_real(spec, "0", 2.0));
}

TEST(Hyperbolic4, CoverIsExpansionIntervals) {
    const NumberSystemSpec spec = hyperbolic4_system();
    for (Symbol a = 0; a < 4; ++a) {
        EXPECT_EQ(classify(spec.transforms[a]).kind, MoebiusKind::hyperbolic);
        EXPECT_LE(expansion_interval(spec.transforms[a]).distance(spec.cover[a]), 1e-9) << int(a);
    }
    EXPECT_TRUE((spec.transforms[0] * spec.transforms[2]).is_identity());
    EXPECT_TRUE((spec.transforms[1] * spec.transforms[3]).is_identity());
    EXPECT_NEAR(spec.cover[1].arcs()[0].length(), pi / 2.0, 1e-12);
}

TEST(Parabolic3, VertexConstraints) {
    const NumberSystemSpec spec = parabolic3_system();
    const cplx A = 1.0, B = std::polar(1.0, two_pi / 3.0), C = std::polar(1.0, 2.0 * two_pi / 3.0);
    const auto& fa = map_of(spec, "a");
    const auto& fb = map_of(spec, "b");
    const auto& fc = map_of(spec, "c");
    EXPECT_LT(std::abs(fa.apply(A) - A), 1e-12);
    EXPECT_LT(std::abs(fa.apply(C) - B), 1e-12);
    EXPECT_LT(std::abs(fb.apply(B) - B), 1e-12);
    EXPECT_LT(std::abs(fb.apply(A) - C), 1e-12);
    EXPECT_LT(std::abs(fc.apply(C) - C), 1e-12);
    EXPECT_LT(std::abs(fc.apply(B) - A), 1e-12);
    for (const auto& f : spec.transforms) {
        EXPECT_EQ(classify(f).kind, MoebiusKind::parabolic);
        EXPECT_LE(expansion_interval(f).distance(spec.cover[&f - spec.transforms.data()]), 1e-12);
    }
}

TEST(Parabolic3, CoverIsTheSides) {
    const NumberSystemSpec spec = parabolic3_system();
    // V_a is the side from A to B.
    EXPECT_LE(spec.cover[0].distance(ArcSet::arc(0.0, two_pi / 3.0)), 1e-9);
}

TEST(Parabolic3Rotated, CoverRunsFromCToA) {
    const NumberSystemSpec spec = parabolic3_rotated_cover_system();
    EXPECT_LE(spec.cover[0].distance(ArcSet::arc(2.0 * two_pi / 3.0, 0.0)), 1e-12);
    EXPECT_TRUE(spec.subshift.forbidden().empty());
    EXPECT_NO_THROW(spec.validate());
}

TEST(ParabolicMap, Constraints) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, two_pi);
    for (int i = 0; i < 200; ++i) {
        const CirclePoint fixed(u(rng)), from(u(rng)), to(u(rng));
        if (circle_distance(fixed, from) < 0.05 || circle_distance(fixed, to) < 0.05 || circle_distance(from, to) < 0.05)
            continue;
        const DiscMoebius f = parabolic_map(fixed, from, to);
        EXPECT_LT(circle_distance(f.apply(fixed), fixed), 1e-9);
        EXPECT_LT(circle_distance(f.apply(from), to), 1e-9);
        EXPECT_NEAR(f.trace_squared(), 4.0, 1e-9);
    }
}
