#include <gtest/gtest.h>

#include <array>
#include <cstdlib>
#include <random>

#include "statecycle/builtin.hpp"
#include "statecycle/error.hpp"
#include "statecycle/homology.hpp"
#include "statecycle/random_diagram.hpp"
#include "statecycle/statecycle.hpp"

using namespace statecycle;

namespace {

HomologyTable kh(const Diagram& d) { return homology_ranks(build_complex(d)); }

Diagram braid(int strands, std::vector<int> word) { return braid_closure(strands, word); }

}  // namespace

TEST(Homology, Unknot) {
    CubeComplex c = build_complex(Diagram());
    EXPECT_EQ(c.state_count(), 1U);
    HomologyTable h = homology_ranks(c);
    EXPECT_EQ(h.rank(0, 1), 1);
    EXPECT_EQ(h.rank(0, -1), 1);
    EXPECT_EQ(h.total_rank(), 2);
    EXPECT_EQ(h.width(), 2);
}

TEST(Homology, NegativeTrefoil) {
    Diagram d = builtin("trefoil_negative");
    HomologyTable h = kh(d);
    EXPECT_EQ(h.total_rank(), 4);
    EXPECT_EQ(euler_characteristic(h), jones_bracket(d));
    EXPECT_EQ(h.rank(0, -1), 1);
    EXPECT_EQ(h.rank(0, -3), 1);
    EXPECT_EQ(h.rank(-2, -5), 1);
    EXPECT_EQ(h.rank(-3, -9), 1);
}

TEST(Homology, SolomonCubeSize) {
    CubeComplex c = build_complex(builtin("solomon_mirror"));
    EXPECT_EQ(c.state_count(), 16U);
    EXPECT_TRUE(c.is_full());
}

TEST(Homology, FigureEightThin) {
    Diagram d = builtin("figure8");
    HomologyTable h = kh(d);
    EXPECT_EQ(h.width(), 2);
    EXPECT_EQ(euler_characteristic(h), jones_bracket(d));
}

TEST(Homology, DSquaredZero) {
    std::mt19937_64 rng(8);
    std::vector<Diagram> ds;
    for (const auto& e : builtin_entries()) {
        if (builtin(e.name).crossing_count() <= 12) ds.push_back(builtin(e.name));
    }
    RandomDiagramOptions opt;
    opt.max_vertices = 10;
    opt.grid = 16;
    for (int i = 0; i < 60; ++i) ds.push_back(random_diagram(rng, opt));
    for (const auto& d : ds) EXPECT_TRUE(build_complex(d, 12).check_d_squared()) << to_pd(d);
}

TEST(Homology, EulerCharacteristicEqualsJones) {
    for (const auto& e : builtin_entries()) {
        Diagram d = builtin(e.name);
        if (d.crossing_count() > 12) continue;
        EXPECT_EQ(euler_characteristic(kh(d)), jones_bracket(d)) << e.name;
    }
}

TEST(Homology, ModularMatchesExact) {
    for (const char* name : {"6_3", "8_21_plus_adequate", "9_42"}) {
        CubeComplex c = build_complex(builtin(name));
        EXPECT_EQ(homology_ranks(c, Arithmetic::modular).ranks, homology_ranks(c, Arithmetic::exact).ranks) << name;
    }
}

TEST(Homology, ReidemeisterPairs) {
    // Stabilisation, an inserted cancelling pair, a braid relation, and a
    // braid against a planar diagram.
    std::vector<std::pair<Diagram, Diagram>> pairs = {
        {braid(2, {1, 1, 1}), braid(3, {1, 1, 1, 2})},
        {braid(3, {1, 1, 1, 2}), braid(3, {1, 2, 1, -1, 1, 1})},
        {braid(3, {1, 2, 1, 2}), braid(3, {2, 1, 2, 2})},
        {braid(3, {1, -2, 1, -2}), builtin("figure8")},
    };
    for (const auto& [a, b] : pairs) EXPECT_EQ(kh(a).ranks, kh(b).ranks) << to_pd(a) << " vs " << to_pd(b);
}

TEST(Homology, BoundaryOracleAgreesWithRanks) {
    for (const char* name : {"trefoil_negative", "figure8", "6_3", "solomon_mirror"}) {
        Diagram d = builtin(name);
        CubeComplex c = build_complex(d);
        HomologyTable h = homology_ranks(c);
        BoundaryOracle oracle(c);
        int n = d.crossing_count();
        for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
            for (const auto& a : state_cycles(resolve(d, Smoothing::from_mask(n, m)))) {
                Bigrading b = bigrading(a, d);
                if (!oracle.is_boundary(a)) {
                    EXPECT_GT(h.rank(b.t, b.q), 0) << name;
                }
                if (h.rank(b.t, b.q) == 0) {
                    EXPECT_TRUE(oracle.is_boundary(a)) << name;
                }
            }
        }
    }
}

TEST(Homology, BoundaryOracleExamples) {
    Diagram s = builtin("solomon_mirror");
    State st = resolve(s, Smoothing::all1(4));
    EXPECT_FALSE(is_boundary(EnhancedState(st, parse_marks("1000")), build_complex(s)));

    Diagram d = builtin("9_42");
    CubeComplex c = build_complex(d);
    State seifert = resolve(d, seifert_smoothing(d));
    int checked = 0;
    for (const auto& a : state_cycles(seifert)) {
        if (bigrading(a, d).q == -1) {
            EXPECT_FALSE(is_boundary(a, c));
            ++checked;
        }
    }
    EXPECT_EQ(checked, 1);
}

TEST(Homology, BoundaryOracleNotACycle) {
    Diagram d = builtin("figure8");
    CubeComplex c = build_complex(d);
    State st = resolve(d, Smoothing::all0(4));
    EnhancedState plus(st, std::vector<Mark>(static_cast<std::size_t>(st.loop_count()), Mark::plus));
    EXPECT_THROW(is_boundary(plus, c), NotACycle);
}

TEST(Homology, TooLarge) {
    EXPECT_THROW(build_complex(builtin("K1")), TooLarge);
    EXPECT_THROW(build_complex(builtin("10_152_negative"), 8), TooLarge);
    setenv("STATECYCLE_MAX_MEM", "1000", 1);
    EXPECT_THROW(build_complex(builtin("6_3")), TooLarge);
    unsetenv("STATECYCLE_MAX_MEM");
    EXPECT_NO_THROW(build_complex(builtin("6_3")));
}

TEST(Homology, HeightWindow) {
    Diagram d = builtin("6_3");
    HomologyTable full = kh(d);
    HomologyOptions opt;
    opt.min_height = 0;
    opt.max_height = 3;
    HomologyTable part = homology_ranks(build_complex(d, opt));
    EXPECT_FALSE(part.complete);
    auto s = crossing_signs(d);
    for (int t = part.t_min; t <= part.t_max; ++t) {
        EXPECT_GE(t, -s.n_minus);
        EXPECT_LE(t, 2 - s.n_minus);
        for (int q = -30; q <= 30; ++q) EXPECT_EQ(part.rank(t, q), full.rank(t, q)) << t << " " << q;
    }
}

TEST(Jones, Unknot) {
    LaurentPoly p = jones_bracket(Diagram());
    EXPECT_EQ(p, (LaurentPoly{{-1, 1}, {1, 1}}));
}

TEST(Jones, MirrorSymmetry) {
    for (const auto& e : builtin_entries()) {
        Diagram d = builtin(e.name);
        if (d.crossing_count() > 12) continue;
        EXPECT_EQ(jones_bracket(mirror(d)), poly_invert(jones_bracket(d))) << e.name;
    }
}

TEST(Jones, TooLarge) { EXPECT_THROW(jones_bracket(builtin("K1")), TooLarge); }

TEST(Render, TableAndJson) {
    HomologyTable h = kh(builtin("trefoil_negative"));
    auto j = to_json(h);
    EXPECT_EQ(j["schema"], "statecycle.homology/1");
    std::string t = to_table(h);
    EXPECT_NE(t.find("q\\t"), std::string::npos);
}
