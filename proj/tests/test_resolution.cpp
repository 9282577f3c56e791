#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "statecycle/builtin.hpp"
#include "statecycle/error.hpp"
#include "statecycle/random_diagram.hpp"
#include "statecycle/resolution.hpp"

using namespace statecycle;

TEST(Resolve, KinkBothSmoothings) {
    Diagram k = parse_pd("X[1,1,2,2]");
    State s0 = resolve(k, Smoothing::all0(1));
    EXPECT_EQ(s0.loop_count(), 2);
    EXPECT_EQ(s0.trace(0).kind(), TraceKind::merge);
    State s1 = resolve(k, Smoothing::all1(1));
    EXPECT_EQ(s1.loop_count(), 1);
    EXPECT_EQ(s1.trace(0).kind(), TraceKind::pinch);
}

TEST(Resolve, SixThreeAllZeroMatchesOracle) {
    Diagram d = builtin("6_3");
    State st = resolve(d, Smoothing::all0(6));
    EXPECT_EQ(st.loop_count(), oracle::loop_count(d, 0));
    // Alternating: the all-0 state has one loop per checkerboard region of one colour.
    EXPECT_EQ(st.loop_count(), 4);
    for (const auto& t : st.traces()) EXPECT_EQ(t.kind(), TraceKind::merge);
}

TEST(Resolve, SolomonAllOneSquare) {
    State st = resolve(builtin("solomon_mirror"), Smoothing::all1(4));
    EXPECT_EQ(st.loop_count(), 4);
    std::map<int, int> degree;
    for (const auto& t : st.traces()) {
        EXPECT_EQ(t.kind(), TraceKind::merge);
        ++degree[t.loop_a];
        ++degree[t.loop_b];
    }
    for (auto [loop, deg] : degree) EXPECT_EQ(deg, 2) << loop;
    EXPECT_EQ(degree.size(), 4U);
}

TEST(Resolve, LoopsMatchOracleOnAllSmoothings) {
    for (const auto& e : builtin_entries()) {
        Diagram d = builtin(e.name);
        int n = d.crossing_count();
        if (n > 10) continue;
        for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
            ASSERT_EQ(resolve(d, Smoothing::from_mask(n, m)).loop_count(), oracle::loop_count(d, m)) << e.name << " " << m;
            ASSERT_EQ(count_loops(d, m), oracle::loop_count(d, m)) << e.name << " " << m;
        }
    }
}

TEST(Resolve, LoopsPartitionArcs) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        Diagram d = random_diagram(rng);
        Smoothing s = Smoothing::from_mask(d.crossing_count(), rng() & ((1ULL << d.crossing_count()) - 1));
        State st = resolve(d, s);
        std::vector<int> seen(static_cast<std::size_t>(d.arc_count()) + 1, 0);
        for (int l = 0; l < st.loop_count(); ++l) {
            const auto& arcs = st.loops()[static_cast<std::size_t>(l)];
            ASSERT_FALSE(arcs.empty());
            for (int a : arcs) {
                ++seen[static_cast<std::size_t>(a)];
                EXPECT_EQ(st.loop_of_arc(a), l);
            }
            if (l > 0) {
                EXPECT_LT(st.loops()[static_cast<std::size_t>(l - 1)].front(), arcs.front());
            }
        }
        for (int a = 1; a <= d.arc_count(); ++a) EXPECT_EQ(seen[static_cast<std::size_t>(a)], 1);
    }
}

TEST(Resolve, LengthMismatch) {
    EXPECT_THROW(resolve(builtin("figure8"), Smoothing::all0(3)), LengthMismatch);
}

TEST(Resolve, OneBitFlipChangesLoopsByOne) {
    std::mt19937_64 rng(5);
    for (const auto& e : builtin_entries()) {
        Diagram d = builtin(e.name);
        int n = d.crossing_count();
        if (n == 0) continue;
        for (int trial = 0; trial < 40; ++trial) {
            Smoothing s = Smoothing::from_mask(n, n >= 64 ? rng() : rng() & ((1ULL << n) - 1));
            int c = static_cast<int>(rng() % static_cast<unsigned>(n));
            int diff = resolve(d, s).loop_count() - resolve(d, s.flipped(c)).loop_count();
            EXPECT_TRUE(diff == 1 || diff == -1) << e.name;
        }
    }
}

TEST(Seifert, SignRule) {
    Diagram neg = builtin("10_152_negative");
    EXPECT_EQ(seifert_smoothing(neg), Smoothing::all1(10));
    Diagram pos = builtin("trefoil_positive");
    EXPECT_EQ(seifert_smoothing(pos), Smoothing::all0(3));
}

TEST(Seifert, FigureEightThreeLoops) {
    Diagram d = builtin("figure8");
    State st = resolve(d, seifert_smoothing(d));
    EXPECT_EQ(st.loop_count(), 3);
    EXPECT_EQ(st.loop_count(), oracle::loop_count(d, st.smoothing().mask()));
}

TEST(Smoothing, ParseAndPrint) {
    Smoothing s = Smoothing::parse("0110");
    EXPECT_EQ(s.size(), 4);
    EXPECT_EQ(s.height(), 2);
    EXPECT_EQ(s.to_string(), "0110");
    EXPECT_TRUE(s[1]);
    EXPECT_FALSE(s[0]);
    EXPECT_THROW(Smoothing::parse("01x"), MalformedToken);
}

TEST(Bigrading, UnknotPlus) {
    EnhancedState a(resolve(Diagram(), Smoothing::all0(0)), parse_marks("0"));
    Bigrading b = bigrading(a, Diagram());
    EXPECT_EQ(b.t, 0);
    EXPECT_EQ(b.q, 1);
    EXPECT_EQ(b.delta(), -1);
}

TEST(Bigrading, AllZeroAllMinusFormula) {
    for (const auto& e : builtin_entries()) {
        Diagram d = builtin(e.name);
        int n = d.crossing_count();
        State st = resolve(d, Smoothing::all0(n));
        EnhancedState a(st, std::vector<Mark>(static_cast<std::size_t>(st.loop_count()), Mark::minus));
        auto s = crossing_signs(d);
        Bigrading b = bigrading(a, d);
        EXPECT_EQ(b.t, -s.n_minus) << e.name;
        EXPECT_EQ(b.q, -oracle::loop_count(d, 0) + s.n_plus - 2 * s.n_minus) << e.name;
        EXPECT_EQ(b, bigrading(0, 0, st.loop_count(), s)) << e.name;
    }
}

TEST(Bigrading, DeltaIdentity) {
    Diagram d = builtin("6_3");
    for (std::uint64_t m = 0; m < 64; m += 7) {
        State st = resolve(d, Smoothing::from_mask(6, m));
        for (const auto& a : enumerate_enhancements(st)) {
            Bigrading b = bigrading(a, d);
            EXPECT_EQ(b.delta(), 2 * b.t - b.q);
        }
    }
}

TEST(Enhancements, Counts) {
    EXPECT_EQ(enumerate_enhancements(resolve(Diagram(), Smoothing::all0(0))).size(), 2U);
    Diagram f8 = builtin("figure8");
    State three = resolve(f8, seifert_smoothing(f8));
    ASSERT_EQ(three.loop_count(), 3);
    EXPECT_EQ(enumerate_enhancements(three).size(), 8U);
    EXPECT_EQ(enumerate_enhancements(resolve(builtin("solomon_mirror"), Smoothing::all1(4))).size(), 16U);
}

TEST(Enhancements, BinaryOrder) {
    auto all = enumerate_enhancements(resolve(builtin("solomon_mirror"), Smoothing::all1(4)));
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k].marks_mask(), k);
}

TEST(Enhancements, MarkLengthMismatch) {
    State st = resolve(builtin("figure8"), Smoothing::all0(4));
    EXPECT_THROW(EnhancedState(st, parse_marks("0")), LengthMismatch);
}

TEST(StateJson, Schema) {
    auto j = to_json(resolve(builtin("trefoil_negative"), Smoothing::all1(3)));
    EXPECT_EQ(j["schema"], "statecycle.state/1");
}
