#include <gtest/gtest.h>

#include <vector>

#include "multipack/instances.hpp"
#include "multipack/multipacking.hpp"
#include "oracle.hpp"

using namespace multipack;

namespace {

PointSet line(std::vector<std::int64_t> xs) { return PointSet::from_integers(std::span<const std::int64_t>(xs)); }

CheckResult check(const PointSet& p, std::vector<Index> m, std::size_t r) {
    return is_r_multipacking(p, build_neighbor_table(p), m, r);
}

} // namespace

TEST(Checker, ValidSetOnPowersOfTwo) {
    // {2, 16} in {2, 4, 8, 16}
    EXPECT_TRUE(check(line({2, 4, 8, 16}), {0, 3}, 3).valid);
}

TEST(Checker, ReportsFirstViolation) {
    // {2, 4}: N_1[2] = {2, 4}
    const auto result = check(line({2, 4, 8, 16}), {0, 1}, 1);
    ASSERT_FALSE(result.valid);
    EXPECT_EQ(*result.violation, (Violation{0, 1, 2, 1}));
}

TEST(Checker, EmptyAndSingletonAlwaysValid) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto p = random_point_set(2 + seed % 10, seed % 2 ? 1 : 2, seed, 10'000);
        const auto t = build_neighbor_table(p);
        for (std::size_t r = 1; r < p.size(); ++r) {
            EXPECT_TRUE(is_r_multipacking(p, t, {}, r).valid);
            for (Index v = 0; v < p.size(); ++v) EXPECT_TRUE(is_r_multipacking(p, t, std::vector<Index>{v}, r).valid);
        }
    }
}

TEST(Checker, RadiusAndIndexPreconditions) {
    const auto p = line({2, 4, 8, 16});
    const auto t = build_neighbor_table(p);
    EXPECT_THROW(is_r_multipacking(p, t, {}, 0), RangeError);
    EXPECT_THROW(is_r_multipacking(p, t, {}, 4), RangeError);
    EXPECT_THROW(is_r_multipacking(p, t, std::vector<Index>{4}, 1), RangeError);
}

TEST(Checker, AgreesWithDefinitionOnAllSubsets) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p = random_point_set(3 + seed % 7, seed % 2 ? 1 : 2, seed, 5000);
        const auto t = build_neighbor_table(p);
        const auto order = oracle::distance_orders(p);
        const std::size_t n = p.size();
        for (std::size_t r = 1; r < n; ++r)
            for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
                std::vector<Index> m;
                for (Index i = 0; i < n; ++i)
                    if ((mask >> i) & 1U) m.push_back(i);
                ASSERT_EQ(is_r_multipacking(p, t, m, r).valid, oracle::valid_mask(order, mask, r)) << seed << " r=" << r << " mask=" << mask;
            }
    }
}

TEST(Checker, ValidityIsHereditary) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto p = random_point_set(8, 2, seed, 10'000);
        const auto t = build_neighbor_table(p);
        for (std::size_t r = 1; r < 8; ++r) {
            const auto best = bruteforce_max_r_multipacking(p, r).indices();
            for (std::size_t drop = 0; drop < best.size(); ++drop) {
                auto sub = best;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                EXPECT_TRUE(is_r_multipacking(p, t, sub, r).valid);
            }
        }
    }
}

TEST(Multipacking, SortsAndRejectsDuplicates) {
    Multipacking m({3, 1, 2}, 2);
    EXPECT_EQ(m.indices(), (std::vector<Index>{1, 2, 3}));
    EXPECT_THROW(Multipacking({1, 1}, 2), RangeError);
}

TEST(BruteForce, HandExamples) {
    auto a = bruteforce_max_r_multipacking(line({2, 4, 8, 16, 32, 64}), 5);
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.indices(), (std::vector<Index>{0, 3})); // {2, 16}
    EXPECT_EQ(a.method, "brute");

    auto b = bruteforce_max_r_multipacking(line({0, 2, 3, 11, 18}), 4);
    EXPECT_EQ(b.size(), 2u);
    EXPECT_EQ(b.indices(), (std::vector<Index>{0, 3})); // {0, 11}
}

TEST(BruteForce, SingletonConvention) {
    auto one = multipacking_number(line({5}));
    EXPECT_EQ(one.indices(), (std::vector<Index>{0}));
}

TEST(BruteForce, MultipackingNumberExamples) {
    EXPECT_EQ(multipacking_number(line({2, 4, 8, 16})).size(), 2u);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) EXPECT_EQ(multipacking_number(random_point_set(3, 2, seed, 1000)).size(), 1u);
    EXPECT_EQ(multipacking_number(pentagon_five()).size(), 1u);
}

TEST(BruteForce, RespectsLimit) {
    const auto p = random_point_set(17, 1, 1, 10'000);
    EXPECT_THROW(multipacking_number(p), BudgetExceeded);
    EXPECT_THROW(multipacking_number(random_point_set(6, 1, 1, 1000), 5), BudgetExceeded);
}

TEST(BruteForce, MatchesNaiveEnumeration) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t n = 2 + seed % 10;
        const auto p = random_point_set(n, seed % 2 ? 1 : 2, seed, 1'000'000);
        for (std::size_t r = 1; r < n; ++r) {
            const auto rep = bruteforce_max_r_multipacking(p, r);
            ASSERT_EQ(rep.size(), oracle::max_size(p, r)) << "seed " << seed << " r " << r;
            ASSERT_TRUE(check(p, rep.indices(), r).valid);
        }
    }
}

TEST(BruteForce, MonotoneInRadius) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p = random_point_set(9, 2, seed, 100'000);
        std::size_t prev = p.size();
        for (std::size_t r = 1; r < 9; ++r) {
            const std::size_t mp = bruteforce_max_r_multipacking(p, r).size();
            EXPECT_LE(mp, prev);
            prev = mp;
        }
    }
}
