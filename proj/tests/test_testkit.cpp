#include "ginvkit/additive.hpp"
#include "ginvkit/block.hpp"
#include "ginvkit/testkit.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace ginv::testkit {
namespace {

const std::vector<std::string> kSumCases{"thm2.3", "cor2.4", "thm2.5", "cor2.6", "cor2.7",
                                         "thm3.2", "cor3.3", "thm3.5", "cor3.6"};
const std::vector<std::string> kBlockCases{"thm4.1", "cor4.2", "cor4.3", "cor4.4",
                                           "thm4.5", "cor4.6", "thm4.7", "cor4.8"};

std::string checker_tag(const std::string& id) { return id == "cor3.3" ? "thm3.2" : id; }

std::vector<std::string> checker_failures(const std::string& id, const GenSpec& spec) {
  std::vector<std::string> f;
  std::vector<std::string> g;
  if (is_sum_case(id)) {
    const auto c = gen_sum_case(spec);
    const auto r = sum_ginv(*parse_sum_theorem(checker_tag(id)), c.a, c.b);
    f = failed_names(r.hypotheses);
    g = failed_names(r.conditions);
  } else {
    const auto c = gen_block_case(spec);
    const auto r = block_ginv(*parse_block_theorem(id), c.parts, {}, c.variant);
    f = failed_names(r.hypotheses);
    g = failed_names(r.conditions);
  }
  f.insert(f.end(), g.begin(), g.end());
  return f;
}

TEST(Rng, Deterministic) {
  Rng x(7);
  Rng y(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(x.uniform(), y.uniform());
  EXPECT_EQ(random_matrix(x, 3, 4), random_matrix(y, 3, 4));
  EXPECT_THROW(x.integer(1, 0), std::invalid_argument);
  for (int i = 0; i < 100; ++i) {
    const int k = x.integer(-2, 3);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 3);
  }
}

TEST(Rng, UnitaryAndSimilarity) {
  Rng rng(3);
  const CMatrix u = random_unitary(rng, 5);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(5, 5)).norm(), 1e-13);
  const auto s = random_similarity(rng, 5);
  EXPECT_LT((s.s * s.s_inv - CMatrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Building, NilpotentAndGroupInvertible) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Index n = 2 + i % 6;
    const CMatrix z = random_nilpotent(rng, n);
    EXPECT_FALSE(group_inverse(z).exists);
    EXPECT_FALSE(oracle_group_inverse(z).exists);
    const CMatrix g = random_group_invertible(rng, n);
    EXPECT_TRUE(group_inverse(g).exists);
  }
}

TEST(GenSumCase, SameSeedSameInstance) {
  for (const auto& id : kSumCases) {
    const auto x = gen_sum_case({id, 5, 99, {}});
    const auto y = gen_sum_case({id, 5, 99, {}});
    EXPECT_EQ(x.a, y.a) << id;
    EXPECT_EQ(x.b, y.b) << id;
    EXPECT_EQ(x.a.rows(), 5) << id;
  }
}

TEST(GenSumCase, HypothesesHoldOnEverySeed) {
  for (const auto& id : kSumCases) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const GenSpec spec{id, 2 + static_cast<int>(seed % 7), seed, {}};
      const auto c = gen_sum_case(spec);
      for (const auto& p : sum_predicates(id, c.a, c.b)) {
        if (p.hypothesis) {
          EXPECT_TRUE(p.evaluated && p.holds) << id << " seed " << seed << ": " << p.name;
        }
      }
      const auto r = sum_ginv(*parse_sum_theorem(checker_tag(id)), c.a, c.b);
      EXPECT_TRUE(r.applicable) << id << " seed " << seed;
    }
  }
}

TEST(GenSumCase, CommutingPairsCommute) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = gen_commuting_pair({"thm3.2", 2 + static_cast<int>(seed % 7), seed, {}});
    const double scale = std::max(1.0, c.a.norm() * c.b.norm());
    EXPECT_LT((c.a * c.b - c.b * c.a).norm(), 1e-12 * scale) << "seed " << seed;
  }
}

TEST(GenBlockCase, HypothesesHoldOnEverySeed) {
  for (const auto& id : kBlockCases) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const GenSpec spec{id, 2 + static_cast<int>(seed % 7), seed, {}};
      const auto c = gen_block_case(spec);
      EXPECT_EQ(c.parts.m() + c.parts.n(), spec.dim) << id;
      const auto r = block_ginv(*parse_block_theorem(id), c.parts, {}, c.variant);
      EXPECT_TRUE(r.applicable) << id << " seed " << seed;
    }
  }
}

TEST(GenBlockCase, RankCorollaryRanksAgree) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = gen_block_case({"cor4.4", 3 + static_cast<int>(seed % 6), seed, {}});
    const Index rb = mat_rank(c.parts.B);
    EXPECT_EQ(mat_rank(c.parts.C), rb);
    EXPECT_EQ(mat_rank(CMatrix(c.parts.B * c.parts.C)), rb);
    EXPECT_EQ(mat_rank(CMatrix(c.parts.C * c.parts.B)), rb);
    EXPECT_TRUE(c.variant == 1 || c.variant == 2);
  }
}

TEST(Violations, BreakExactlyTheNamedItem) {
  std::vector<std::string> all = kSumCases;
  all.insert(all.end(), kBlockCases.begin(), kBlockCases.end());
  for (const auto& id : all) {
    const auto items = supported_violations(id);
    EXPECT_FALSE(items.empty()) << id;
    for (const auto& item : items) {
      int produced = 0;
      for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const GenSpec spec{id, 4 + static_cast<int>(seed % 5), seed, item};
        std::vector<std::string> f;
        try {
          f = checker_failures(id, spec);
        } catch (const GenerationFailed&) {
          continue;
        }
        ++produced;
        ASSERT_EQ(f.size(), 1u) << id << " / " << item << " seed " << seed;
        EXPECT_EQ(f.front(), item) << id << " seed " << seed;
      }
      EXPECT_GT(produced, 10) << id << " / " << item;
    }
  }
}

TEST(Violations, UnknownItemsAreRejected) {
  EXPECT_THROW(gen_sum_case({"thm2.3", 4, 0, "no such item"}), std::invalid_argument);
  EXPECT_THROW(gen_sum_case({"thm9.9", 4, 0, {}}), std::invalid_argument);
  EXPECT_THROW(gen_block_case({"thm4.1", 13, 0, {}}), std::invalid_argument);
  EXPECT_FALSE(is_sum_case("thm4.1"));
  EXPECT_TRUE(is_block_case("cor4.8"));
}

TEST(Violations, TooSmallDimensionFailsCleanly) {
  EXPECT_THROW(gen_block_case({"cor4.2", 2, 0, "AB = 0"}), GenerationFailed);
}

TEST(Predicates, TableEndsWithRankAgreement) {
  const auto t = sum_predicates("thm2.3", test::diag({1, 0}), test::diag({0, 2}));
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t.back().name, kRankAgreement);
  EXPECT_TRUE(failing(t).empty());

  const auto nil = sum_predicates("thm2.3", test::real({{0, 1}, {0, 0}}), test::diag({0, 2}));
  const auto bad = failing(nil);
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad.front(), "a in R#");
}

}  // namespace
}  // namespace ginv::testkit
