#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "hecke/weyl.hpp"

using namespace hecke;

namespace {

long trace_of(const GroupMatrix& m) { return m[0] + m[5] + m[10] + m[15]; }

// Independent closure oracle: repeated products until nothing new appears.
std::size_t closure_size(int rank) {
  std::set<GroupMatrix> seen{gm_identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupMatrix> cur(seen.begin(), seen.end());
    for (const auto& x : cur)
      for (int g = 0; g < rank; ++g)
        if (seen.insert(gm_mul(simple_reflection(g), x)).second) grew = true;
  }
  return seen.size();
}

}  // namespace

TEST(Weyl, GroupSizes) {
  EXPECT_EQ(weyl_group(WeylType::A1).size(), 2);
  EXPECT_EQ(weyl_group(WeylType::A2).size(), 6);
  EXPECT_EQ(weyl_group(WeylType::B3).size(), 48);
  EXPECT_EQ(weyl_group(WeylType::F4).size(), 1152);
  EXPECT_EQ(closure_size(3), 48u);
  EXPECT_EQ(closure_size(4), 1152u);
  long s = 0;
  for (int d : published_f4_degrees()) s += d * d;
  EXPECT_EQ(s, 1152);
}

TEST(Weyl, Classes) {
  const auto& a2 = weyl_group(WeylType::A2);
  ASSERT_EQ(a2.num_classes(), 3);
  EXPECT_EQ(a2.class_size(0), 1);
  EXPECT_EQ(a2.class_size(1), 3);
  EXPECT_EQ(a2.class_size(2), 2);
  EXPECT_EQ(weyl_group(WeylType::B3).num_classes(), 10);
  EXPECT_EQ(weyl_group(WeylType::F4).num_classes(), 25);
  // oracle: brute-force conjugation orbit of each representative
  const auto& b3 = weyl_group(WeylType::B3);
  for (int c = 0; c < b3.num_classes(); ++c) {
    std::set<int> orbit;
    for (int g = 0; g < b3.size(); ++g) orbit.insert(b3.mul(b3.mul(g, b3.class_rep(c)), b3.inv(g)));
    EXPECT_EQ(static_cast<int>(orbit.size()), b3.class_size(c));
  }
}

TEST(Weyl, LongestElementAndCoxeterElement) {
  const auto& f4 = weyl_group(WeylType::F4);
  EXPECT_EQ(f4.length(f4.longest()), 24);
  EXPECT_TRUE(f4.is_central(f4.longest()));
  EXPECT_EQ(f4.power(f4.from_word({4, 3, 2, 1}), 6), f4.longest());
  const auto& b3 = weyl_group(WeylType::B3);
  EXPECT_TRUE(b3.is_central(b3.longest()));
  EXPECT_EQ(f4.power(f4.from_word({3, 2, 1}), 3), f4.find(b3.element(b3.longest())));
  const auto& a2 = weyl_group(WeylType::A2);
  EXPECT_FALSE(a2.is_central(a2.longest()));
  EXPECT_EQ(a2.word(a2.longest()), (std::vector<int>{1, 2, 1}));
}

TEST(Weyl, RootData) {
  const auto& f4 = weyl_group(WeylType::F4);
  EXPECT_EQ(f4.num_short_positive(), 12);
  EXPECT_EQ(f4.num_long_positive(), 12);
  EXPECT_EQ(f4.positive_roots().size(), 24u);
  EXPECT_EQ(weyl_group(WeylType::B3).num_short_positive(), 6);
  EXPECT_EQ(weyl_group(WeylType::B3).num_long_positive(), 3);
  EXPECT_EQ(weyl_group(WeylType::A2).num_short_positive(), 3);
  EXPECT_EQ(weyl_group(WeylType::A2).num_long_positive(), 0);
}

TEST(CharTable, A2ByHand) {
  const auto& t = character_table(WeylType::A2);
  EXPECT_EQ(t.values[0], (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(t.values[1], (std::vector<long>{2, 0, -1}));
  EXPECT_EQ(t.values[2], (std::vector<long>{1, -1, 1}));
}

TEST(CharTable, F4Values) {
  const auto& g = weyl_group(WeylType::F4);
  const auto& t = character_table(WeylType::F4);
  EXPECT_EQ(dixon_prime(g), 73);
  EXPECT_EQ(t.value(t.index_of("25"), 0), 16);
  EXPECT_EQ(t.value(t.index_of("25"), g.class_of(g.from_word({4, 3, 2, 1}))), 0);
  for (int k = 0; k < 25; ++k) EXPECT_EQ(t.degree(k), published_f4_degrees()[static_cast<std::size_t>(k)]);
}

TEST(CharTable, Orthogonality) {
  for (WeylType ty : {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4}) {
    const auto& g = weyl_group(ty);
    const auto& t = character_table(ty);
    const int r = g.num_classes();
    ASSERT_EQ(t.num_irreps(), r);
    long sq = 0;
    for (int i = 0; i < r; ++i) sq += t.degree(i) * t.degree(i);
    EXPECT_EQ(sq, g.size());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        long row = 0, col = 0;
        for (int c = 0; c < r; ++c) row += g.class_size(c) * t.value(i, c) * t.value(j, c);
        for (int k = 0; k < r; ++k) col += t.value(k, i) * t.value(k, j);
        EXPECT_EQ(row, i == j ? g.size() : 0);
        EXPECT_EQ(col, i == j ? g.size() / g.class_size(i) : 0);
      }
  }
}

TEST(CharTable, FusionConsistency) {
  const WeylType chain[] = {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4};
  for (int i = 0; i + 1 < 4; ++i) {
    const auto& h = weyl_group(chain[i]);
    const auto& g = weyl_group(chain[i + 1]);
    const auto f = class_fusion(h, g);
    for (int c = 0; c < h.num_classes(); ++c) {
      const int x = h.class_rep(c);
      EXPECT_EQ(h.order(x), g.order(g.class_rep(f[static_cast<std::size_t>(c)])));
      EXPECT_EQ(trace_of(h.element(x)), trace_of(g.element(g.class_rep(f[static_cast<std::size_t>(c)]))));
    }
  }
}

TEST(Branching, PublishedTables) {
  auto check = [](WeylType gt, const std::map<std::string, std::vector<std::string>>& pub) {
    const WeylType ht = parent_subgroup(gt);
    const auto& tg = character_table(gt);
    const auto& th = character_table(ht);
    const auto m = branching(weyl_group(gt), tg, weyl_group(ht), th);
    for (int k = 0; k < tg.num_irreps(); ++k) {
      std::vector<long> want(static_cast<std::size_t>(th.num_irreps()), 0);
      for (const auto& l : pub.at(tg.labels[static_cast<std::size_t>(k)])) ++want[static_cast<std::size_t>(th.index_of(l))];
      EXPECT_EQ(m[static_cast<std::size_t>(k)], want) << tg.labels[static_cast<std::size_t>(k)];
    }
  };
  check(WeylType::A2, published_a2_to_a1());
  check(WeylType::B3, published_b3_to_a2());
  check(WeylType::F4, published_f4_to_b3());
  const auto& tb = character_table(WeylType::B3);
  const auto m = branching(weyl_group(WeylType::B3), tb, weyl_group(WeylType::A2), character_table(WeylType::A2));
  EXPECT_EQ(m[static_cast<std::size_t>(tb.index_of("2|1"))], (std::vector<long>{1, 1, 0}));
}

TEST(CentralConstant, Examples) {
  EXPECT_EQ(central_constant(WeylType::F4, "1").to_ratfun(), PQ(12, 12));
  EXPECT_EQ(central_constant(WeylType::F4, "25").to_ratfun(), RatFun(-1));
  EXPECT_EQ(central_constant(WeylType::A2, "21").pow(2).to_ratfun(), RatFun(1));
  EXPECT_EQ(central_constant(WeylType::A2, "3").to_ratfun(), P(3));
  EXPECT_EQ(central_constant(WeylType::A2, "1^3").to_ratfun(), P(-3));
  EXPECT_EQ(central_constant(WeylType::B3, "3|-").to_ratfun(), PQ(6, 3));
  EXPECT_EQ(central_constant(WeylType::A1, "1^2").to_ratfun(), -P(-1));
  EXPECT_EQ(central_constant(WeylType::F4, "7").to_ratfun(), P(12));
}

TEST(CharTable, MatchesGoldenFiles) {
  for (WeylType ty : {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4}) {
    std::string name = weyl_name(ty);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::ifstream in(std::string(HECKE_DATA_DIR_DEFAULT) + "/chartab-" + name + ".json");
    ASSERT_TRUE(in.good()) << "golden file missing for " << name;
    auto golden = nlohmann::json::parse(in);
    EXPECT_EQ(golden, to_json(weyl_group(ty), character_table(ty))) << name;
  }
}
