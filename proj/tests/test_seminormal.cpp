#include <gtest/gtest.h>

#include <random>

#include "hecke/seminormal.hpp"

using namespace hecke;

namespace {

RatFun E(const char* s) { return parse_ratfun(s); }

// Independent relation oracle: products written out longhand.
std::vector<std::string> broken_relations(const Representation& r) {
  std::vector<std::string> bad;
  const int n = weyl_rank(r.algebra);
  const FieldMatrix I = FieldMatrix::identity(r.dim());
  for (int i = 1; i <= n; ++i) {
    const RatFun x = i <= 2 ? P() : Q();
    if (!(r.T(i) * r.T(i) == (x - x.inverse()) * r.T(i) + I)) bad.push_back("quadratic " + std::to_string(i));
  }
  auto T = [&](int i) { return r.T(i); };
  if (n >= 2 && !(T(1) * T(2) * T(1) == T(2) * T(1) * T(2))) bad.push_back("braid 12");
  if (n >= 3 && !(T(2) * T(3) * T(2) * T(3) == T(3) * T(2) * T(3) * T(2))) bad.push_back("braid 23");
  if (n >= 3 && !(T(1) * T(3) == T(3) * T(1))) bad.push_back("commute 13");
  if (n >= 4 && !(T(3) * T(4) * T(3) == T(4) * T(3) * T(4))) bad.push_back("braid 34");
  if (n >= 4 && !(T(1) * T(4) == T(4) * T(1))) bad.push_back("commute 14");
  if (n >= 4 && !(T(2) * T(4) == T(4) * T(2))) bad.push_back("commute 24");
  return bad;
}

Params random_params(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(1, 40);
  Params pr;
  for (const auto& n : parameter_names()) pr[n] = RatFun::rational(c(rng), c(rng));
  return pr;
}

// distinct values so that parameter mix-ups become visible
Params distinct_params() {
  return {{"alpha", RatFun(2)}, {"beta", RatFun(3)}, {"xi", RatFun(5)}, {"eta", RatFun(7)}, {"theta", RatFun(11)}};
}

}  // namespace

TEST(BuildRep, SmallAlgebras) {
  EXPECT_EQ(build_rep(WeylType::A1, "2").T(1), FieldMatrix::diagonal({P()}));
  EXPECT_EQ(build_rep(WeylType::A1, "1^2").T(1), FieldMatrix::diagonal({-P(-1)}));
  const FieldMatrix m2 = build_rep(WeylType::A2, "21").T(2);
  const RatFun k = -RatFun(1) / E("p + 1/p");
  EXPECT_EQ(m2, k * FieldMatrix::from_rows({{E("p^-2"), E("p + p^-1 - 1")}, {E("p + p^-1 + 1"), E("-p^2")}}));
}

TEST(BuildRep, FreeParameterOfSeven) {
  const RatFun a(5);
  const FieldMatrix t4 = build_rep(WeylType::F4, "7", {{"alpha", a}}).T(4);
  const RatFun k = -RatFun(1) / E("[2]_q");
  EXPECT_EQ(t4, k * FieldMatrix::from_rows({{E("q^-2"), a * E("[2]_q - 1")}, {E("[2]_q + 1") / a, E("-q^2")}}));
}

TEST(BuildRep, Errors) {
  EXPECT_THROW(build_rep(WeylType::F4, "26"), RepresentationError);
  EXPECT_THROW(build_rep(WeylType::B3, "3"), RepresentationError);
  EXPECT_THROW(build_rep(WeylType::F4, "7", {{"alpha", RatFun(0)}}), RepresentationError);
  EXPECT_THROW(build_rep(WeylType::F4, "7", {{"gamma", RatFun(2)}}), RepresentationError);
  sn::Scatter sc(3);
  sc.place({1, 2}, FieldMatrix::identity(2));
  EXPECT_THROW(sc.place({2, 3}, FieldMatrix::identity(2)), PlacementError);
}

TEST(BuildRep, Dimensions) {
  for (WeylType t : {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4}) {
    const auto& tab = character_table(t);
    for (int i = 0; i < tab.num_irreps(); ++i)
      EXPECT_EQ(build_rep(t, tab.labels[static_cast<std::size_t>(i)]).dim(), tab.degree(i)) << tab.labels[static_cast<std::size_t>(i)];
  }
}

TEST(OrbitRule, Examples) {
  EXPECT_EQ(build_rep(WeylType::F4, "2").T(1), FieldMatrix::diagonal({-P(-1)}));
  const Representation r10 = build_rep(WeylType::F4, "10");
  const OrbitRule id{"10", "10", false, false, {}};
  EXPECT_EQ(apply_orbit_rule(r10, id), r10);
  // phi11: apply p -> -1/p, then conjugate by the permutation matrix of (1,3)(4,6)(7,9)
  const Representation r11 = build_rep(WeylType::F4, "11");
  FieldMatrix pm(9, 9);
  const int img[9] = {3, 2, 1, 6, 5, 4, 9, 8, 7};
  for (int i = 0; i < 9; ++i) pm(img[i] - 1, i) = RatFun(1);
  for (int g = 1; g <= 4; ++g) EXPECT_EQ(r11.T(g), pm * apply_automorphism(r10.T(g), true, false) * inverse(pm));
}

TEST(DMatrices, Examples) {
  EXPECT_EQ(d_matrices(build_rep(WeylType::F4, "1"))[3], FieldMatrix::diagonal({PQ(12, 12)}));
  std::vector<RatFun> d3;
  for (const char* s : {"p^6*q^3", "q^3", "q^3", "-p^2*q", "-p^2*q", "-p^2*q", "p^2/q", "p^2/q", "p^2/q"}) d3.push_back(E(s));
  EXPECT_EQ(d_matrices(build_rep(WeylType::F4, "10"))[2], FieldMatrix::diagonal(d3));
  EXPECT_EQ(d_matrices(build_rep(WeylType::F4, "9"))[3], FieldMatrix::identity(4));
}

TEST(RestrictBlocks, Examples) {
  auto labels = [](const Representation& r) {
    std::vector<std::string> v;
    for (const auto& w : restrict_blocks(r)) v.push_back(w.label);
    return v;
  };
  EXPECT_EQ(labels(build_rep(WeylType::F4, "9")), (std::vector<std::string>{"21|-", "-|21"}));
  EXPECT_EQ(labels(build_rep(WeylType::F4, "1")), (std::vector<std::string>{"3|-"}));
  EXPECT_EQ(labels(build_rep(WeylType::B3, "2|1")), (std::vector<std::string>{"3", "21"}));
}

TEST(SeminormalProperty, RelationsForAllRepresentations) {
  for (WeylType t : {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4})
    for (const auto& l : rep_labels(t)) EXPECT_TRUE(broken_relations(build_rep(t, l)).empty()) << algebra_name(t) << " " << l;
}

TEST(SeminormalProperty, RestrictionMatchesBranching) {
  for (WeylType t : {WeylType::A2, WeylType::B3, WeylType::F4}) {
    const WeylType h = parent_subgroup(t);
    const auto& tg = character_table(t);
    const auto& th = character_table(h);
    const auto m = branching(weyl_group(t), tg, weyl_group(h), th);
    for (int k = 0; k < tg.num_irreps(); ++k) {
      std::vector<long> got(static_cast<std::size_t>(th.num_irreps()), 0);
      for (const auto& w : restrict_blocks(build_rep(t, tg.labels[static_cast<std::size_t>(k)]))) ++got[static_cast<std::size_t>(th.index_of(w.label))];
      EXPECT_EQ(got, m[static_cast<std::size_t>(k)]) << tg.labels[static_cast<std::size_t>(k)];
    }
  }
}

TEST(SeminormalProperty, GaugeCovariance) {
  std::mt19937 rng(17);
  for (const char* l : {"10", "23", "25", "16", "13"}) {
    Params a = random_params(rng), b = random_params(rng);
    if (std::string(l) == "10") b["eta"] = Q(2);
    const Representation ra = build_rep(WeylType::F4, l, a), rb = build_rep(WeylType::F4, l, b);
    const FieldMatrix D = gauge_matrix(l, a, b);
    EXPECT_TRUE(D.is_diagonal());
    const FieldMatrix Di = inverse(D);
    for (int g = 1; g <= 4; ++g) EXPECT_EQ(rb.T(g), D * ra.T(g) * Di) << l;
  }
}

TEST(SeminormalProperty, CentralElementAndTables) {
  for (const auto& l : rep_labels(WeylType::F4)) {
    const Representation r = build_rep(WeylType::F4, l);
    const auto d = d_matrices(r);
    EXPECT_EQ(d[3], central_constant(WeylType::F4, l).to_ratfun() * FieldMatrix::identity(r.dim())) << l;
    const auto t = tabulated_d_matrices(l);
    for (int j = 0; j < 4; ++j) EXPECT_EQ(d[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j)]) << l << " D" << j + 1;
  }
}

TEST(SeminormalProperty, SpecializationTraces) {
  const auto& g = weyl_group(WeylType::F4);
  const auto& tab = character_table(WeylType::F4);
  for (const auto& l : rep_labels(WeylType::F4)) {
    const auto sp = specialize(build_rep(WeylType::F4, l), 1, 1);
    for (const auto& m : sp) EXPECT_EQ(m * m, QMatrix::identity(m.rows()));
    for (int c = 0; c < g.num_classes(); ++c) {
      QMatrix m = QMatrix::identity(sp[0].rows());
      for (int x : g.word(g.class_rep(c))) m = m * sp[static_cast<std::size_t>(x - 1)];
      EXPECT_EQ(m.trace(), tab.value(tab.index_of(l), c)) << l << " class " << c;
    }
  }
}

TEST(SeminormalProperty, DenominatorsAndCommutant) {
  for (WeylType t : {WeylType::A2, WeylType::B3, WeylType::F4})
    for (const auto& l : rep_labels(t)) {
      const Representation r = build_rep(t, l);
      for (const auto& m : r.gens)
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j) EXPECT_TRUE(denominator_factors(m(i, j)).clean()) << l << " " << m(i, j);
      EXPECT_EQ(commutant_dimension(r.gens), 1) << l;
    }
}

TEST(Misprints, LiteralReadingsAreDetected) {
  for (const auto& m : misprints()) {
    const std::string alg = m.subject.substr(0, m.subject.find(' '));
    const std::string label = m.subject.substr(m.subject.find(' ') + 1);
    const WeylType t = algebra_from_string(alg);
    const auto reading = TableReading::only(m.id);
    bool detected = false;
    try {
      const Representation r = build_rep(t, label, distinct_params(), reading);
      detected = !broken_relations(r).empty();
      if (t == WeylType::F4) detected = detected || !(d_matrices(r)[2] == tabulated_d_matrices(label, reading)[2]);
    } catch (const PlacementError&) {
      detected = true;
    }
    EXPECT_TRUE(detected) << m.id;
  }
}

TEST(Representation, JsonRoundTrip) {
  for (const char* l : {"10", "25", "19"}) {
    const Representation r = build_rep(WeylType::F4, l, {{"xi", E("p/q")}});
    EXPECT_EQ(representation_from_json(nlohmann::json::parse(to_json(r).dump())), r);
  }
}
