// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N]...
//
// Exits 0 iff the set of failing criteria equals the set given with
// --expect-fail (empty by default).

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "hecke/verify.hpp"

using namespace hecke;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

const std::vector<WeylType> kAlgebras{WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4};

Outcome relations() {
  int reps = 0;
  for (WeylType t : kAlgebras)
    for (const auto& l : rep_labels(t)) {
      ++reps;
      for (const auto& c : check_presentation(build_rep(t, l)))
        if (c.status != Status::pass) return {false, algebra_name(t) + " " + l + " " + c.check_id};
    }
  return {reps == 40, std::to_string(reps) + " representations"};
}

Outcome central() {
  int ledgered = 0;
  for (const auto& l : rep_labels(WeylType::F4)) {
    const Representation r = build_rep(WeylType::F4, l);
    for (const auto& c : check_central(r)) {
      if (c.status == Status::fail) return {false, "HF4 " + l + " " + c.check_id};
      if (c.status == Status::ledgered_misprint) ++ledgered;
    }
    // c(k) by summing the character over every reflection of the group,
    // split by conjugacy to s1 (parameter p) or s3 (parameter q)
    const auto& g = weyl_group(WeylType::F4);
    const auto& tab = character_table(WeylType::F4);
    const int k = tab.index_of(l);
    const long d = tab.degree(k);
    long sp = 0, sq = 0;
    for (int x = 0; x < g.size(); ++x) {
      const auto& m = g.element(x);
      if (g.order(x) != 2 || m[0] + m[5] + m[10] + m[15] != 2) continue;
      const long chi = tab.value(k, g.class_of(x));
      if (g.class_of(x) == g.class_of(g.generator(0))) sp += chi;
      else if (g.class_of(x) == g.class_of(g.generator(2))) sq += chi;
      else return {false, "reflection outside both classes"};
    }
    const long w0 = tab.value(k, g.class_of(g.longest()));
    const RatFun c = RatFun(w0 / d) * P(static_cast<int>(sp / d)) * Q(static_cast<int>(sq / d));
    const auto dm = d_matrices(r);
    if (!(dm[3] == c * FieldMatrix::identity(r.dim()))) return {false, "HF4 " + l + ": D4 is not c(k) Id"};
  }
  if (!(central_constant(WeylType::F4, "1").to_ratfun() == PQ(12, 12)) || !(central_constant(WeylType::F4, "25").to_ratfun() == RatFun(-1)))
    return {false, "c(1) or c(25)"};
  return {true, "25 representations, " + std::to_string(ledgered) + " ledgered table entry"};
}

Outcome group_layer() {
  const auto& g = weyl_group(WeylType::F4);
  const auto& t = character_table(WeylType::F4);
  if (g.size() != 1152 || g.num_classes() != 25) return {false, "order or class count"};
  const std::vector<long> degrees{1, 1, 1, 1, 2, 2, 2, 2, 4, 9, 9, 9, 9, 6, 6, 12, 4, 4, 4, 4, 8, 8, 8, 8, 16};
  long sq = 0;
  for (int i = 0; i < 25; ++i) {
    if (t.degree(i) != degrees[static_cast<std::size_t>(i)]) return {false, "degree of " + t.labels[static_cast<std::size_t>(i)]};
    sq += t.degree(i) * t.degree(i);
  }
  if (sq != 1152) return {false, "sum of squared degrees"};
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j) {
      long row = 0, col = 0;
      for (int c = 0; c < 25; ++c) row += g.class_size(c) * t.value(i, c) * t.value(j, c);
      for (int k = 0; k < 25; ++k) col += t.value(k, i) * t.value(k, j);
      if (row != (i == j ? 1152 : 0) || col != (i == j ? 1152 / g.class_size(i) : 0)) return {false, "orthogonality"};
    }
  if (g.power(g.from_word({4, 3, 2, 1}), 6) != g.longest()) return {false, "Coxeter element"};
  return {true, "order 1152, 25 classes"};
}

Outcome branching_tables() {
  auto check = [](WeylType gt, const std::map<std::string, std::vector<std::string>>& pub) -> std::string {
    const WeylType ht = parent_subgroup(gt);
    const auto& tg = character_table(gt);
    const auto& th = character_table(ht);
    const auto m = branching(weyl_group(gt), tg, weyl_group(ht), th);
    for (int k = 0; k < tg.num_irreps(); ++k) {
      std::vector<long> want(static_cast<std::size_t>(th.num_irreps()), 0);
      for (const auto& l : pub.at(tg.labels[static_cast<std::size_t>(k)])) ++want[static_cast<std::size_t>(th.index_of(l))];
      if (m[static_cast<std::size_t>(k)] != want) return algebra_name(gt) + " " + tg.labels[static_cast<std::size_t>(k)];
    }
    return "";
  };
  for (auto [t, pub] : {std::pair{WeylType::B3, published_b3_to_a2()}, std::pair{WeylType::F4, published_f4_to_b3()}})
    if (auto bad = check(t, pub); !bad.empty()) return {false, "table row " + bad};
  for (WeylType t : kAlgebras)
    for (const auto& l : rep_labels(t))
      for (const auto& c : check_branching(build_rep(t, l)))
        if (c.status != Status::pass) return {false, algebra_name(t) + " " + l + " " + c.check_id};
  return {true, "tables and windows"};
}

Outcome derivation() {
  int exact = 0;
  for (const auto& l : rep_labels(WeylType::F4)) {
    const Derivation d = derive_rep(l);
    if (!(d.published_diagonal_matches && d.published_u_solve_system && d.published_v_match && d.published_identities_hold))
      return {false, "HF4 " + l + ": published block disagrees"};
    if (l == "25") {
      const auto& s = d.states;
      bool rank11 = false;
      for (const auto& x : s)
        if (x.m == 6 && x.u_rank == 11) rank11 = true;
      if (d.assembled || !rank11) return {false, "HF4 25: expected an underdetermined rank-11 system"};
      continue;
    }
    if (!d.assembled || !d.diff.empty()) return {false, "HF4 " + l + ": derived T4 differs"};
    ++exact;
  }
  return {exact == 24, std::to_string(exact) + " reproduced exactly, k = 25 invariants verified"};
}

Outcome specialization() {
  std::string nonint;
  int reps = 0;
  for (WeylType t : kAlgebras)
    for (const auto& l : rep_labels(t)) {
      const Representation r = build_rep(t, l);
      for (const auto& c : check_specialization(r))
        if (c.status != Status::pass) return {false, algebra_name(t) + " " + l + " " + c.check_id};
      ++reps;
      const auto s = specialize(r, 1, 1);
      for (std::size_t g = 0; g < s.size() && nonint.empty(); ++g)
        for (int i = 0; i < s[g].rows() && nonint.empty(); ++i)
          for (int j = 0; j < s[g].cols() && nonint.empty(); ++j)
            if (s[g](i, j).get_den() != 1)
              nonint = algebra_name(t) + " " + l + " T" + std::to_string(g + 1) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + s[g](i, j).get_str();
    }
  if (!nonint.empty()) return {false, "relations and characters hold for all " + std::to_string(reps) + ", but not integral: " + nonint};
  return {true, std::to_string(reps) + " representations"};
}

Outcome denominators() {
  for (WeylType t : kAlgebras)
    for (const auto& l : rep_labels(t))
      for (const auto& c : check_denominators(build_rep(t, l)))
        if (c.status != Status::pass) return {false, algebra_name(t) + " " + l + ": " + c.witness->actual};
  return {true, "no foreign factors"};
}

Outcome gauge() {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 30);
  auto random_params = [&] {
    Params p;
    for (const auto& n : parameter_names()) {
      int a = 0;
      while (a == 0) a = num(rng);
      p[n] = RatFun::rational(a, den(rng));
    }
    return p;
  };
  SuiteOptions o;
  o.derivation = false;
  o.published_readings = false;
  for (const char* l : {"10", "23"}) {
    const Params a = random_params(), b = random_params();
    const Representation ra = build_rep(WeylType::F4, l, a), rb = build_rep(WeylType::F4, l, b);
    const FieldMatrix D = gauge_matrix(l, a, b);
    if (!D.is_diagonal()) return {false, std::string("HF4 ") + l + ": gauge matrix not diagonal"};
    const FieldMatrix Di = inverse(D);
    for (int g = 1; g <= 4; ++g)
      if (!(D * ra.T(g) * Di == rb.T(g))) return {false, std::string("HF4 ") + l + ": not conjugate"};
    auto invariant = [&](const Representation& r) {
      std::vector<std::pair<std::string, Status>> v;
      for (const auto& c : verify_representation(r, o))
        if (c.check_id != "denominators" && c.check_id != "gauge-covariance") v.emplace_back(c.check_id, c.status);
      return v;
    };
    if (invariant(ra) != invariant(rb)) return {false, std::string("HF4 ") + l + ": invariant checks differ"};
  }
  return {true, "HF4 10 and 23"};
}

Outcome determinism() {
  const std::string a = to_json(verify_all(kAlgebras)).dump();
  const std::string b = to_json(verify_all(kAlgebras)).dump();
  std::vector<CheckReport> serial;
  for (WeylType t : kAlgebras)
    for (const auto& l : rep_labels(t)) {
      auto v = verify_representation(build_rep(t, l));
      serial.insert(serial.end(), v.begin(), v.end());
    }
  if (a != b || a != to_json(serial).dump()) return {false, "verify report differs between runs"};
  for (const char* l : {"10", "16", "25"})
    if (to_json(derive_rep(l)).dump() != to_json(derive_rep(l)).dump()) return {false, std::string("derive report differs for ") + l};
  return {true, "verify (parallel twice, serial once) and derive"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--expect-fail N]...\n";
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"relation suite", relations},
      {"central elements", central},
      {"group and character layer", group_layer},
      {"branching", branching_tables},
      {"derivation round trip", derivation},
      {"specialization at p = q = 1", specialization},
      {"denominators", denominators},
      {"gauge property", gauge},
      {"determinism", determinism},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int n = static_cast<int>(i + 1);
    if (!o.ok) failed.insert(n);
    std::printf("criterion %d: %s  %s (%s; %.1fs)%s\n", n, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str(), secs,
                !o.ok && expected.count(n) ? " [expected]" : "");
    std::fflush(stdout);
  }
  return failed == expected ? 0 : 1;
}
