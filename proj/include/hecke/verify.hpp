#ifndef HECKE_VERIFY_HPP
#define HECKE_VERIFY_HPP

// Named, exact checks over the seminormal representations. Each check yields
// a report with status pass, fail or ledgered-misprint; failures carry a
// witness (the first offending entry, or a message).

#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/derive.hpp"

namespace hecke {

enum class Status { pass, fail, ledgered_misprint };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::ledgered_misprint: return "ledgered-misprint";
  }
  return "?";
}

struct Witness {
  std::string what;
  int row = 0, col = 0;  // 1-based; 0 when not an entry
  std::string expected, actual;
};

struct CheckReport {
  std::string check_id;
  std::string algebra;
  std::string label;
  Status status = Status::pass;
  std::optional<Witness> witness;
};

namespace detail {

inline CheckReport report(const std::string& id, const Representation& r, std::optional<Witness> w) {
  return {id, algebra_name(r.algebra), r.label, w ? Status::fail : Status::pass, std::move(w)};
}

/// First entry where two equally sized matrices differ.
template <class T>
std::optional<Witness> compare(const std::string& what, const Matrix<T>& actual, const Matrix<T>& expected) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols())
    return Witness{what + ": shape " + actual.shape() + " vs " + expected.shape(), 0, 0, "", ""};
  for (int i = 0; i < actual.rows(); ++i)
    for (int j = 0; j < actual.cols(); ++j)
      if (!(actual(i, j) == expected(i, j))) {
        Witness w{what, i + 1, j + 1, "", ""};
        if constexpr (std::is_same_v<T, RatFun>) {
          w.expected = expected(i, j).to_string();
          w.actual = actual(i, j).to_string();
        } else {
          w.expected = expected(i, j).get_str();
          w.actual = actual(i, j).get_str();
        }
        return w;
      }
  return std::nullopt;
}

inline Witness message(const std::string& m) { return Witness{m, 0, 0, "", ""}; }

/// Relations of the presentation that apply to an algebra of the given rank.
template <class T>
std::vector<std::pair<std::string, std::optional<Witness>>> relations(const std::vector<Matrix<T>>& g, const T& qp, const T& qq) {
  std::vector<std::pair<std::string, std::optional<Witness>>> out;
  const int n = static_cast<int>(g.size());
  const int d = g[0].rows();
  auto t = [&](int i) -> const Matrix<T>& { return g[static_cast<std::size_t>(i - 1)]; };
  auto quad = [&](std::initializer_list<int> gens, const T& x) {
    std::optional<Witness> w;
    for (int i : gens) {
      if (i > n || w) continue;
      w = compare("T" + std::to_string(i) + "^2", t(i) * t(i), x * t(i) + Matrix<T>::identity(d));
    }
    return w;
  };
  out.push_back({"quadratic-p", quad({1, 2}, qp)});
  if (n >= 3) out.push_back({"quadratic-q", quad({3, 4}, qq)});
  if (n >= 2) out.push_back({"braid-121", compare("T1T2T1", t(1) * t(2) * t(1), t(2) * t(1) * t(2))});
  if (n >= 3) out.push_back({"braid-2323", compare("T2T3T2T3", t(2) * t(3) * t(2) * t(3), t(3) * t(2) * t(3) * t(2))});
  if (n >= 3) out.push_back({"commute-13", compare("T1T3", t(1) * t(3), t(3) * t(1))});
  if (n >= 4) {
    out.push_back({"braid-343", compare("T3T4T3", t(3) * t(4) * t(3), t(4) * t(3) * t(4))});
    out.push_back({"commute-14", compare("T1T4", t(1) * t(4), t(4) * t(1))});
    out.push_back({"commute-24", compare("T2T4", t(2) * t(4), t(4) * t(2))});
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks

inline std::vector<CheckReport> check_presentation(const Representation& r) {
  std::vector<CheckReport> out;
  for (auto& [id, w] : detail::relations<RatFun>(r.gens, P() - P(-1), Q() - Q(-1))) out.push_back(detail::report(id, r, w));
  return out;
}

/// D_j against the tabulated values (HF4) and the longest-element scalar
/// against the character-table prediction c(lambda).
inline std::vector<CheckReport> check_central(const Representation& r) {
  std::vector<CheckReport> out;
  const auto d = d_matrices(r);
  const int n = weyl_rank(r.algebra);
  const RatFun c = central_constant(r.algebra, r.label).to_ratfun();
  const FieldMatrix I = FieldMatrix::identity(r.dim());
  // D_n is T_{w0} for A1, B3, F4 and T_{w0}^2 for A2
  const RatFun expect = r.algebra == WeylType::A2 ? c * c : c;
  out.push_back(detail::report("central-longest", r, detail::compare("D" + std::to_string(n), d.back(), expect * I)));
  if (r.algebra != WeylType::F4) return out;
  const auto published = tabulated_d_matrices(r.label, TableReading::published());
  const auto corrected = tabulated_d_matrices(r.label);
  for (int j = 0; j < 4; ++j) {
    const std::string id = "d-table-D" + std::to_string(j + 1);
    auto w = detail::compare("D" + std::to_string(j + 1), d[static_cast<std::size_t>(j)], published[static_cast<std::size_t>(j)]);
    CheckReport rep = detail::report(id, r, w);
    if (w && !detail::compare("D", d[static_cast<std::size_t>(j)], corrected[static_cast<std::size_t>(j)])) rep.status = Status::ledgered_misprint;
    out.push_back(rep);
  }
  return out;
}

inline std::vector<CheckReport> check_branching(const Representation& r) {
  std::vector<CheckReport> out;
  if (r.algebra == WeylType::A1) return out;
  std::vector<Window> windows;
  try {
    windows = restrict_blocks(r);
    out.push_back(detail::report("restriction-windows", r, std::nullopt));
  } catch (const std::exception& e) {
    out.push_back(detail::report("restriction-windows", r, detail::message(e.what())));
    return out;
  }
  const WeylType h = parent_subgroup(r.algebra);
  const auto& tg = character_table(r.algebra);
  const auto& th = character_table(h);
  const auto m = branching(weyl_group(r.algebra), tg, weyl_group(h), th);
  std::vector<long> got(static_cast<std::size_t>(th.num_irreps()), 0);
  for (const auto& w : windows) ++got[static_cast<std::size_t>(th.index_of(w.label))];
  const auto& want = m[static_cast<std::size_t>(tg.index_of(r.label))];
  std::optional<Witness> w;
  for (int i = 0; i < th.num_irreps() && !w; ++i)
    if (got[static_cast<std::size_t>(i)] != want[static_cast<std::size_t>(i)])
      w = Witness{"multiplicity of " + th.labels[static_cast<std::size_t>(i)], 0, 0, std::to_string(want[static_cast<std::size_t>(i)]),
                  std::to_string(got[static_cast<std::size_t>(i)])};
  out.push_back(detail::report("branching-multiset", r, w));
  if (r.algebra == WeylType::F4) {
    std::optional<Witness> dw;
    for (long x : got)
      if (x > 1) dw = detail::message("a restriction summand occurs more than once");
    out.push_back(detail::report("summands-distinct", r, dw));
  }
  return out;
}

/// At p = q = 1: defined, Weyl-group relations, traces equal characters.
inline std::vector<CheckReport> check_specialization(const Representation& r) {
  std::vector<CheckReport> out;
  std::vector<QMatrix> s;
  try {
    s = specialize(r, 1, 1);
    out.push_back(detail::report("specialization-defined", r, std::nullopt));
  } catch (const std::exception& e) {
    out.push_back(detail::report("specialization-defined", r, detail::message(e.what())));
    return out;
  }
  std::optional<Witness> rel;
  for (auto& [id, w] : detail::relations<mpq_class>(s, mpq_class(0), mpq_class(0)))
    if (w && !rel) rel = Witness{id + ": " + w->what, w->row, w->col, w->expected, w->actual};
  out.push_back(detail::report("specialization-relations", r, rel));
  const auto& g = weyl_group(r.algebra);
  const auto& tab = character_table(r.algebra);
  const int k = tab.index_of(r.label);
  std::optional<Witness> tw;
  for (int c = 0; c < g.num_classes() && !tw; ++c) {
    QMatrix m = QMatrix::identity(r.dim());
    for (int x : g.word(g.class_rep(c))) m = m * s[static_cast<std::size_t>(x - 1)];
    const mpq_class want(tab.value(k, c));
    if (m.trace() != want) {
      std::string word;
      for (int x : g.word(g.class_rep(c))) word += std::to_string(x);
      tw = Witness{"trace on class " + std::to_string(c + 1) + " (word " + (word.empty() ? "e" : word) + ")", 0, 0, want.get_str(), m.trace().get_str()};
    }
  }
  out.push_back(detail::report("specialization-characters", r, tw));
  return out;
}

inline std::vector<CheckReport> check_denominators(const Representation& r) {
  std::optional<Witness> w;
  for (std::size_t g = 0; g < r.gens.size() && !w; ++g)
    for (int i = 0; i < r.dim() && !w; ++i)
      for (int j = 0; j < r.dim() && !w; ++j) {
        const auto f = denominator_factors(r.gens[g](i, j));
        if (!f.clean()) w = Witness{"T" + std::to_string(g + 1) + " foreign denominator factor", i + 1, j + 1, "1", f.foreign->to_string()};
      }
  return {detail::report("denominators", r, w)};
}

/// Gauge covariance between two fixed distinct parameter sets.
inline std::vector<CheckReport> check_gauge(const Representation& r) {
  if (r.algebra != WeylType::F4 || rep_parameters(WeylType::F4, representative_of(r.label)).empty()) return {};
  const Params a = distinct_parameter_values();
  const Params b{{"alpha", RatFun::rational(3, 7)}, {"beta", RatFun::rational(-5, 2)}, {"xi", RatFun::rational(11, 3)},
                 {"eta", RatFun::rational(2, 13)}, {"theta", RatFun::rational(-17, 5)}};
  const Representation ra = build_rep(WeylType::F4, r.label, a), rb = build_rep(WeylType::F4, r.label, b);
  const FieldMatrix D = gauge_matrix(r.label, a, b);
  std::optional<Witness> w;
  if (!D.is_diagonal()) w = detail::message("gauge matrix is not diagonal");
  const FieldMatrix Di = inverse(D);
  for (int g = 1; g <= 4 && !w; ++g) w = detail::compare("T" + std::to_string(g), D * ra.T(g) * Di, rb.T(g));
  return {detail::report("gauge-covariance", r, w)};
}

/// Re-derivation of T4 (HF4 only).
inline std::vector<CheckReport> check_derivation(const Representation& r) {
  if (r.algebra != WeylType::F4) return {};
  std::optional<Witness> w;
  try {
    const Derivation d = derive_rep(r.label);
    if (d.assembled && !d.diff.empty()) {
      const auto& e = d.diff.front();
      w = Witness{"derived T4 differs from the table", e.row, e.col, e.derived.to_string(), e.table.to_string()};
    }
    if (!d.published_diagonal_matches) w = detail::message("published diagonal differs from the derived one");
    if (!d.published_u_solve_system) w = detail::message("published products t_ij t_ji violate the linear system");
    if (!d.published_v_match) w = detail::message("published ratios differ from the derived ones");
    if (!d.published_identities_hold) w = detail::message("published block violates the product or ratio identities");
  } catch (const std::exception& e) {
    w = detail::message(e.what());
  }
  return {detail::report("derivation", r, w)};
}

/// Each ledgered table misprint of the representative of r: the literal
/// reading must fail a check that the corrected reading passes.
inline std::vector<CheckReport> check_published_readings(const Representation& r) {
  std::vector<CheckReport> out;
  const std::string subject = algebra_name(r.algebra) + " " + r.label;
  for (const auto& m : misprints()) {
    if (m.subject != subject) continue;
    std::string failure;
    try {
      const Representation lit = build_rep(r.algebra, r.label, r.algebra == WeylType::F4 ? distinct_parameter_values() : Params{}, TableReading::only(m.id));
      for (const auto& c : check_presentation(lit))
        if (c.status == Status::fail && failure.empty()) failure = "relation " + c.check_id + " fails";
      if (failure.empty() && r.algebra == WeylType::F4) {
        const auto d = d_matrices(lit);
        const auto t = tabulated_d_matrices(r.label, TableReading::only(m.id));
        for (int j = 0; j < 4 && failure.empty(); ++j)
          if (detail::compare("D", d[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j)])) failure = "D" + std::to_string(j + 1) + " differs from the table";
      }
      if (failure.empty() && r.algebra == WeylType::F4) {
        const Representation cor = build_rep(r.algebra, r.label, distinct_parameter_values());
        if (!(cor.T(4) == lit.T(4))) {
          // the literal T4 differs from the one the derivation reproduces
          std::vector<DerivationState> ds = block_decompose(cor);
          for (auto& s : ds) trace_data(s);
          diagonal_entries(ds, cor);
          for (auto& s : ds) offdiag_systems(s);
          const FieldMatrix derived = assemble_t4(ds, cor, tree_values(ds, cor.T(4)));
          if (!(derived == lit.T(4))) failure = "T4 differs from the derived matrix";
        }
      }
    } catch (const std::exception& e) {
      failure = std::string("does not build: ") + e.what();
    }
    CheckReport rep{"published-reading:" + m.id, algebra_name(r.algebra), r.label, Status::ledgered_misprint,
                    Witness{m.location + ": " + failure, 0, 0, m.corrected, m.published}};
    if (failure.empty()) {
      rep.status = Status::fail;
      rep.witness->what = m.location + ": literal reading passes every check";
    }
    out.push_back(rep);
  }
  return out;
}

/// Stored character tables and default-parameter representations under dir
/// must equal what is computed now.
inline std::vector<CheckReport> check_golden_files(const std::string& dir) {
  std::vector<CheckReport> out;
  auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  auto read = [](const std::filesystem::path& f) -> std::optional<nlohmann::json> {
    std::ifstream in(f);
    if (!in) return std::nullopt;
    try {
      return nlohmann::json::parse(in);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  for (WeylType t : {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4}) {
    const auto f = std::filesystem::path(dir) / ("chartab-" + lower(weyl_name(t)) + ".json");
    const auto j = read(f);
    std::optional<Witness> w;
    if (!j) w = detail::message("missing or unreadable " + f.string());
    else if (*j != to_json(weyl_group(t), character_table(t))) w = detail::message(f.string() + " differs from the computed table");
    out.push_back({"golden-chartab", algebra_name(t), "", w ? Status::fail : Status::pass, w});
    for (const auto& l : rep_labels(t)) {
      const Representation r = build_rep(t, l);
      const auto g = std::filesystem::path(dir) / "reps" / (rep_file_stem(r) + ".json");
      const auto jr = read(g);
      std::optional<Witness> wr;
      if (!jr) wr = detail::message("missing or unreadable " + g.string());
      else {
        try {
          const Representation stored = representation_from_json(*jr);
          for (int i = 1; i <= static_cast<int>(r.gens.size()) && !wr; ++i) wr = detail::compare("T" + std::to_string(i), stored.T(i), r.T(i));
        } catch (const std::exception& e) {
          wr = detail::message(g.string() + ": " + e.what());
        }
      }
      out.push_back(detail::report("golden-representation", r, wr));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteOptions {
  bool derivation = true;
  bool published_readings = true;
};

inline std::vector<CheckReport> verify_representation(const Representation& r, const SuiteOptions& o = {}) {
  std::vector<CheckReport> out;
  auto add = [&](std::vector<CheckReport> v) { out.insert(out.end(), v.begin(), v.end()); };
  add(check_presentation(r));
  add(check_central(r));
  add(check_branching(r));
  add(check_specialization(r));
  add(check_denominators(r));
  add(check_gauge(r));
  if (o.derivation) add(check_derivation(r));
  if (o.published_readings) add(check_published_readings(r));
  return out;
}

/// All representations of the given algebras, checked in parallel; the report
/// order is fixed (algebra, label, check).
inline std::vector<CheckReport> verify_all(const std::vector<WeylType>& algebras, const SuiteOptions& o = {}) {
  for (WeylType t : algebras) character_table(t);
  central_idempotents_ha2();
  std::vector<std::future<std::vector<CheckReport>>> jobs;
  for (WeylType t : algebras)
    for (const auto& l : rep_labels(t))
      jobs.push_back(std::async(std::launch::async, [t, l, o] { return verify_representation(build_rep(t, l), o); }));
  std::vector<CheckReport> out;
  for (auto& j : jobs) {
    auto v = j.get();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

inline bool has_unledgered_failure(const std::vector<CheckReport>& v) {
  for (const auto& r : v)
    if (r.status == Status::fail) return true;
  return false;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"check", r.check_id}, {"algebra", r.algebra}, {"label", r.label}, {"status", status_name(r.status)}};
  if (r.witness) {
    nlohmann::json w{{"what", r.witness->what}};
    if (r.witness->row > 0) {
      w["row"] = r.witness->row;
      w["col"] = r.witness->col;
    }
    if (!r.witness->expected.empty() || !r.witness->actual.empty()) {
      w["expected"] = r.witness->expected;
      w["actual"] = r.witness->actual;
    }
    j["witness"] = w;
  }
  return j;
}

inline nlohmann::json to_json(const std::vector<CheckReport>& v) {
  nlohmann::json checks = nlohmann::json::array();
  int pass = 0, fail = 0, ledgered = 0;
  for (const auto& r : v) {
    checks.push_back(to_json(r));
    (r.status == Status::pass ? pass : r.status == Status::fail ? fail : ledgered) += 1;
  }
  return {{"checks", checks}, {"summary", {{"pass", pass}, {"fail", fail}, {"ledgered-misprint", ledgered}}}};
}

// ---------------------------------------------------------------------------
// Misprint ledger

/// Markdown ledger of table misprints: both readings and the check that
/// separates them, as found by check_published_readings.
inline std::string misprints_markdown() {
  std::ostringstream os;
  os << "# Misprints\n\n"
     << "Generated by `hecke verify --misprints`. Each entry lists the table entry as printed, the entry used in this\n"
     << "repository, and the check that rejects the printed reading while the corrected one passes.\n";
  for (const auto& m : misprints()) {
    const std::string alg = m.subject.substr(0, m.subject.find(' '));
    const std::string label = m.subject.substr(m.subject.find(' ') + 1);
    const auto reps = check_published_readings(build_rep(algebra_from_string(alg), label));
    std::string status = "not checked", evidence;
    for (const auto& r : reps)
      if (r.check_id == "published-reading:" + m.id) {
        status = status_name(r.status);
        evidence = r.witness ? r.witness->what : "";
      }
    os << "\n## " << m.id << "\n\n"
       << "- representation: " << m.subject << "\n"
       << "- location: " << m.location << "\n"
       << "- printed: `" << m.published << "`\n"
       << "- corrected: `" << m.corrected << "`\n"
       << "- status: " << status << "\n"
       << "- evidence: " << evidence << "\n";
  }
  return os.str();
}

}  // namespace hecke

#endif  // HECKE_VERIFY_HPP
