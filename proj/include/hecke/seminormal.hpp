#ifndef HECKE_SEMINORMAL_HPP
#define HECKE_SEMINORMAL_HPP

// Seminormal matrices for the irreducible representations of the Hecke
// algebras HA1, HA2, HB3 and HF4. T1, T2 carry the parameter p and T3, T4
// carry q. Representations 1-25 of HF4 follow the standard numbering; the ones
// not tabulated directly are images of a representative under the field
// automorphisms p -> -1/p, q -> -1/q followed by a permutation conjugation.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/expr.hpp"
#include "hecke/linalg.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Which tabulated misprints are read literally (by id); empty means the
/// corrected tables.
struct TableReading {
  std::set<std::string> literal;

  static TableReading corrected() { return {}; }
  static TableReading published();
  static TableReading only(const std::string& id) { return {{id}}; }
  bool is_literal(const std::string& id) const { return literal.count(id) > 0; }
};

using Params = std::map<std::string, RatFun>;

class RepresentationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class PlacementError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SeminormalityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> v{"alpha", "beta", "xi", "eta", "theta"};
  return v;
}

inline std::string algebra_name(WeylType t) { return "H" + weyl_name(t); }

inline WeylType algebra_from_string(std::string s) {
  if (s.size() > 1 && (s[0] == 'H' || s[0] == 'h')) s = s.substr(1);
  return weyl_type_from_string(s);
}

struct Representation {
  WeylType algebra = WeylType::A1;
  std::string label;
  std::vector<FieldMatrix> gens;
  Params params;

  int dim() const { return gens.empty() ? 0 : gens[0].rows(); }
  const FieldMatrix& T(int i) const { return gens.at(static_cast<std::size_t>(i - 1)); }
};

// ---------------------------------------------------------------------------
// Table corrections

/// A table entry whose literal reading contradicts the defining relations or
/// the block structure; the corrected reading is used by default.
struct Misprint {
  std::string id;
  std::string subject;  // algebra and label, e.g. "HF4 10"
  std::string location;
  std::string published;
  std::string corrected;
};

inline const std::vector<Misprint>& misprints() {
  static const std::vector<Misprint> v{
      {"b3-block-1e2_1", "HB3 1^2|1", "T3 block M, entry (2,1)", "-[2]_p [2]_{p^2q}", "-[2]_p [2]_{pq}"},
      {"phi9-T3", "HF4 9", "T3, diagonal entry 4", "q^-1", "-q^-1"},
      {"phi10-T3", "HF4 10", "T3, diagonal entry 9", "q", "-q^-1"},
      {"N10-entry-32", "HF4 10", "N10, entry (3,2)", "-[2]_{pq^-1} theta^-1", "-[2]_{pq^-1} eta^-1"},
      {"phi16-T2", "HF4 16", "T2, trailing blocks", "M2(p,1)-p^-1 read as one block", "M2(p,1), -p^-1"},
      {"phi16-T4-window", "HF4 16", "T4, second copy of N16", "rows/columns [3,5,9,12]", "rows/columns [3,5,9,11]"},
      {"phi25-D3", "HF4 25", "D3, diagonal entry 16", "q^-3", "-q^-3"},
  };
  return v;
}

inline TableReading TableReading::published() {
  TableReading r;
  for (const auto& m : misprints()) r.literal.insert(m.id);
  return r;
}

// ---------------------------------------------------------------------------
// Building blocks

namespace sn {

inline RatFun p() { return P(); }
inline RatFun q() { return Q(); }
inline RatFun mp() { return -P(-1); }
inline RatFun mq() { return -Q(-1); }
inline RatFun b2(const RatFun& x) { return br(2, x); }
inline RatFun b3(const RatFun& x) { return br(3, x); }
inline RatFun b0(const RatFun& x) { return br(0, x); }
inline RatFun pq(int a, int b) { return PQ(a, b); }
inline FieldMatrix s(const RatFun& x) { return FieldMatrix::diagonal({x}); }

/// Scatter placement into an all-zero matrix; overlapping writes are errors.
class Scatter {
public:
  explicit Scatter(int n) : m_(n, n), used_(static_cast<std::size_t>(n * n), 0) {}

  /// Block diagonal from the top-left corner; the blocks must fill the matrix.
  Scatter& diag(const std::vector<FieldMatrix>& blocks) {
    int at = 0;
    for (const auto& b : blocks) {
      std::vector<int> idx;
      for (int i = 0; i < b.rows(); ++i) idx.push_back(at + i + 1);
      if (at + b.rows() > m_.rows()) throw PlacementError("diagonal blocks exceed the matrix size");
      place(idx, b);
      at += b.rows();
    }
    if (at != m_.rows())
      throw PlacementError("diagonal blocks have total size " + std::to_string(at) + ", expected " +
                           std::to_string(m_.rows()));
    return *this;
  }

  /// Writes the submatrix on the given 1-based rows and columns.
  Scatter& place(const std::vector<int>& idx, const FieldMatrix& b) {
    if (b.rows() != static_cast<int>(idx.size()) || b.cols() != b.rows())
      throw PlacementError("block size does not match its index list");
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const int i = idx[a] - 1, j = idx[c] - 1;
        if (i < 0 || j < 0 || i >= m_.rows() || j >= m_.cols()) throw PlacementError("index out of range");
        auto& u = used_[static_cast<std::size_t>(i * m_.cols() + j)];
        if (u) throw PlacementError("overlapping placement at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        u = 1;
        m_(i, j) = b(static_cast<int>(a), static_cast<int>(c));
      }
    return *this;
  }

  Scatter& place(int i, const RatFun& x) { return place({i}, s(x)); }

  FieldMatrix done() const { return m_; }

private:
  FieldMatrix m_;
  std::vector<char> used_;
};

inline FieldMatrix m2(const RatFun& x, const RatFun& a) {
  const RatFun b = b2(x);
  return (-RatFun(1) / b) * FieldMatrix::from_rows({{x.pow(-2), a * (b - RatFun(1))}, {(b + RatFun(1)) / a, -x.pow(2)}});
}

inline FieldMatrix m2p() { return m2(p(), RatFun(1)); }

/// The 2x2 blocks of T3 in the three-dimensional HB3 representations.
inline FieldMatrix m_b3(const std::string& label, const TableReading& v = {}) {
  const RatFun k = RatFun(1) / b3(p());
  const RatFun d1 = q() + P(-2) * b0(q()), d2 = mq() + P(2) * b0(q());
  const RatFun e1 = mq() + P(-2) * b0(q()), e2 = q() + P(2) * b0(q());
  if (label == "2|1") return k * FieldMatrix::from_rows({{d1, -b2(p()) * b2(pq(1, -1))}, {-b2(pq(2, 1)), d2}});
  if (label == "1^2|1") {
    const RatFun e21 = v.is_literal("b3-block-1e2_1") ? -b2(p()) * b2(pq(2, 1)) : -b2(p()) * b2(pq(1, 1));
    return k * FieldMatrix::from_rows({{e1, -b2(pq(2, -1))}, {e21, e2}});
  }
  if (label == "1|2") return k * FieldMatrix::from_rows({{e1, b2(p()) * b2(pq(1, 1))}, {b2(pq(2, -1)), e2}});
  if (label == "1|1^2") return k * FieldMatrix::from_rows({{d1, b2(pq(2, 1))}, {b2(p()) * b2(pq(1, -1)), d2}});
  throw RepresentationError("no 2x2 block for " + label);
}

inline FieldMatrix m10(const RatFun& xi, const RatFun& eta) {
  const RatFun k = RatFun(1) / (b2(q()) * b2(pq(2, 1)));
  return k * FieldMatrix::from_rows({
                 {pq(-2, -1) * b2(q()) * b0(q()), -b2(q()) * b2(pq(2, 2)) * xi / eta, -b2(q()) * b2(pq(2, 2)) * xi},
                 {-b2(pq(2, -1)) * eta / xi, b2(pq(2, 1)) + pq(2, 1) * b2(q()) * b0(q()), -b2(pq(2, -1)) * eta},
                 {-b2(pq(2, 1)) / xi, -b2(pq(2, 1)) / eta, Q(2) * b2(pq(2, 1))},
             });
}

inline FieldMatrix n10(const RatFun& theta, const RatFun& eta, const TableReading& v) {
  const RatFun k = RatFun(1) / (b2(q()) * b2(pq(1, -1)));
  const RatFun e32 = v.is_literal("N10-entry-32") ? -b2(pq(1, -1)) / theta : -b2(pq(1, -1)) / eta;
  return k * FieldMatrix::from_rows({
                 {pq(1, -1) * b2(q()) * b0(q()), -b2(q()) * b2(pq(1, -2)) * theta / eta, -b2(q()) * b2(pq(1, -2)) * theta},
                 {-b2(pq(1, 1)) * eta / theta, b2(pq(1, -1)) + pq(-1, 1) * b2(q()) * b0(q()), -b2(pq(1, 1)) * eta},
                 {-b2(pq(1, -1)) / theta, e32, Q(2) * b2(pq(1, -1))},
             });
}

inline FieldMatrix m14(const RatFun& a) {
  const RatFun k = RatFun(1) / b2(pq(2, -1));
  return k * FieldMatrix::from_rows({{RatFun(1) + pq(2, -1) * b0(q()), -b3(p()) * a},
                                     {(RatFun(1) - b2(pq(2, -2))) / a, RatFun(-1) + pq(-2, 1) * b0(q())}});
}

inline FieldMatrix m16(const RatFun& a) {
  const RatFun k = RatFun(1) / b2(q());
  return k * FieldMatrix::from_rows({{RatFun(1) + Q(-1) * b0(q()), RatFun(-3) * a},
                                     {-b3(Q(2)) / (a * b3(q())), RatFun(-1) + q() * b0(q())}});
}

inline RatFun f16(const RatFun& x, const RatFun& y) {
  const RatFun ix = x.inverse(), iy = y.inverse();
  const RatFun n = RatFun(-2) * x * iy + x * y + ix * iy - ix * iy.pow(3) - y * ix - ix.pow(3) * iy.pow(3) + y * ix.pow(3);
  return n / b2(x * x * y);
}

inline FieldMatrix n16(const RatFun& xi, const RatFun& eta, const RatFun& theta) {
  const RatFun k = RatFun(1) / (b2(p()) * b2(q()));
  const RatFun three(3);
  const RatFun bpq = b2(pq(1, 1)), bpmq = b2(pq(1, -1)), c = b2(pq(2, 1)), cm = b2(pq(2, -1));
  const RatFun p2 = b3(P(2)), q2 = b3(Q(2)), q3 = b3(q());
  return k * FieldMatrix::from_rows({
                 {f16(p(), q()), three * bpq * xi * theta / (cm * eta), three * bpq * xi / cm, three * bpq * xi * theta / c},
                 {p2 * bpmq * eta / (c * xi * theta), -f16(mp(), q()), p2 * bpmq * eta / (cm * theta), three * bpmq * eta / c},
                 {q2 * bpmq / (q3 * c * xi), q2 * bpmq * theta / (q3 * cm * eta), -f16(p(), mq()), -three * bpmq * theta / c},
                 {p2 * q2 * bpq / (three * q3 * c * xi * theta), q2 * bpq / (q3 * cm * eta), -p2 * bpq / (cm * theta),
                  f16(mp(), mq())},
             });
}

inline FieldMatrix m17(const RatFun& a) {
  const RatFun k = RatFun(1) / b2(pq(2, 1));
  return k * FieldMatrix::from_rows({{RatFun(1) + pq(-2, -1) * b0(q()), -b3(p()) * a},
                                     {(RatFun(1) - b2(pq(2, 2))) / a, RatFun(-1) + pq(2, 1) * b0(q())}});
}

inline FieldMatrix m21(const RatFun& xi, const RatFun& eta) {
  const RatFun bp = b2(p()), bpq = b2(pq(1, 1)), bpmq = b2(pq(1, -1));
  const RatFun k = RatFun(1) / (bp * bpq * bpmq);
  const RatFun bq3 = b2(Q(3)), tp = b3(p());
  return k * FieldMatrix::from_rows({
                 {(q() * b2(P(2)) + Q(-2) * b0(q())) * bp, -bq3 * bp * xi / eta, -bq3 * bp * xi},
                 {-tp * bpq * eta / xi, (pq(-1, 1) * bp * b0(q()) + RatFun(1)) * bpq, -tp * bpq * eta},
                 {-tp * bpmq / xi, -tp * bpmq / eta, (pq(1, 1) * bp * b0(q()) + RatFun(1)) * bpmq},
             });
}

inline RatFun f23(const RatFun& x, const RatFun& y) {
  const RatFun n = y.pow(4) - x.pow(4) * y.pow(2) - x.pow(2) * y.pow(2) - RatFun(1);
  return n / (x.pow(3) * y.pow(4) * b2(x * y) * b2(x * x * y));
}

inline RatFun g23(const RatFun& x, const RatFun& y) {
  const RatFun n = x.pow(4) * y.pow(6) - x.pow(4) * y.pow(2) + x.pow(2) * y.pow(6) - x.pow(2) * y.pow(4) +
                   x.pow(2) * y.pow(2) + y.pow(6) + y.pow(2) - RatFun(1);
  return n / (x * y.pow(4) * b2(x / y) * b2(x * x * y));
}

inline FieldMatrix m23(const RatFun& xi, const RatFun& eta, const RatFun& theta) {
  const RatFun k = RatFun(1) / b2(q());
  const RatFun bp = b2(p()), bpq = b2(pq(1, 1)), bpmq = b2(pq(1, -1)), c = b2(pq(2, 1)), cm = b2(pq(2, -1));
  const RatFun bpq2 = b2(pq(1, 2)), bpmq2 = b2(pq(1, -2)), p2 = b3(P(2)), tq = b3(q()), bq2m1 = b2(Q(2)) - RatFun(1);
  const RatFun miq = -Q(-1);
  return k * FieldMatrix::from_rows({
                 {f23(p(), q()), bpq2 * xi / (c * bpq * eta), bpmq * bpq2 * xi / (c * bpq * bpq * theta), bpq2 * xi / (c * bpq)},
                 {p2 * bp * eta / (c * bpmq * xi), g23(p(), q()), bq2m1 * bp * eta / (bpq * c * theta), -p2 * bp * eta / (bpmq * c)},
                 {tq * p2 * bp * theta / (bpmq * cm * xi), bq2m1 * tq * bp * theta / (bpmq * cm * eta), -g23(p(), miq),
                  p2 * bp * theta / (bpmq * cm)},
                 {tq * bpmq2 / (bpmq * cm * xi), -tq * bpmq2 / (bpmq * cm * eta), bpmq2 / (bpq * cm * theta), -f23(p(), miq)},
             });
}

inline RatFun f25(const RatFun& x, const RatFun& y) {
  const RatFun n = x.pow(4) * y.pow(2) + x.pow(2) - x.pow(2) * y.pow(4) + y.pow(2);
  return -n / (x.pow(2) * y.pow(4) * b2(x * y) * b2(x / y));
}

inline RatFun g25(const RatFun& x, const RatFun& y) {
  const RatFun n = x.pow(6) * y.pow(4) - x.pow(4) * y.pow(6) - x.pow(4) * y.pow(2) + x.pow(4) + x.pow(4) * y.pow(4) +
                   x.pow(2) * y.pow(2) + x.pow(2) - x.pow(2) * y.pow(6) + y.pow(2) - y.pow(6);
  return -n / (x.pow(4) * y.pow(4) * b2(x) * b2(x / y) * b2(x * x * y));
}

inline FieldMatrix m25(const RatFun& alpha, const RatFun& beta, const RatFun& xi, const RatFun& eta, const RatFun& theta) {
  const RatFun k = RatFun(1) / b2(q());
  const RatFun A = b2(p()), Bp = b2(pq(1, 1)), Bm = b2(pq(1, -1)), C = b2(pq(2, 1)), Cm = b2(pq(2, -1));
  const RatFun E = b2(pq(2, 2)), Em = b2(pq(2, -2)), tp = b3(p()), tq = b3(q());
  const RatFun K = tp - tq + RatFun(2), two(2);
  const RatFun ip = -P(-1), iq = -Q(-1);
  return k * FieldMatrix::from_rows({
                 {f25(p(), q()), -Cm * xi / (Bp * Bm * alpha), -C * xi / (Bp * Bm * beta), -C * xi / (Bp * Bm * eta),
                  -Cm * xi / (Bp * Bm * theta), tq * C * Cm * xi / (Bp * Bm)},
                 {-two * tp * Em * alpha / (A * Bm * C * Cm * xi), g25(p(), q()), tp * Em * alpha / (A * Bm * Cm * beta),
                  -K * alpha / (A * Bm * Cm * eta), tp * Em * alpha / (A * Bm * C * theta), two * tp * tq * alpha / (A * Bm)},
                 {-two * tp * E * beta / (A * Bp * C * Cm * xi), tp * E * beta / (A * Bp * C * alpha), g25(ip, q()),
                  tp * E * beta / (A * Bp * Cm * eta), -K * beta / (A * Bp * C * theta), two * tp * tq * beta / (A * Bp)},
                 {-two * tp * Em * tq * eta / (A * Bp * C * Cm * xi), -K * tq * eta / (A * Bp * C * alpha),
                  tp * Em * tq * eta / (A * Bp * Cm * beta), -g25(p(), iq), -tp * Em * eta / (A * Bp * C * theta),
                  -two * tp * tq * eta / (A * Bp)},
                 {-two * tp * E * tq * theta / (A * Bm * C * Cm * xi), tp * E * tq * theta / (A * Bm * C * alpha),
                  -K * tq * theta / (A * Bm * Cm * beta), -tp * E * theta / (A * Bm * Cm * eta), -g25(ip, iq),
                  -two * tp * tq * theta / (A * Bm)},
                 {E * Em / (Bp * Bm * C * Cm * xi), E / (Bp * Bm * C * alpha), Em / (Bp * Bm * Cm * beta),
                  -E / (Bp * Bm * Cm * tq * eta), -Em / (Bp * Bm * C * tq * theta), -f25(p(), iq)},
             });
}

}  // namespace sn

// ---------------------------------------------------------------------------
// Labels, parameters and orbits

inline const std::vector<std::string>& rep_labels(WeylType t) { return labels_for(t); }

/// Free parameters appearing in a representative HF4 table (or HA2 (21)).
inline std::vector<std::string> rep_parameters(WeylType t, const std::string& label) {
  if (t == WeylType::A2 && label == "21") return {"alpha"};
  if (t != WeylType::F4) return {};
  static const std::map<std::string, std::vector<std::string>> m{
      {"7", {"alpha"}},         {"9", {"alpha"}},       {"10", {"xi", "eta", "theta"}},
      {"14", {"alpha"}},        {"16", {"xi", "eta", "theta"}}, {"17", {"alpha"}},
      {"21", {"xi", "eta"}},    {"23", {"xi", "eta", "theta"}},
      {"25", {"alpha", "beta", "xi", "eta", "theta"}}};
  auto it = m.find(label);
  return it == m.end() ? std::vector<std::string>{} : it->second;
}

struct OrbitRule {
  std::string source;
  std::string target;
  bool alpha_p = false;
  bool alpha_q = false;
  std::vector<std::vector<int>> cycles;  // 1-based

  std::string automorphism_string() const {
    std::string s;
    if (alpha_p) s += "alpha_p";
    if (alpha_q) s += (s.empty() ? "" : " ") + std::string("alpha_q");
    return s.empty() ? "id" : s;
  }
};

inline const std::vector<OrbitRule>& orbit_rules() {
  static const std::vector<OrbitRule> v{
      {"1", "2", true, false, {}},
      {"1", "3", false, true, {}},
      {"1", "4", true, true, {}},
      {"5", "6", false, true, {}},
      {"7", "8", true, false, {}},
      {"10", "11", true, false, {{1, 3}, {4, 6}, {7, 9}}},
      {"10", "12", false, true, {{1, 7}, {2, 8}, {3, 9}}},
      {"10", "13", true, true, {{1, 9}, {2, 8}, {3, 7}, {4, 6}}},
      {"14", "15", true, false, {{1, 3}, {4, 6}}},
      {"17", "18", true, false, {{2, 4}}},
      {"17", "19", false, true, {{1, 4, 3, 2}}},
      {"17", "20", true, true, {{1, 4}, {2, 3}}},
      {"21", "22", false, true, {{1, 7, 5, 3}, {2, 8, 6, 4}}},
      {"23", "24", true, false, {{2, 4}, {5, 7}}},
  };
  return v;
}

inline std::optional<OrbitRule> orbit_rule_for(const std::string& target) {
  for (const auto& r : orbit_rules())
    if (r.target == target) return r;
  return std::nullopt;
}

/// The tabulated representative of the orbit containing an HF4 label.
inline std::string representative_of(const std::string& label) {
  auto r = orbit_rule_for(label);
  return r ? r->source : label;
}

namespace detail {

inline Params resolve_params(WeylType t, const std::string& label, const Params& given) {
  for (const auto& [k, v] : given) {
    if (std::find(parameter_names().begin(), parameter_names().end(), k) == parameter_names().end())
      throw RepresentationError("unknown parameter " + k);
    if (v.is_zero()) throw RepresentationError("parameter " + k + " must be nonzero");
  }
  Params out;
  for (const auto& name : rep_parameters(t, label)) {
    auto it = given.find(name);
    out[name] = it == given.end() ? RatFun(1) : it->second;
  }
  return out;
}

inline std::vector<FieldMatrix> build_a1(const std::string& l) {
  if (l == "2") return {sn::s(sn::p())};
  if (l == "1^2") return {sn::s(sn::mp())};
  throw RepresentationError("unknown HA1 label " + l);
}

inline std::vector<FieldMatrix> build_a2(const std::string& l, const RatFun& alpha) {
  using namespace sn;
  if (l == "3") return {s(p()), s(p())};
  if (l == "21") return {FieldMatrix::diagonal({p(), mp()}), m2(p(), alpha)};
  if (l == "1^3") return {s(mp()), s(mp())};
  throw RepresentationError("unknown HA2 label " + l);
}

inline std::vector<FieldMatrix> build_b3(const std::string& l, const TableReading& v) {
  using namespace sn;
  const FieldMatrix d21 = FieldMatrix::diagonal({p(), mp()});
  if (l == "3|-") return {s(p()), s(p()), s(q())};
  if (l == "1^3|-") return {s(mp()), s(mp()), s(q())};
  if (l == "-|3") return {s(p()), s(p()), s(mq())};
  if (l == "-|1^3") return {s(mp()), s(mp()), s(mq())};
  if (l == "21|-") return {d21, m2p(), FieldMatrix::diagonal({q(), q()})};
  if (l == "-|21") return {d21, m2p(), FieldMatrix::diagonal({mq(), mq()})};
  const FieldMatrix t1a = FieldMatrix::diagonal({p(), p(), mp()}), t1b = FieldMatrix::diagonal({p(), mp(), mp()});
  const FieldMatrix t2a = direct_sum<RatFun>({s(p()), m2p()}), t2b = direct_sum<RatFun>({m2p(), s(mp())});
  if (l == "2|1") return {t1a, t2a, direct_sum<RatFun>({m_b3(l), s(q())})};
  if (l == "1^2|1") return {t1b, t2b, direct_sum<RatFun>({s(q()), m_b3(l, v)})};
  if (l == "1|2") return {t1a, t2a, direct_sum<RatFun>({m_b3(l), s(mq())})};
  if (l == "1|1^2") return {t1b, t2b, direct_sum<RatFun>({s(mq()), m_b3(l)})};
  throw RepresentationError("unknown HB3 label " + l);
}

inline std::vector<FieldMatrix> build_f4_representative(const std::string& l, const Params& pr, const TableReading& v) {
  using namespace sn;
  auto par = [&](const char* n) { return pr.at(n); };
  const FieldMatrix M = m2p();
  const FieldMatrix P1 = s(p()), Pm = s(mp()), Q1 = s(q()), Qm = s(mq());
  auto D = [](int n, const std::vector<FieldMatrix>& blocks) { return Scatter(n).diag(blocks).done(); };
  if (l == "1") return {P1, P1, Q1, Q1};
  if (l == "5") {
    const FieldMatrix qq = FieldMatrix::diagonal({q(), q()});
    return {FieldMatrix::diagonal({p(), mp()}), M, qq, qq};
  }
  if (l == "7") {
    const FieldMatrix pp = FieldMatrix::diagonal({p(), p()});
    return {pp, pp, FieldMatrix::diagonal({q(), mq()}), m2(q(), par("alpha"))};
  }
  if (l == "9") {
    const FieldMatrix mq_ = m2(q(), par("alpha"));
    return {FieldMatrix::diagonal({p(), mp(), p(), mp()}), D(4, {M, M}),
            FieldMatrix::diagonal({q(), q(), mq(), v.is_literal("phi9-T3") ? Q(-1) : mq()}),
            Scatter(4).place({1, 3}, mq_).place({2, 4}, mq_).done()};
  }
  if (l == "10") {
    const FieldMatrix n = n10(par("theta"), par("eta"), v);
    return {FieldMatrix::diagonal({p(), p(), mp(), p(), p(), mp(), p(), p(), mp()}),
            D(9, {P1, M, P1, M, P1, M}),
            D(9, {Q1, Q1, Q1, m_b3("2|1"), Q1, m_b3("1|2"), v.is_literal("phi10-T3") ? Q1 : Qm}),
            Scatter(9).place({1, 4, 7}, m10(par("xi"), par("eta"))).place({2, 5, 8}, n).place({3, 6, 9}, n).done()};
  }
  if (l == "14") {
    const FieldMatrix m = m14(par("alpha"));
    return {FieldMatrix::diagonal({p(), mp(), mp(), p(), p(), mp()}), D(6, {M, Pm, P1, M}),
            D(6, {Q1, m_b3("1^2|1", v), m_b3("1|2"), Qm}),
            Scatter(6).place(3, mq()).place(4, q()).place({1, 5}, m).place({2, 6}, m).done()};
  }
  if (l == "16") {
    const FieldMatrix t2 = v.is_literal("phi16-T2") ? D(12, {P1, M, M, Pm, P1, M, M - sn::p().inverse() * FieldMatrix::identity(2)})
                               : D(12, {P1, M, M, Pm, P1, M, M, Pm});
    const FieldMatrix n = n16(par("xi"), par("eta"), par("theta"));
    const std::vector<int> second = v.is_literal("phi16-T4-window") ? std::vector<int>{3, 5, 9, 12} : std::vector<int>{3, 5, 9, 11};
    return {FieldMatrix::diagonal({p(), p(), mp(), p(), mp(), mp(), p(), p(), mp(), p(), mp(), mp()}), t2,
            D(12, {m_b3("2|1"), Q1, Q1, m_b3("1^2|1", v), m_b3("1|2"), Qm, Qm, m_b3("1|1^2")}),
            Scatter(12)
                .place({1, 7}, m16(par("xi")))
                .place({6, 12}, m16(par("eta")))
                .place({2, 4, 8, 10}, n)
                .place(second, n)
                .done()};
  }
  if (l == "17") {
    return {FieldMatrix::diagonal({p(), p(), p(), mp()}), D(4, {P1, P1, M}), D(4, {Q1, m_b3("2|1"), Q1}),
            D(4, {m17(par("alpha")), Q1, Q1})};
  }
  if (l == "21") {
    const FieldMatrix m = m21(par("xi"), par("eta"));
    return {FieldMatrix::diagonal({p(), mp(), p(), p(), mp(), p(), mp(), mp()}), D(8, {M, P1, M, M, Pm}),
            D(8, {Q1, Q1, m_b3("2|1"), Q1, Q1, m_b3("1^2|1", v)}),
            Scatter(8).place(3, q()).place(8, q()).place({1, 4, 6}, m).place({2, 5, 7}, m).done()};
  }
  if (l == "23") {
    const RatFun a = par("eta") / ((b2(q()) - RatFun(1)) * par("theta"));
    const FieldMatrix mm = m2(q(), a);
    return {FieldMatrix::diagonal({p(), p(), p(), mp(), p(), p(), mp(), p()}), D(8, {P1, P1, M, P1, M, P1}),
            D(8, {Q1, m_b3("2|1"), Q1, m_b3("1|2"), Qm, Qm}),
            Scatter(8).place({3, 6}, mm).place({4, 7}, mm).place({1, 2, 5, 8}, m23(par("xi"), par("eta"), par("theta"))).done()};
  }
  if (l == "25") {
    const RatFun w = b2(q()) - RatFun(1);
    const FieldMatrix m = m25(par("alpha"), par("beta"), par("xi"), par("eta"), par("theta"));
    return {FieldMatrix::diagonal({p(), mp(), p(), p(), mp(), p(), mp(), mp(), p(), p(), mp(), p(), mp(), mp(), p(), mp()}),
            D(16, {M, P1, M, M, Pm, P1, M, M, Pm, M}),
            D(16, {Q1, Q1, m_b3("2|1"), Q1, Q1, m_b3("1^2|1", v), m_b3("1|2"), Qm, Qm, m_b3("1|1^2"), Qm, Qm}),
            Scatter(16)
                .place({3, 9}, m2(q(), par("alpha") / (w * par("eta"))))
                .place({8, 14}, m2(q(), par("beta") / (w * par("theta"))))
                .place({1, 4, 6, 10, 12, 15}, m)
                .place({2, 5, 7, 11, 13, 16}, m)
                .done()};
  }
  throw RepresentationError("no tabulated HF4 representative " + l);
}

}  // namespace detail

inline Representation apply_orbit_rule(const Representation& rep, const OrbitRule& rule) {
  if (rep.label != rule.source) throw RepresentationError("orbit rule source does not match representation");
  Representation out{rep.algebra, rule.target, {}, rep.params};
  const Permutation pi = Permutation::from_cycles(rep.dim(), rule.cycles);
  for (const auto& g : rep.gens) out.gens.push_back(permutation_conjugate(apply_automorphism(g, rule.alpha_p, rule.alpha_q), pi));
  return out;
}

/// Builds the seminormal representation; free parameters default to 1.
inline Representation build_rep(WeylType t, const std::string& label, const Params& params = {},
                                const TableReading& variant = {}) {
  const auto& labels = rep_labels(t);
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw RepresentationError("unknown label " + label + " for " + algebra_name(t));
  if (t == WeylType::F4) {
    if (auto rule = orbit_rule_for(label)) return apply_orbit_rule(build_rep(t, rule->source, params, variant), *rule);
  }
  Representation r{t, label, {}, detail::resolve_params(t, label, params)};
  switch (t) {
    case WeylType::A1: r.gens = detail::build_a1(label); break;
    case WeylType::A2: r.gens = detail::build_a2(label, r.params.count("alpha") ? r.params.at("alpha") : RatFun(1)); break;
    case WeylType::B3: r.gens = detail::build_b3(label, variant); break;
    case WeylType::F4: r.gens = detail::build_f4_representative(label, r.params, variant); break;
  }
  for (const auto& g : r.gens)
    if (g.rows() != r.gens[0].rows() || !g.square()) throw PlacementError("generator sizes disagree for " + label);
  return r;
}

inline std::vector<Representation> all_representations(WeylType t, const Params& params = {}) {
  std::vector<Representation> v;
  for (const auto& l : rep_labels(t)) v.push_back(build_rep(t, l, params));
  return v;
}

// ---------------------------------------------------------------------------
// Gauge

/// Per-summand scale factors (in restriction order) through which the free
/// parameters enter a representative; the last summand has scale 1.
inline std::vector<RatFun> gauge_scales(const std::string& label, const Params& pr) {
  auto g = [&](const char* n) { return pr.at(n); };
  if (label == "7" || label == "9" || label == "14" || label == "17") return {g("alpha"), RatFun(1)};
  if (label == "10") return {g("xi"), g("theta"), g("eta"), RatFun(1)};
  if (label == "16") return {g("xi") * g("theta"), g("eta"), g("theta"), RatFun(1)};
  if (label == "21") return {g("xi"), g("eta"), RatFun(1)};
  if (label == "23") return {g("xi"), g("eta"), g("theta"), RatFun(1)};
  if (label == "25") return {g("xi"), g("alpha"), g("beta"), g("eta"), g("theta"), RatFun(1)};
  return {};
}

// ---------------------------------------------------------------------------
// Restriction windows

struct Window {
  std::string label;
  int offset = 0;  // 0-based
  int dim = 0;
};

/// Splits the restriction to the next algebra down the chain into contiguous
/// diagonal windows, each equal to the seminormal matrices of a sub-label.
inline std::vector<Window> restrict_blocks(const Representation& rep) {
  const WeylType sub = parent_subgroup(rep.algebra);
  const int ngen = weyl_rank(sub), n = rep.dim();
  std::vector<Representation> subs;
  for (const auto& l : rep_labels(sub)) subs.push_back(build_rep(sub, l));
  auto isolated = [&](int off, int d) {
    for (int g = 0; g < ngen; ++g) {
      const FieldMatrix& m = rep.gens[static_cast<std::size_t>(g)];
      for (int i = off; i < off + d; ++i)
        for (int j = 0; j < n; ++j) {
          if (j >= off && j < off + d) continue;
          if (!m(i, j).is_zero() || !m(j, i).is_zero()) return false;
        }
    }
    return true;
  };
  std::vector<Window> out;
  int pos = 0;
  while (pos < n) {
    bool found = false;
    for (const auto& s : subs) {
      const int d = s.dim();
      if (pos + d > n || !isolated(pos, d)) continue;
      bool eq = true;
      for (int g = 0; g < ngen && eq; ++g) eq = rep.gens[static_cast<std::size_t>(g)].block(pos, pos, d, d) == s.gens[static_cast<std::size_t>(g)];
      if (eq) {
        out.push_back({s.label, pos, d});
        pos += d;
        found = true;
        break;
      }
    }
    if (!found)
      throw SeminormalityError(algebra_name(rep.algebra) + " " + rep.label + ": no seminormal window at position " +
                               std::to_string(pos + 1));
  }
  return out;
}

/// Diagonal conjugating matrix D with build_rep(P2) = D build_rep(P1) D^-1.
inline FieldMatrix gauge_matrix(const std::string& label, const Params& p1, const Params& p2) {
  const std::string rep_label = representative_of(label);
  const Representation base = build_rep(WeylType::F4, rep_label, p1);
  const auto s1 = gauge_scales(rep_label, base.params);
  const auto s2 = gauge_scales(rep_label, build_rep(WeylType::F4, rep_label, p2).params);
  std::vector<RatFun> d;
  if (s1.empty()) {
    d.assign(static_cast<std::size_t>(base.dim()), RatFun(1));
  } else {
    const auto windows = restrict_blocks(base);
    if (windows.size() != s1.size()) throw SeminormalityError("gauge vector does not match restriction");
    for (std::size_t w = 0; w < windows.size(); ++w)
      for (int i = 0; i < windows[w].dim; ++i) d.push_back(s2[w] / s1[w]);
  }
  FieldMatrix D = FieldMatrix::diagonal(d);
  if (auto rule = orbit_rule_for(label))
    D = permutation_conjugate(apply_automorphism(D, rule->alpha_p, rule->alpha_q), Permutation::from_cycles(D.rows(), rule->cycles));
  return D;
}

// ---------------------------------------------------------------------------
// Central elements

/// D1 = T1, D2 = (T1T2T1)^2, D3 = (T3T2T1)^3, D4 = (T4 D3)^3 D2^-1; only the
/// ones defined for the algebra are returned.
inline std::vector<FieldMatrix> d_matrices(const Representation& r) {
  std::vector<FieldMatrix> d;
  const int n = weyl_rank(r.algebra);
  d.push_back(r.T(1));
  if (n >= 2) d.push_back((r.T(1) * r.T(2) * r.T(1)).pow(2));
  if (n >= 3) d.push_back((r.T(3) * r.T(2) * r.T(1)).pow(3));
  if (n >= 4) d.push_back((r.T(4) * d[2]).pow(3) * inverse(d[1]));
  return d;
}

/// Tabulated diagonals of D1, D2, D3 and the scalar of D4 for the HF4
/// representatives.
struct DTable {
  std::vector<std::string> d1, d2, d3;
  std::string d4;
};

inline const std::map<std::string, DTable>& d_table_source() {
  static const std::map<std::string, DTable> t{
      {"1", {{"p"}, {"p^6"}, {"p^6*q^3"}, "p^12*q^12"}},
      {"5", {{"p", "-p^-1"}, {"1", "1"}, {"q^3", "q^3"}, "q^12"}},
      {"7", {{"p", "p"}, {"p^6", "p^6"}, {"p^6*q^3", "-p^6*q^-3"}, "p^12"}},
      {"9", {{"p", "-p^-1", "p", "-p^-1"}, {"1", "1", "1", "1"}, {"q^3", "q^3", "-q^-3", "-q^-3"}, "1"}},
      {"10",
       {{"p", "p", "-p^-1", "p", "p", "-p^-1", "p", "p", "-p^-1"},
        {"p^6", "1", "1", "p^6", "1", "1", "p^6", "1", "1"},
        {"p^6*q^3", "q^3", "q^3", "-p^2*q", "-p^2*q", "-p^2*q", "p^2*q^-1", "p^2*q^-1", "p^2*q^-1"},
        "p^4*q^4"}},
      {"14",
       {{"p", "-p^-1", "-p^-1", "p", "p", "-p^-1"},
        {"1", "1", "p^-6", "p^6", "1", "1"},
        {"-p^-2*q", "-p^-2*q", "-p^-2*q", "p^2*q^-1", "p^2*q^-1", "p^2*q^-1"},
        "1"}},
      {"16",
       {{"p", "p", "-p^-1", "p", "-p^-1", "-p^-1", "p", "p", "-p^-1", "p", "-p^-1", "-p^-1"},
        {"p^6", "1", "1", "1", "1", "p^-6", "p^6", "1", "1", "1", "1", "p^-6"},
        {"-p^2*q", "-p^2*q", "-p^2*q", "-p^-2*q", "-p^-2*q", "-p^-2*q", "p^2*q^-1", "p^2*q^-1", "p^2*q^-1",
         "p^-2*q^-1", "p^-2*q^-1", "p^-2*q^-1"},
        "1"}},
      {"17",
       {{"p", "p", "p", "-p^-1"}, {"p^6", "p^6", "1", "1"}, {"p^6*q^3", "-p^2*q", "-p^2*q", "-p^2*q"}, "-p^6*q^6"}},
      {"21",
       {{"p", "-p^-1", "p", "p", "-p^-1", "p", "-p^-1", "-p^-1"},
        {"1", "1", "p^6", "1", "1", "1", "1", "p^-6"},
        {"q^3", "q^3", "-p^2*q", "-p^2*q", "-p^2*q", "-p^-2*q", "-p^-2*q", "-p^-2*q"},
        "-q^6"}},
      {"23",
       {{"p", "p", "p", "-p^-1", "p", "p", "-p^-1", "p"},
        {"p^6", "p^6", "1", "1", "p^6", "1", "1", "p^6"},
        {"p^6*q^3", "-p^2*q", "-p^2*q", "-p^2*q", "p^2*q^-1", "p^2*q^-1", "p^2*q^-1", "-p^6*q^-3"},
        "-p^6"}},
      {"25",
       {{"p", "-p^-1", "p", "p", "-p^-1", "p", "-p^-1", "-p^-1", "p", "p", "-p^-1", "p", "-p^-1", "-p^-1", "p", "-p^-1"},
        {"1", "1", "p^6", "1", "1", "1", "1", "p^-6", "p^6", "1", "1", "1", "1", "p^-6", "1", "1"},
        {"q^3", "q^3", "-p^2*q", "-p^2*q", "-p^2*q", "-p^-2*q", "-p^-2*q", "-p^-2*q", "p^2*q^-1", "p^2*q^-1",
         "p^2*q^-1", "p^-2*q^-1", "p^-2*q^-1", "p^-2*q^-1", "-q^-3", "q^-3"},
        "-1"}},
  };
  return t;
}

/// Expected D1..D4 for any HF4 label, transported along the orbit rules.
inline std::vector<FieldMatrix> tabulated_d_matrices(const std::string& label, const TableReading& v = {}) {
  const std::string src = representative_of(label);
  DTable t = d_table_source().at(src);
  if (src == "25" && !v.is_literal("phi25-D3")) t.d3.back() = "-q^-3";
  auto diag = [](const std::vector<std::string>& e) {
    std::vector<RatFun> d;
    for (const auto& s : e) d.push_back(parse_ratfun(s));
    return FieldMatrix::diagonal(d);
  };
  std::vector<FieldMatrix> out{diag(t.d1), diag(t.d2), diag(t.d3)};
  out.push_back(parse_ratfun(t.d4) * FieldMatrix::identity(static_cast<int>(t.d1.size())));
  if (auto rule = orbit_rule_for(label)) {
    const Permutation pi = Permutation::from_cycles(out[0].rows(), rule->cycles);
    for (auto& m : out) m = permutation_conjugate(apply_automorphism(m, rule->alpha_p, rule->alpha_q), pi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Specialization and JSON

inline std::vector<QMatrix> specialize(const Representation& r, const mpq_class& p0, const mpq_class& q0) {
  std::vector<QMatrix> out;
  for (const auto& g : r.gens) out.push_back(evaluate(g, p0, q0));
  return out;
}

inline nlohmann::json to_json(const Representation& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = to_json(v);
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : r.gens) gens.push_back(to_json(g));
  return {{"algebra", algebra_name(r.algebra)}, {"label", r.label}, {"params", params}, {"generators", gens}};
}

inline Representation representation_from_json(const nlohmann::json& j) {
  Representation r;
  r.algebra = algebra_from_string(j.at("algebra").get<std::string>());
  r.label = j.at("label").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = ratfun_from_json(v);
  for (const auto& g : j.at("generators")) r.gens.push_back(matrix_from_json(g));
  return r;
}

inline bool operator==(const Representation& a, const Representation& b) {
  return a.algebra == b.algebra && a.label == b.label && a.params == b.params && a.gens == b.gens;
}

/// File name stem used for golden representation files, e.g. "hf4-10".
inline std::string rep_file_stem(const Representation& r) {
  std::string a = algebra_name(r.algebra);
  std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string l;
  for (char c : r.label) l += (c == '|' ? '_' : c == '^' ? 'e' : c == '-' ? 'o' : c);
  return a + "-" + l;
}

}  // namespace hecke

#endif  // HECKE_SEMINORMAL_HPP
