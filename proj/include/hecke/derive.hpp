#ifndef HECKE_DERIVE_HPP
#define HECKE_DERIVE_HPP

// Recomputes phi^k(T4) for the HF4 representations from character data and
// the HB3 part of the representation. phi^k(T4) commutes with HA2, so after
// grouping basis vectors by HA2-isotypic type it is a direct sum of blocks
// T_lambda (x) Id; the diagonals of T_lambda come from traces of T_lambda D^j,
// the products t_ij t_ji and the ratios t_ij t_jk / t_ik from linear systems,
// and the remaining normalisations from the braid relation with T3.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/seminormal.hpp"

namespace hecke {

class DerivationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline RatFun from_rational(const mpq_class& x) {
  return RatFun::fraction(LaurentPoly(mpz_class(x.get_num())), LaurentPoly(mpz_class(x.get_den())));
}

// ---------------------------------------------------------------------------
// Central idempotents of HA2

/// An element of HA2 as coefficients over T_w, w in the order of the WA2
/// element table.
struct HA2Element {
  std::vector<RatFun> coeff;
};

inline const std::vector<std::string>& ha2_labels() { return labels_for(WeylType::A2); }

/// phi(sum c_w T_w) for matrices T1, T2 of any representation.
inline FieldMatrix apply_ha2(const HA2Element& z, const FieldMatrix& t1, const FieldMatrix& t2) {
  const auto& g = weyl_group(WeylType::A2);
  FieldMatrix out(t1.rows(), t1.cols());
  for (int w = 0; w < g.size(); ++w) {
    const RatFun& c = z.coeff[static_cast<std::size_t>(w)];
    if (c.is_zero()) continue;
    FieldMatrix m = FieldMatrix::identity(t1.rows());
    for (int x : g.word(w)) m = m * (x == 1 ? t1 : t2);
    out = out + c * m;
  }
  return out;
}

/// z_lambda for each partition of 3, from phi^mu(z_lambda) = delta Id.
inline const std::map<std::string, HA2Element>& central_idempotents_ha2() {
  static const std::map<std::string, HA2Element> z = [] {
    const auto& g = weyl_group(WeylType::A2);
    const int n = g.size();
    std::vector<Representation> reps;
    for (const auto& l : ha2_labels()) reps.push_back(build_rep(WeylType::A2, l));
    std::vector<std::vector<FieldMatrix>> images;  // per rep, per w
    for (const auto& r : reps) {
      std::vector<FieldMatrix> v;
      for (int w = 0; w < n; ++w) {
        FieldMatrix m = FieldMatrix::identity(r.dim());
        for (int x : g.word(w)) m = m * r.T(x);
        v.push_back(m);
      }
      images.push_back(v);
    }
    FieldMatrix a(n, n);
    int row = 0;
    for (const auto& r : reps)
      for (int i = 0; i < r.dim(); ++i)
        for (int j = 0; j < r.dim(); ++j, ++row)
          for (int w = 0; w < n; ++w) a(row, w) = images[static_cast<std::size_t>(&r - reps.data())][static_cast<std::size_t>(w)](i, j);
    if (row != n) throw DerivationError("HA2 idempotent system is not square");
    FieldMatrix b(n, static_cast<int>(reps.size()));
    row = 0;
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (int i = 0; i < reps[k].dim(); ++i)
        for (int j = 0; j < reps[k].dim(); ++j, ++row)
          if (i == j) b(row, static_cast<int>(k)) = RatFun(1);
    if (rank(a) < n) throw DerivationError("HA2 idempotent system is singular");
    const auto x = solve(a, b);
    std::map<std::string, HA2Element> out;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      HA2Element e;
      for (int w = 0; w < n; ++w) e.coeff.push_back((*x)(w, static_cast<int>(k)));
      out[reps[k].label] = e;
    }
    return out;
  }();
  return z;
}

// ---------------------------------------------------------------------------
// Block decomposition

struct DerivationState {
  std::string k;
  std::string lambda;
  int m = 0;
  /// positions[a][b]: 0-based basis index of copy a, component b of phi^lambda
  std::vector<std::vector<int>> positions;
  std::vector<RatFun> d;  // diagonal of D_lambda
  RatFun c;               // c(k) c(lambda)^2
  std::map<int, RatFun> traces;  // j -> Tr(T D^j), j = -2..2
  RatFun trace_tdtd;             // Tr((TD)^2)
  std::vector<RatFun> diagonal;
  std::map<std::pair<int, int>, RatFun> u;            // i < j, 0-based
  std::map<std::array<int, 3>, RatFun> v;             // (i, j, k) distinct, 0-based
  std::vector<std::vector<RatFun>> u_nullspace;       // free directions when the u system is underdetermined
  int u_rank = 0;
  std::vector<int> summand;  // HB3 summand (restriction order) of each copy
};

/// T_lambda as it sits inside a given phi^k(T4).
inline FieldMatrix block_of(const FieldMatrix& t4, const DerivationState& s) {
  FieldMatrix b(s.m, s.m);
  for (int a = 0; a < s.m; ++a)
    for (int c = 0; c < s.m; ++c) b(a, c) = t4(s.positions[static_cast<std::size_t>(a)][0], s.positions[static_cast<std::size_t>(c)][0]);
  return b;
}

/// Checks that t4 has the form sum_lambda T_lambda (x) Id on the given grouping.
inline bool is_block_form(const FieldMatrix& t4, const std::vector<DerivationState>& states) {
  std::vector<std::pair<int, int>> where(static_cast<std::size_t>(t4.rows()), {-1, -1});  // (state, component)
  std::vector<int> copy_of(static_cast<std::size_t>(t4.rows()), -1);
  for (std::size_t s = 0; s < states.size(); ++s)
    for (int a = 0; a < states[s].m; ++a)
      for (std::size_t b = 0; b < states[s].positions[static_cast<std::size_t>(a)].size(); ++b) {
        const int i = states[s].positions[static_cast<std::size_t>(a)][b];
        where[static_cast<std::size_t>(i)] = {static_cast<int>(s), static_cast<int>(b)};
        copy_of[static_cast<std::size_t>(i)] = a;
      }
  for (int i = 0; i < t4.rows(); ++i)
    for (int j = 0; j < t4.cols(); ++j) {
      const auto wi = where[static_cast<std::size_t>(i)], wj = where[static_cast<std::size_t>(j)];
      if (wi != wj) {
        if (!t4(i, j).is_zero()) return false;
        continue;
      }
      const auto& st = states[static_cast<std::size_t>(wi.first)];
      const int a = copy_of[static_cast<std::size_t>(i)], c = copy_of[static_cast<std::size_t>(j)];
      if (!(t4(i, j) == t4(st.positions[static_cast<std::size_t>(a)][0], st.positions[static_cast<std::size_t>(c)][0]))) return false;
    }
  return true;
}

/// Groups the basis of phi^k by HA2-isotypic type: (3) blocks, then (21),
/// then (1^3); copies in order of first position. Only T1, T2, T3 are used.
inline std::vector<DerivationState> block_decompose(const Representation& rep) {
  if (rep.algebra != WeylType::F4) throw DerivationError("block decomposition needs an HF4 representation");
  const int n = rep.dim();
  const auto& zs = central_idempotents_ha2();
  const auto windows = restrict_blocks(rep);
  std::vector<int> summand_of(static_cast<std::size_t>(n));
  for (std::size_t w = 0; w < windows.size(); ++w)
    for (int i = 0; i < windows[w].dim; ++i) summand_of[static_cast<std::size_t>(windows[w].offset + i)] = static_cast<int>(w);

  const FieldMatrix d3 = (rep.T(3) * rep.T(2) * rep.T(1)).pow(3);
  if (!d3.is_diagonal()) throw SeminormalityError(rep.label + ": D3 is not diagonal");
  const Monomial ck = central_constant(WeylType::F4, rep.label);

  std::vector<DerivationState> out;
  for (const char* lam : {"3", "21", "1^3"}) {
    const FieldMatrix z = apply_ha2(zs.at(lam), rep.T(1), rep.T(2));
    if (!z.is_diagonal()) throw SeminormalityError(rep.label + ": idempotent image is not diagonal");
    std::vector<int> pos;
    for (int i = 0; i < n; ++i) {
      if (z(i, i) == RatFun(1)) pos.push_back(i);
      else if (!z(i, i).is_zero()) throw SeminormalityError(rep.label + ": idempotent image is not a 0/1 matrix");
    }
    if (pos.empty()) continue;
    const Representation a2 = build_rep(WeylType::A2, lam);
    const int dl = a2.dim();
    // components under the off-diagonal pattern of T1, T2
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> groups;
    for (int i : pos) {
      if (comp[static_cast<std::size_t>(i)] >= 0) continue;
      std::vector<int> g{i}, stack{i};
      comp[static_cast<std::size_t>(i)] = static_cast<int>(groups.size());
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : pos) {
          if (comp[static_cast<std::size_t>(y)] >= 0) continue;
          bool link = false;
          for (int gen = 1; gen <= 2; ++gen) link = link || !rep.T(gen)(x, y).is_zero() || !rep.T(gen)(y, x).is_zero();
          if (!link) continue;
          comp[static_cast<std::size_t>(y)] = static_cast<int>(groups.size());
          g.push_back(y);
          stack.push_back(y);
        }
      }
      std::sort(g.begin(), g.end());
      if (static_cast<int>(g.size()) != dl) throw SeminormalityError(rep.label + ": HA2 component of wrong size");
      // order the component so that it carries exactly phi^lambda
      bool ok = false;
      do {
        ok = true;
        for (int gen = 1; gen <= 2 && ok; ++gen)
          for (int r = 0; r < dl && ok; ++r)
            for (int c = 0; c < dl && ok; ++c) ok = rep.T(gen)(g[static_cast<std::size_t>(r)], g[static_cast<std::size_t>(c)]) == a2.T(gen)(r, c);
      } while (!ok && std::next_permutation(g.begin(), g.end()));
      if (!ok) throw SeminormalityError(rep.label + ": HA2 component is not in seminormal form");
      groups.push_back(g);
    }
    std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end()); });
    DerivationState s;
    s.k = rep.label;
    s.lambda = lam;
    s.m = static_cast<int>(groups.size());
    s.positions = groups;
    for (const auto& g : groups) {
      const RatFun& x = d3(g[0], g[0]);
      for (int i : g)
        if (!(d3(i, i) == x)) throw SeminormalityError(rep.label + ": D3 is not constant on an HA2 component");
      s.d.push_back(x);
      s.summand.push_back(summand_of[static_cast<std::size_t>(g[0])]);
    }
    for (std::size_t i = 0; i < s.d.size(); ++i)
      for (std::size_t j = i + 1; j < s.d.size(); ++j)
        if (s.d[i] == s.d[j]) throw DerivationError(rep.label + " " + lam + ": coincident D entries");
    s.c = (ck * central_constant(WeylType::A2, lam).pow(2)).to_ratfun();
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces from character values

/// The three character sums (1/6) sum_w chi^lambda(w^-1) chi^k(w x) for
/// x = s4, s4 w03, (s4 w03)^2, together with the multiplicity sum (x = 1).
struct CharacterSums {
  mpq_class mult, s4, s4w, s4w2;
};

inline CharacterSums character_sums(const std::string& k, const std::string& lambda) {
  const auto& f4 = weyl_group(WeylType::F4);
  const auto& a2 = weyl_group(WeylType::A2);
  const auto& b3 = weyl_group(WeylType::B3);
  const auto& tf = character_table(WeylType::F4);
  const auto& ta = character_table(WeylType::A2);
  const int ki = tf.index_of(k), li = ta.index_of(lambda);
  const int s4 = f4.generator(3);
  const int w03 = f4.from_word(b3.word(b3.longest()));
  const int x1 = f4.mul(s4, w03), x2 = f4.mul(x1, x1);
  mpq_class acc[4] = {0, 0, 0, 0};
  for (int w = 0; w < a2.size(); ++w) {
    const long cl = ta.value(li, a2.class_of(a2.inv(w)));
    const int wf = f4.from_word(a2.word(w));
    const int els[4] = {wf, f4.mul(wf, s4), f4.mul(wf, x1), f4.mul(wf, x2)};
    for (int i = 0; i < 4; ++i) acc[i] += cl * tf.value(ki, f4.class_of(els[i]));
  }
  CharacterSums r{acc[0] / 6, acc[1] / 6, acc[2] / 6, acc[3] / 6};
  for (mpq_class* x : {&r.mult, &r.s4, &r.s4w, &r.s4w2}) x->canonicalize();
  return r;
}

/// Fills traces Tr(T D^j), j = -2..2, and Tr((TD)^2).
inline void trace_data(DerivationState& s) {
  const CharacterSums cs = character_sums(s.k, s.lambda);
  if (cs.mult != s.m) throw DerivationError(s.k + " " + s.lambda + ": multiplicity from characters differs from block size");
  const RatFun qq = Q() - Q(-1);
  // eigenvalues q and -q^-1 with multiplicities t1, t2
  const mpq_class t1 = (cs.mult + cs.s4) / 2, t2 = (cs.mult - cs.s4) / 2;
  if (t1.get_den() != 1 || t2.get_den() != 1 || t1 < 0 || t2 < 0) throw DerivationError(s.k + " " + s.lambda + ": eigenvalue multiplicities are not natural numbers");
  const RatFun trT = from_rational(t1) * Q() - from_rational(t2) * Q(-1);

  const auto& tf = character_table(WeylType::F4);
  const auto& f4 = weyl_group(WeylType::F4);
  const long chi_w0 = tf.value(tf.index_of(s.k), f4.class_of(f4.longest()));
  if (chi_w0 == 0) throw DerivationError(s.k + ": character vanishes on the longest element");
  const long deg = tf.degree(tf.index_of(s.k));
  const Monomial ck = central_constant(WeylType::F4, s.k);
  const Monomial cl = central_constant(WeylType::A2, s.lambda);
  // real cube root of c(k) c(lambda)^2; at p = q = 1 it is the sign of chi^k(w0)
  const Monomial root = ck.pow(1, 3) * cl.pow(2, 3);
  // a root with fractional exponents may only occur with a vanishing sum
  auto scaled = [&](const mpq_class& coef, const Monomial& mono) {
    if (coef == 0) return RatFun();
    if (!mono.is_integral()) throw DerivationError(s.k + " " + s.lambda + ": fractional exponent in a trace");
    return from_rational(coef) * mono.to_ratfun();
  };
  const mpq_class eta = cs.s4w * deg / chi_w0;
  const RatFun trTD = scaled(eta, root);
  const RatFun trTDTD = scaled(cs.s4w2, root.pow(2));

  RatFun trDinv, trDinv2, trD;
  for (const RatFun& x : s.d) {
    trD += x;
    trDinv += x.inverse();
    trDinv2 += x.inverse().pow(2);
  }
  const RatFun c = s.c, ci = s.c.inverse();
  s.traces[0] = trT;
  s.traces[1] = trTD;
  s.traces[-1] = qq * trDinv + ci * trTDTD;
  s.traces[2] = c * trDinv - qq * trTDTD;
  s.traces[-2] = qq * trDinv2 + ci * qq * trTD + ci * trD;
  s.trace_tdtd = trTDTD;
}

// ---------------------------------------------------------------------------
// Diagonal entries

/// Laurent polynomial in D with coefficients in Q(p,q): exponent -> coefficient.
using DPoly = std::map<int, RatFun>;

inline DPoly dpoly_mul(const DPoly& a, const DPoly& b) {
  DPoly r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  return r;
}

/// Split set for index i: the ceil((r-1)/2) smallest indices other than i.
inline std::vector<int> default_split(int r, int i) {
  std::vector<int> s;
  const int want = r / 2;  // ceil((r-1)/2)
  for (int j = 0; j < r && static_cast<int>(s.size()) < want; ++j)
    if (j != i) s.push_back(j);
  return s;
}

/// E_ii as a Laurent polynomial in D: factors (D - d_j)/(d_i - d_j) for j in
/// the split set, (D^-1 - d_j^-1)/(d_i^-1 - d_j^-1) for the other j != i.
inline DPoly projector(const std::vector<RatFun>& d, int i, const std::vector<int>& split) {
  DPoly e{{0, RatFun(1)}};
  for (int j = 0; j < static_cast<int>(d.size()); ++j) {
    if (j == i) continue;
    const RatFun& di = d[static_cast<std::size_t>(i)];
    const RatFun& dj = d[static_cast<std::size_t>(j)];
    if (std::find(split.begin(), split.end(), j) != split.end()) {
      const RatFun k = (di - dj).inverse();
      e = dpoly_mul(e, {{1, k}, {0, -dj * k}});
    } else {
      const RatFun k = (di.inverse() - dj.inverse()).inverse();
      e = dpoly_mul(e, {{-1, k}, {0, -dj.inverse() * k}});
    }
  }
  return e;
}

inline RatFun interpolate_diagonal(const DerivationState& s, int i, const std::vector<int>& split) {
  RatFun t;
  for (const auto& [j, x] : projector(s.d, i, split)) {
    auto it = s.traces.find(j);
    if (it == s.traces.end()) throw DerivationError("trace of T D^" + std::to_string(j) + " is not available");
    t += x * it->second;
  }
  return t;
}

/// Diagonals of all blocks of phi^k(T4). Blocks of size up to 5 use the
/// projector formula; a block of size 6 is solved from the five trace
/// relations and the vanishing trace of the Coxeter element T4T3T2T1.
inline void diagonal_entries(std::vector<DerivationState>& states, const Representation& rep) {
  std::vector<DerivationState*> big;
  for (auto& s : states) {
    if (s.m > 5) {
      big.push_back(&s);
      continue;
    }
    s.diagonal.clear();
    for (int i = 0; i < s.m; ++i) s.diagonal.push_back(interpolate_diagonal(s, i, default_split(s.m, i)));
  }
  if (big.empty()) return;
  if (big.size() > 1) throw DerivationError(rep.label + ": more than one block of size above 5");
  DerivationState& s = *big[0];
  // Coxeter trace: sum_i T4_ii T3_ii T2_ii T1_ii = 0 (its value at p = q = 1)
  const auto& tf = character_table(WeylType::F4);
  const auto& f4 = weyl_group(WeylType::F4);
  if (tf.value(tf.index_of(rep.label), f4.class_of(f4.from_word({4, 3, 2, 1}))) != 0)
    throw DerivationError(rep.label + ": Coxeter trace is not zero");
  auto prod = [&](int i) { return rep.T(3)(i, i) * rep.T(2)(i, i) * rep.T(1)(i, i); };
  RatFun known;
  for (const auto& o : states) {
    if (&o == &s) continue;
    for (int a = 0; a < o.m; ++a)
      for (int i : o.positions[static_cast<std::size_t>(a)]) known += o.diagonal[static_cast<std::size_t>(a)] * prod(i);
  }
  const int m = s.m;
  FieldMatrix A(6, m), b(6, 1);
  for (int j = -2; j <= 2; ++j) {
    for (int a = 0; a < m; ++a) A(j + 2, a) = s.d[static_cast<std::size_t>(a)].pow(j);
    b(j + 2, 0) = s.traces.at(j);
  }
  for (int a = 0; a < m; ++a)
    for (int i : s.positions[static_cast<std::size_t>(a)]) A(5, a) += prod(i);
  b(5, 0) = -known;
  if (rank(A) < m) throw DerivationError(rep.label + " " + s.lambda + ": diagonal system is rank deficient");
  const auto x = solve(A, b);
  if (!x) throw DerivationError(rep.label + " " + s.lambda + ": diagonal system is inconsistent");
  s.diagonal.clear();
  for (int a = 0; a < m; ++a) s.diagonal.push_back((*x)(a, 0));
}

// ---------------------------------------------------------------------------
// Off-diagonal entries

namespace detail {

inline std::vector<std::pair<int, int>> pair_index(int m) {
  std::vector<std::pair<int, int>> v;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) v.push_back({i, j});
  return v;
}

}  // namespace detail

/// Linear system for the products u_ij = t_ij t_ji (i < j): for each i,
///   sum_j u_ij       = -t_ii^2 + (q - q^-1) t_ii + 1
///   sum_j u_ij d_j   = -t_ii^2 d_i + c t_ii d_i^-2 - c (q - q^-1) d_i^-2
/// Rows are (a) for every i, then (b) for every i; the last column is the
/// right-hand side.
inline FieldMatrix u_system(const std::vector<RatFun>& t, const std::vector<RatFun>& d, const RatFun& c) {
  const int m = static_cast<int>(d.size());
  const auto pairs = detail::pair_index(m);
  const int n = static_cast<int>(pairs.size());
  const RatFun qq = Q() - Q(-1);
  FieldMatrix a(2 * m, n + 1);
  for (int e = 0; e < n; ++e) {
    const auto [i, j] = pairs[static_cast<std::size_t>(e)];
    a(i, e) = RatFun(1);
    a(j, e) = RatFun(1);
    a(m + i, e) = d[static_cast<std::size_t>(j)];
    a(m + j, e) = d[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < m; ++i) {
    const RatFun& ti = t[static_cast<std::size_t>(i)];
    const RatFun& di = d[static_cast<std::size_t>(i)];
    const RatFun di2 = di.pow(-2);
    a(i, n) = -ti * ti + qq * ti + RatFun(1);
    a(m + i, n) = -ti * ti * di + c * ti * di2 - c * qq * di2;
  }
  return a;
}

/// Block in the gauge t_0j = 1 (0-based), from its diagonal, the u_ij and the
/// ratios x_jk = v_0jk = t_jk for j, k >= 1.
inline FieldMatrix normalised_block(const DerivationState& s, const std::map<std::pair<int, int>, RatFun>& x) {
  FieldMatrix b(s.m, s.m);
  for (int i = 0; i < s.m; ++i) b(i, i) = s.diagonal[static_cast<std::size_t>(i)];
  for (int j = 1; j < s.m; ++j) {
    b(0, j) = RatFun(1);
    b(j, 0) = s.u.at({0, j});
  }
  for (const auto& [jk, val] : x) b(jk.first, jk.second) = val;
  return b;
}

/// v_ijk = t_ij t_jk / t_ik for all distinct triples.
inline std::map<std::array<int, 3>, RatFun> v_values(const FieldMatrix& b) {
  std::map<std::array<int, 3>, RatFun> v;
  const int m = b.rows();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (i != j && j != k && i != k) v[{i, j, k}] = b(i, j) * b(j, k) / b(i, k);
  return v;
}

/// Residuals of the four entrywise identities for products and ratios:
/// zero for every (i, k) exactly when T^2 = (q - q^-1) T + 1 and
/// T D T = c D^-1 T^-1 D^-1 hold entrywise. Off-diagonal zero entries are
/// reported as a failure since the ratios are then undefined.
inline std::vector<std::string> offdiag_identity_failures(const FieldMatrix& b, const std::vector<RatFun>& d, const RatFun& c) {
  std::vector<std::string> bad;
  const int m = b.rows();
  const RatFun qq = Q() - Q(-1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && b(i, j).is_zero()) return {"zero off-diagonal entry"};
  for (int i = 0; i < m; ++i) {
    const RatFun& ti = b(i, i);
    const RatFun& di = d[static_cast<std::size_t>(i)];
    RatFun sa, sb;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const RatFun u = b(i, j) * b(j, i);
      sa += u;
      sb += u * d[static_cast<std::size_t>(j)];
    }
    if (!(sa == -ti * ti + qq * ti + RatFun(1))) bad.push_back("(a) i=" + std::to_string(i + 1));
    if (!(sb == -ti * ti * di + c * ti * di.pow(-2) - c * qq * di.pow(-2))) bad.push_back("(b) i=" + std::to_string(i + 1));
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      const RatFun& tk = b(k, k);
      const RatFun& dk = d[static_cast<std::size_t>(k)];
      RatFun sc, sd;
      for (int j = 0; j < m; ++j) {
        if (j == i || j == k) continue;
        const RatFun v = b(i, j) * b(j, k) / b(i, k);
        sc += v;
        sd += v * d[static_cast<std::size_t>(j)];
      }
      if (!(sc == -ti - tk + qq)) bad.push_back("(c) i=" + std::to_string(i + 1) + " k=" + std::to_string(k + 1));
      if (!(sd == -ti * di - tk * dk + c * (di * dk).inverse())) bad.push_back("(d) i=" + std::to_string(i + 1) + " k=" + std::to_string(k + 1));
    }
  }
  return bad;
}

/// Solves for u (and, when u is determined, for the ratios v through the
/// equations that are linear in v_0jk). An underdetermined u system is
/// recorded as a particular solution plus a nullspace basis.
inline void offdiag_systems(DerivationState& s) {
  const int m = s.m;
  s.u.clear();
  s.v.clear();
  s.u_nullspace.clear();
  if (m < 2) return;
  const auto pairs = detail::pair_index(m);
  const int n = static_cast<int>(pairs.size());
  const FieldMatrix aug = u_system(s.diagonal, s.d, s.c);
  const FieldMatrix a = aug.block(0, 0, 2 * m, n), rhs = aug.block(0, n, 2 * m, 1);
  s.u_rank = rank(a);
  const auto x = solve(a, rhs);
  if (!x) throw DerivationError(s.k + " " + s.lambda + ": the system for t_ij t_ji is inconsistent");
  for (int e = 0; e < n; ++e) s.u[pairs[static_cast<std::size_t>(e)]] = (*x)(e, 0);
  if (s.u_rank < n) {
    s.u_nullspace = nullspace(a);
    return;
  }
  for (const auto& [p, val] : s.u)
    if (val.is_zero()) throw DerivationError(s.k + " " + s.lambda + ": vanishing product t_ij t_ji");
  if (m == 2) {
    s.v.clear();
    return;
  }
  // unknowns x_jk = v_0jk, j != k in 1..m-1
  std::vector<std::pair<int, int>> unk;
  for (int j = 1; j < m; ++j)
    for (int k = 1; k < m; ++k)
      if (j != k) unk.push_back({j, k});
  auto col = [&](int j, int k) {
    return static_cast<int>(std::find(unk.begin(), unk.end(), std::make_pair(j, k)) - unk.begin());
  };
  auto U = [&](int i, int j) { return s.u.at({std::min(i, j), std::max(i, j)}); };
  const RatFun qq = Q() - Q(-1);
  const int nu = static_cast<int>(unk.size());
  FieldMatrix sys(4 * (m - 1), nu + 1);
  int row = 0;
  const RatFun& t0 = s.diagonal[0];
  const RatFun& d0 = s.d[0];
  for (int k = 1; k < m; ++k, row += 2) {
    // pair (0, k): v_0jk = x_jk
    const RatFun& tk = s.diagonal[static_cast<std::size_t>(k)];
    const RatFun& dk = s.d[static_cast<std::size_t>(k)];
    for (int j = 1; j < m; ++j) {
      if (j == k) continue;
      sys(row, col(j, k)) = RatFun(1);
      sys(row + 1, col(j, k)) = s.d[static_cast<std::size_t>(j)];
    }
    sys(row, nu) = -t0 - tk + qq;
    sys(row + 1, nu) = -t0 * d0 - tk * dk + s.c * (d0 * dk).inverse();
  }
  for (int i = 1; i < m; ++i, row += 2) {
    // pair (i, 0): v_ij0 = x_ij u_0j / u_0i
    const RatFun& ti = s.diagonal[static_cast<std::size_t>(i)];
    const RatFun& di = s.d[static_cast<std::size_t>(i)];
    for (int j = 1; j < m; ++j) {
      if (j == i) continue;
      const RatFun f = U(0, j) / U(0, i);
      sys(row, col(i, j)) = f;
      sys(row + 1, col(i, j)) = f * s.d[static_cast<std::size_t>(j)];
    }
    sys(row, nu) = -ti - t0 + qq;
    sys(row + 1, nu) = -ti * di - t0 * d0 + s.c * (di * d0).inverse();
  }
  const FieldMatrix A = sys.block(0, 0, sys.rows(), nu), B = sys.block(0, nu, sys.rows(), 1);
  if (rank(A) < nu) throw DerivationError(s.k + " " + s.lambda + ": the linear ratio equations do not determine v");
  const auto y = solve(A, B);
  if (!y) throw DerivationError(s.k + " " + s.lambda + ": the ratio equations are inconsistent");
  std::map<std::pair<int, int>, RatFun> xs;
  for (int e = 0; e < nu; ++e) xs[unk[static_cast<std::size_t>(e)]] = (*y)(e, 0);
  const FieldMatrix b = normalised_block(s, xs);
  if (!offdiag_identity_failures(b, s.d, s.c).empty())
    throw DerivationError(s.k + " " + s.lambda + ": the derived ratios violate the product or ratio identities");
  s.v = v_values(b);
}

/// Block with t_0j = 1 built from derived data (requires u and v).
inline FieldMatrix normalised_block(const DerivationState& s) {
  std::map<std::pair<int, int>, RatFun> x;
  for (int j = 1; j < s.m; ++j)
    for (int k = 1; k < s.m; ++k)
      if (j != k) x[{j, k}] = s.v.at({0, j, k});
  return normalised_block(s, x);
}

/// True when the u_ij read off a block satisfy the (possibly underdetermined)
/// linear system for the products.
inline bool u_values_solve_system(const DerivationState& s, const FieldMatrix& block) {
  if (s.m < 2) return true;
  const auto pairs = detail::pair_index(s.m);
  const int n = static_cast<int>(pairs.size());
  const FieldMatrix aug = u_system(s.diagonal, s.d, s.c);
  for (int r = 0; r < aug.rows(); ++r) {
    RatFun lhs;
    for (int e = 0; e < n; ++e) {
      const auto [i, j] = pairs[static_cast<std::size_t>(e)];
      if (!aug(r, e).is_zero()) lhs += aug(r, e) * block(i, j) * block(j, i);
    }
    if (!(lhs == aug(r, n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Assembly

/// Edge of the gauge graph: copy a of block `state` joined to copy 0; it links
/// the HB3 summands of those copies and carries the entry t_0a.
struct GaugeEdge {
  int state = 0;
  int copy = 0;
  int from = 0, to = 0;  // summands
  bool tree = false;
};

/// Edges in block order; the first edge reaching a new summand (searching
/// outward from summand 0) is a tree edge. Tree entries are free, the others
/// are fixed by the braid relation.
inline std::vector<GaugeEdge> gauge_edges(const std::vector<DerivationState>& states) {
  std::vector<GaugeEdge> e;
  int nsum = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (int x : states[s].summand) nsum = std::max(nsum, x + 1);
    for (int a = 1; a < states[s].m; ++a) e.push_back({static_cast<int>(s), a, states[s].summand[0], states[s].summand[static_cast<std::size_t>(a)], false});
  }
  std::vector<char> reached(static_cast<std::size_t>(nsum), 0);
  if (nsum > 0) reached[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto& x : e) {
      if (x.tree) continue;
      const bool f = reached[static_cast<std::size_t>(x.from)], t = reached[static_cast<std::size_t>(x.to)];
      if (f != t) {
        x.tree = true;
        reached[static_cast<std::size_t>(f ? x.to : x.from)] = 1;
        grew = true;
        break;
      }
    }
  }
  for (char r : reached)
    if (!r) throw DerivationError("the blocks of T4 do not connect all HB3 summands");
  return e;
}

/// The tree entries t_0a as they appear in a given phi^k(T4).
inline std::vector<RatFun> tree_values(const std::vector<DerivationState>& states, const FieldMatrix& t4) {
  std::vector<RatFun> v;
  for (const auto& e : gauge_edges(states))
    if (e.tree) v.push_back(block_of(t4, states[static_cast<std::size_t>(e.state)])(0, e.copy));
  return v;
}

namespace detail {

/// Laurent polynomial in the unknown edge entries x_0, x_1, ...
using XPoly = std::map<std::vector<int>, RatFun>;
using XMat = std::vector<std::vector<XPoly>>;

inline void xadd(XPoly& a, const std::vector<int>& e, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = a.find(e);
  if (it == a.end()) {
    a.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) a.erase(it);
}

inline XMat xmul(const FieldMatrix& a, const XMat& b) {
  const int n = a.rows();
  XMat r(static_cast<std::size_t>(n), std::vector<XPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j)
        for (const auto& [e, c] : b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) xadd(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], e, a(i, k) * c);
    }
  return r;
}

inline XMat xmul(const XMat& a, const FieldMatrix& b) {
  const int n = b.rows();
  XMat r(static_cast<std::size_t>(n), std::vector<XPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (const auto& [e, c] : a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
        for (int j = 0; j < n; ++j)
          if (!b(k, j).is_zero()) xadd(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], e, c * b(k, j));
  return r;
}

inline XMat xmul(const XMat& a, const XMat& b) {
  const std::size_t n = a.size();
  XMat r(n, std::vector<XPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [e1, c1] : a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& [e2, c2] : b[k][j]) {
            std::vector<int> e(e1.size());
            for (std::size_t t = 0; t < e.size(); ++t) e[t] = e1[t] + e2[t];
            xadd(r[i][j], e, c1 * c2);
          }
  return r;
}

/// Substitutes the known unknowns.
inline XPoly xsubst(const XPoly& a, const std::vector<std::optional<RatFun>>& known) {
  XPoly r;
  for (const auto& [e, c] : a) {
    std::vector<int> ne = e;
    RatFun nc = c;
    for (std::size_t t = 0; t < e.size(); ++t)
      if (known[t] && e[t] != 0) {
        nc *= known[t]->pow(e[t]);
        ne[t] = 0;
      }
    xadd(r, ne, nc);
  }
  return r;
}

}  // namespace detail

/// phi^k(T4) from the derived blocks. `tree` gives the free entries t_0a on
/// the tree edges of the gauge graph (all 1 when empty); the other edge
/// entries are solved from entries of T3 T4 T3 = T4 T3 T4 that are linear in
/// a single remaining unknown. The result is re-verified against every
/// defining relation.
inline FieldMatrix assemble_t4(const std::vector<DerivationState>& states, const Representation& prefix, std::vector<RatFun> tree = {}) {
  const auto edges = gauge_edges(states);
  std::size_t ntree = 0;
  for (const auto& e : edges) ntree += e.tree ? 1 : 0;
  if (tree.empty()) tree.assign(ntree, RatFun(1));
  if (tree.size() != ntree) throw DerivationError("expected " + std::to_string(ntree) + " free entries");
  std::vector<FieldMatrix> blocks;
  for (const auto& s : states) {
    if (s.m > 1 && s.u_rank < s.m * (s.m - 1) / 2) throw DerivationError(s.k + " " + s.lambda + ": block is not determined by the linear systems");
    blocks.push_back(s.m == 1 ? FieldMatrix::diagonal({s.diagonal[0]}) : normalised_block(s));
  }
  // unknown index per non-tree edge; h_a = 1 / t_0a scales copy a
  const int nx = static_cast<int>(edges.size() - ntree);
  std::map<std::pair<int, int>, std::pair<int, RatFun>> scale;  // (state, copy) -> (unknown or -1, known t_0a)
  {
    int xi = 0;
    std::size_t ti = 0;
    for (const auto& e : edges) {
      if (e.tree) scale[{e.state, e.copy}] = {-1, tree[ti++]};
      else scale[{e.state, e.copy}] = {xi++, RatFun(1)};
    }
  }
  const int n = prefix.dim();
  detail::XMat t4(static_cast<std::size_t>(n), std::vector<detail::XPoly>(static_cast<std::size_t>(n)));
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& st = states[s];
    // entry (a, c) = b(a, c) h_a / h_c with h_0 = 1 and h_a = 1 / t_0a
    auto factor = [&](int a, std::vector<int>& e, RatFun& c, int sign) {
      if (a == 0) return;
      const auto& [x, val] = scale.at({static_cast<int>(s), a});
      if (x >= 0) e[static_cast<std::size_t>(x)] -= sign;
      else c *= val.pow(-sign);
    };
    for (int a = 0; a < st.m; ++a)
      for (int c = 0; c < st.m; ++c) {
        std::vector<int> e(static_cast<std::size_t>(nx), 0);
        RatFun coef = blocks[s](a, c);
        factor(a, e, coef, 1);
        factor(c, e, coef, -1);
        for (std::size_t b = 0; b < st.positions[static_cast<std::size_t>(a)].size(); ++b)
          detail::xadd(t4[static_cast<std::size_t>(st.positions[static_cast<std::size_t>(a)][b])][static_cast<std::size_t>(st.positions[static_cast<std::size_t>(c)][b])], e, coef);
      }
  }
  std::vector<std::optional<RatFun>> known(static_cast<std::size_t>(nx));
  if (nx > 0) {
    const FieldMatrix& t3 = prefix.T(3);
    const detail::XMat lhs = detail::xmul(detail::xmul(t3, t4), t3);
    const detail::XMat rhs = detail::xmul(detail::xmul(t4, t3), t4);
    int solved = 0;
    bool progress = true;
    while (solved < nx && progress) {
      progress = false;
      for (int i = 0; i < n && !progress; ++i)
        for (int j = 0; j < n && !progress; ++j) {
          detail::XPoly diff = lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          for (const auto& [e, c] : rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) detail::xadd(diff, e, -c);
          diff = detail::xsubst(diff, known);
          // look for a c1 x^s + c0 = 0 in a single unknown, s = +-1
          int var = -1, sgn = 0;
          bool ok = !diff.empty();
          RatFun c0, c1;
          for (const auto& [e, c] : diff) {
            int nz = 0;
            for (int t = 0; t < nx; ++t) {
              if (e[static_cast<std::size_t>(t)] == 0) continue;
              ++nz;
              if (var >= 0 && var != t) ok = false;
              var = t;
              if (e[static_cast<std::size_t>(t)] != 1 && e[static_cast<std::size_t>(t)] != -1) ok = false;
              if (sgn != 0 && sgn != e[static_cast<std::size_t>(t)]) ok = false;
              sgn = e[static_cast<std::size_t>(t)];
              c1 = c;
            }
            if (nz == 0) c0 = c;
            if (nz > 1) ok = false;
          }
          if (!ok || var < 0 || c1.is_zero()) continue;
          const RatFun val = -c0 / c1;
          if (val.is_zero()) continue;
          known[static_cast<std::size_t>(var)] = sgn > 0 ? val : val.inverse();
          ++solved;
          progress = true;
        }
    }
    if (solved < nx) throw DerivationError(prefix.label + ": the braid relation did not fix every normalisation");
  }
  FieldMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const detail::XPoly e = detail::xsubst(t4[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], known);
      for (const auto& [ex, c] : e) {
        (void)ex;
        out(i, j) += c;
      }
    }
  const FieldMatrix &t1 = prefix.T(1), &t2 = prefix.T(2), &t3 = prefix.T(3);
  const RatFun qq = Q() - Q(-1);
  if (!(t3 * out * t3 == out * t3 * out) || !(t1 * out == out * t1) || !(t2 * out == out * t2) ||
      !(out * out == qq * out + FieldMatrix::identity(n)))
    throw DerivationError(prefix.label + ": assembled T4 fails a defining relation");
  return out;
}

// ---------------------------------------------------------------------------
// Full derivation for one HF4 representation

struct EntryDiff {
  int row = 0, col = 0;  // 1-based
  RatFun derived, table;
};

struct LiteralComparison {
  std::string misprint;
  bool comparable = true;
  std::string error;
  std::vector<EntryDiff> diff;  // T4 entries where the literal reading differs from the derivation
};

struct Derivation {
  std::string label;
  std::vector<DerivationState> states;
  bool assembled = false;
  std::vector<RatFun> free_entries;
  FieldMatrix t4;                 // assembled (when assembled)
  std::vector<EntryDiff> diff;    // against the canonical table
  // checks on the published matrix, used in particular when assembly is not attempted
  bool published_diagonal_matches = true;
  bool published_u_solve_system = true;
  bool published_v_match = true;
  bool published_identities_hold = true;
  std::vector<LiteralComparison> literal;
};

inline Params distinct_parameter_values() {
  return {{"alpha", RatFun(2)}, {"beta", RatFun(3)}, {"xi", RatFun(5)}, {"eta", RatFun(7)}, {"theta", RatFun(11)}};
}

inline std::vector<EntryDiff> entry_diff(const FieldMatrix& derived, const FieldMatrix& table) {
  std::vector<EntryDiff> d;
  for (int i = 0; i < derived.rows(); ++i)
    for (int j = 0; j < derived.cols(); ++j)
      if (!(derived(i, j) == table(i, j))) d.push_back({i + 1, j + 1, derived(i, j), table(i, j)});
  return d;
}

/// Runs the whole derivation for phi^k with default parameters. Blocks whose
/// product system is underdetermined (the size-6 block of phi^25) are not
/// assembled; for them only the linearly determined quantities are derived
/// and the published block is checked against them.
inline Derivation derive_rep(const std::string& label) {
  Derivation out;
  out.label = label;
  const Representation rep = build_rep(WeylType::F4, label);
  out.states = block_decompose(rep);
  for (auto& s : out.states) trace_data(s);
  diagonal_entries(out.states, rep);
  bool complete = true;
  for (auto& s : out.states) {
    offdiag_systems(s);
    if (s.m > 1 && s.u_rank < s.m * (s.m - 1) / 2) complete = false;
  }
  const FieldMatrix& pub = rep.T(4);
  for (const auto& s : out.states) {
    const FieldMatrix b = block_of(pub, s);
    for (int i = 0; i < s.m; ++i)
      if (!(b(i, i) == s.diagonal[static_cast<std::size_t>(i)])) out.published_diagonal_matches = false;
    if (!u_values_solve_system(s, b)) out.published_u_solve_system = false;
    if (!s.v.empty() && s.v != v_values(b)) out.published_v_match = false;
    if (!offdiag_identity_failures(b, s.d, s.c).empty()) out.published_identities_hold = false;
  }
  if (complete) {
    out.free_entries = tree_values(out.states, pub);
    out.t4 = assemble_t4(out.states, rep, out.free_entries);
    out.assembled = true;
    out.diff = entry_diff(out.t4, pub);
  }
  const std::string subject = "HF4 " + representative_of(label);
  for (const auto& m : misprints()) {
    if (m.subject != subject) continue;
    LiteralComparison lc;
    lc.misprint = m.id;
    try {
      // distinct parameter values, so that a swapped parameter shows up
      const Representation lit = build_rep(WeylType::F4, label, distinct_parameter_values(), TableReading::only(m.id));
      if (out.assembled) {
        const auto st = block_decompose(lit);
        if (st.size() == out.states.size()) {
          std::vector<DerivationState> derived = out.states;
          for (std::size_t i = 0; i < derived.size(); ++i) derived[i].positions = st[i].positions;
          lc.diff = entry_diff(assemble_t4(derived, rep, tree_values(st, lit.T(4))), lit.T(4));
        }
      }
    } catch (const std::exception& e) {
      lc.comparable = false;
      lc.error = e.what();
    }
    out.literal.push_back(lc);
  }
  return out;
}

inline nlohmann::json to_json(const EntryDiff& d) {
  return {{"row", d.row}, {"col", d.col}, {"derived", d.derived.to_string()}, {"table", d.table.to_string()}};
}

inline nlohmann::json to_json(const DerivationState& s) {
  using nlohmann::json;
  json j;
  j["lambda"] = s.lambda;
  j["m"] = s.m;
  json pos = json::array();
  for (const auto& g : s.positions) {
    json c = json::array();
    for (int i : g) c.push_back(i + 1);
    pos.push_back(c);
  }
  j["positions"] = pos;
  json d = json::array();
  for (const auto& x : s.d) d.push_back(x.to_string());
  j["D"] = d;
  j["c"] = s.c.to_string();
  json tr;
  for (const auto& [k, x] : s.traces) tr["T D^" + std::to_string(k)] = x.to_string();
  tr["(T D)^2"] = s.trace_tdtd.to_string();
  j["traces"] = tr;
  json dg = json::array();
  for (const auto& x : s.diagonal) dg.push_back(x.to_string());
  j["diagonal"] = dg;
  json u;
  for (const auto& [p, x] : s.u) u[std::to_string(p.first + 1) + "," + std::to_string(p.second + 1)] = x.to_string();
  j["u"] = u;
  j["u_rank"] = s.u_rank;
  j["u_free_directions"] = static_cast<int>(s.u_nullspace.size());
  json v;
  for (const auto& [t, x] : s.v)
    if (t[0] == 0) v[std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "," + std::to_string(t[2] + 1)] = x.to_string();
  j["v"] = v;
  return j;
}

inline nlohmann::json to_json(const Derivation& d) {
  using nlohmann::json;
  json j;
  j["label"] = d.label;
  json blocks = json::array();
  for (const auto& s : d.states) blocks.push_back(to_json(s));
  j["blocks"] = blocks;
  j["assembled"] = d.assembled;
  if (d.assembled) {
    json fe = json::array();
    for (const auto& x : d.free_entries) fe.push_back(x.to_string());
    j["free_entries"] = fe;
    j["T4"] = to_json(d.t4);
    json diff = json::array();
    for (const auto& e : d.diff) diff.push_back(to_json(e));
    j["diff"] = diff;
  }
  j["published_checks"] = {{"diagonal", d.published_diagonal_matches},
                           {"u_system", d.published_u_solve_system},
                           {"v", d.published_v_match},
                           {"entry_identities", d.published_identities_hold}};
  json lit = json::array();
  for (const auto& l : d.literal) {
    json x{{"misprint", l.misprint}, {"comparable", l.comparable}};
    if (!l.comparable) x["error"] = l.error;
    json diff = json::array();
    for (const auto& e : l.diff) diff.push_back(to_json(e));
    x["diff"] = diff;
    lit.push_back(x);
  }
  j["literal_readings"] = lit;
  return j;
}

}  // namespace hecke

#endif  // HECKE_DERIVE_HPP
