#ifndef HECKE_RATFUN_HPP
#define HECKE_RATFUN_HPP

// Exact arithmetic in Z[p^{+-1}, q^{+-1}] and its fraction field Q(p,q).

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hecke {

class ArithmeticError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One monomial c * p^a * q^b of a Laurent polynomial.
struct Term {
  int a = 0;
  int b = 0;
  mpz_class c;
};

inline bool lex_less(int a1, int b1, int a2, int b2) {
  return a1 < a2 || (a1 == a2 && b1 < b2);
}

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t()));
  h = h * 31 + static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  }
  return h;
}

}  // namespace detail

/// Laurent polynomial with integer coefficients in p and q.
///
/// Terms are kept sorted ascending in lex order on (a, b) with no zero
/// coefficients, so equal polynomials are structurally equal.
class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({0, 0, mpz_class(c)});
  }
  explicit LaurentPoly(const mpz_class& c) {
    if (c != 0) terms_.push_back({0, 0, c});
  }

  static LaurentPoly monomial(const mpz_class& c, int a, int b) {
    LaurentPoly r;
    if (c != 0) r.terms_.push_back({a, b, c});
    return r;
  }
  static LaurentPoly p(int e = 1) { return monomial(1, e, 0); }
  static LaurentPoly q(int e = 1) { return monomial(1, 0, e); }

  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static LaurentPoly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) {
      return lex_less(x.a, x.b, y.a, y.b);
    });
    LaurentPoly r;
    for (auto& t : ts) {
      if (!r.terms_.empty() && r.terms_.back().a == t.a && r.terms_.back().b == t.b) {
        r.terms_.back().c += t.c;
      } else {
        r.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(r.terms_, [](const Term& t) { return t.c == 0; });
    return r;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0);
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0 && terms_[0].c == 1;
  }
  bool is_monomial() const { return terms_.size() == 1; }
  /// A monomial with coefficient +-1, i.e. a unit of the Laurent ring.
  bool is_unit() const {
    return terms_.size() == 1 && (terms_[0].c == 1 || terms_[0].c == -1);
  }

  mpz_class constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw ArithmeticError("not a constant polynomial");
    return terms_[0].c;
  }

  int min_a() const {
    int m = terms_.front().a;
    for (const auto& t : terms_) m = std::min(m, t.a);
    return m;
  }
  int max_a() const { return terms_.back().a; }
  int min_b() const {
    int m = terms_.front().b;
    for (const auto& t : terms_) m = std::min(m, t.b);
    return m;
  }
  int max_b() const {
    int m = terms_.front().b;
    for (const auto& t : terms_) m = std::max(m, t.b);
    return m;
  }

  /// Lex-leading term (largest a, then largest b).
  const Term& leading() const { return terms_.back(); }

  /// Positive gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  /// Multiplies by p^da q^db.
  LaurentPoly shifted(int da, int db) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) {
      t.a += da;
      t.b += db;
    }
    return r;
  }

  /// Divides every coefficient by d, which must divide them exactly.
  LaurentPoly divided_by_integer(const mpz_class& d) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), d.get_mpz_t());
    return r;
  }

  LaurentPoly times_integer(const mpz_class& d) const {
    if (d == 0) return {};
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c *= d;
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) { return merge(x, y, false); }
  friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) { return merge(x, y, true); }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) { return multiply(x, y); }
  LaurentPoly& operator+=(const LaurentPoly& y) { return *this = *this + y; }
  LaurentPoly& operator-=(const LaurentPoly& y) { return *this = *this - y; }
  LaurentPoly& operator*=(const LaurentPoly& y) { return *this = *this * y; }

  friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
      const auto& s = x.terms_[i];
      const auto& t = y.terms_[i];
      if (s.a != t.a || s.b != t.b || s.c != t.c) return false;
    }
    return true;
  }
  friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
      detail::hash_combine(h, static_cast<std::size_t>(t.a) * 1000003u + static_cast<std::size_t>(t.b));
      detail::hash_combine(h, detail::hash_mpz(t.c));
    }
    return h;
  }

  LaurentPoly pow(unsigned e) const {
    LaurentPoly r(1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return r;
  }

  /// Exact value at (p0, q0); p0 (q0) must be nonzero when negative powers occur.
  mpq_class evaluate(const mpq_class& p0, const mpq_class& q0) const {
    mpq_class s = 0;
    for (const auto& t : terms_) {
      s += mpq_class(t.c) * ipow(p0, t.a) * ipow(q0, t.b);
    }
    return s;
  }

  /// Image under the ring automorphism p -> sp * p^{ep}, q -> sq * q^{eq}
  /// with ep, eq in {+1, -1} and sp, sq in {+1, -1}.
  LaurentPoly substitute_units(int sp, int ep, int sq, int eq) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
      mpz_class c = t.c;
      if (sp < 0 && (t.a % 2 != 0)) c = -c;
      if (sq < 0 && (t.b % 2 != 0)) c = -c;
      ts.push_back({t.a * ep, t.b * eq, c});
    }
    return from_terms(std::move(ts));
  }

  std::string to_string() const;

private:
  static mpq_class ipow(const mpq_class& x, int e) {
    if (e == 0) return 1;
    if (e < 0) {
      if (x == 0) throw ArithmeticError("pole: negative power of zero");
      return 1 / ipow(x, -e);
    }
    mpq_class r = 1, b = x;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
      if (u & 1u) r *= b;
      u >>= 1u;
      if (u) b *= b;
    }
    return r;
  }

  static LaurentPoly merge(const LaurentPoly& x, const LaurentPoly& y, bool subtract) {
    LaurentPoly r;
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size() ||
          (i < x.terms_.size() && lex_less(x.terms_[i].a, x.terms_[i].b, y.terms_[j].a, y.terms_[j].b))) {
        r.terms_.push_back(x.terms_[i++]);
      } else if (i == x.terms_.size() ||
                 lex_less(y.terms_[j].a, y.terms_[j].b, x.terms_[i].a, x.terms_[i].b)) {
        r.terms_.push_back(y.terms_[j++]);
        if (subtract) r.terms_.back().c = -r.terms_.back().c;
      } else {
        mpz_class c = subtract ? mpz_class(x.terms_[i].c - y.terms_[j].c) : mpz_class(x.terms_[i].c + y.terms_[j].c);
        if (c != 0) r.terms_.push_back({x.terms_[i].a, x.terms_[i].b, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static LaurentPoly multiply(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_monomial()) return scale_by_term(y, x.terms_[0]);
    if (y.is_monomial()) return scale_by_term(x, y.terms_[0]);
    const int a0 = x.min_a() + y.min_a();
    const int b0 = x.min_b() + y.min_b();
    const long w = static_cast<long>(x.max_a() + y.max_a() - a0 + 1);
    const long h = static_cast<long>(x.max_b() + y.max_b() - b0 + 1);
    if (w * h <= 16384) {
      std::vector<mpz_class> acc(static_cast<std::size_t>(w * h));
      std::vector<char> used(static_cast<std::size_t>(w * h), 0);
      for (const auto& s : x.terms_) {
        for (const auto& t : y.terms_) {
          const std::size_t idx = static_cast<std::size_t>((s.a + t.a - a0) * h + (s.b + t.b - b0));
          mpz_addmul(acc[idx].get_mpz_t(), s.c.get_mpz_t(), t.c.get_mpz_t());
          used[idx] = 1;
        }
      }
      LaurentPoly r;
      for (long i = 0; i < w * h; ++i) {
        if (used[static_cast<std::size_t>(i)] && acc[static_cast<std::size_t>(i)] != 0) {
          r.terms_.push_back({static_cast<int>(i / h) + a0, static_cast<int>(i % h) + b0,
                              std::move(acc[static_cast<std::size_t>(i)])});
        }
      }
      return r;
    }
    std::vector<Term> ts;
    ts.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& s : x.terms_)
      for (const auto& t : y.terms_) ts.push_back({s.a + t.a, s.b + t.b, s.c * t.c});
    return from_terms(std::move(ts));
  }

  static LaurentPoly scale_by_term(const LaurentPoly& x, const Term& m) {
    LaurentPoly r = x;
    for (auto& t : r.terms_) {
      t.a += m.a;
      t.b += m.b;
      if (m.c != 1) t.c *= m.c;
    }
    return r;
  }

  std::vector<Term> terms_;
};

namespace detail {

inline void append_power(std::ostringstream& os, const char* var, int e) {
  os << var;
  if (e != 1) os << '^' << (e < 0 ? "(" : "") << e << (e < 0 ? ")" : "");
}

}  // namespace detail

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Term& t = *it;
    mpz_class c = t.c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      os << '-';
      c = -c;
    }
    first = false;
    const bool bare = (t.a == 0 && t.b == 0);
    if (c != 1 || bare) {
      os << c.get_str();
      if (!bare) os << '*';
    }
    if (t.a != 0) detail::append_power(os, "p", t.a);
    if (t.a != 0 && t.b != 0) os << '*';
    if (t.b != 0) detail::append_power(os, "q", t.b);
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------
// Exact division and gcd

/// Exact quotient x / y in the Laurent ring, or nullopt when y does not divide x.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly& x, const LaurentPoly& y) {
  if (y.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (x.is_zero()) return LaurentPoly{};
  if (y.is_monomial()) {
    const Term& m = y.terms()[0];
    std::vector<Term> ts;
    ts.reserve(x.size());
    for (const auto& t : x.terms()) {
      if (!mpz_divisible_p(t.c.get_mpz_t(), m.c.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), m.c.get_mpz_t());
      ts.push_back({t.a - m.a, t.b - m.b, std::move(c)});
    }
    return LaurentPoly::from_terms(std::move(ts));
  }
  // Reduce to ordinary polynomials with no monomial factor; then division in
  // Z[p,q] decides divisibility in the Laurent ring.
  const int xa = x.min_a(), xb = x.min_b(), ya = y.min_a(), yb = y.min_b();
  const int da = x.max_a() - xa, db = x.max_b() - xb;
  const int ea = y.max_a() - ya, eb = y.max_b() - yb;
  if (ea > da || eb > db) return std::nullopt;
  const int h = db + 1;
  std::vector<mpz_class> rem(static_cast<std::size_t>((da + 1) * h));
  for (const auto& t : x.terms()) rem[static_cast<std::size_t>((t.a - xa) * h + (t.b - xb))] = t.c;
  std::vector<Term> ys;
  ys.reserve(y.size());
  for (const auto& t : y.terms()) ys.push_back({t.a - ya, t.b - yb, t.c});
  const Term lt = ys.back();
  std::vector<Term> quot;
  mpz_class c;
  for (int a = da; a >= 0; --a) {
    for (int b = db; b >= 0; --b) {
      mpz_class& r = rem[static_cast<std::size_t>(a * h + b)];
      if (r == 0) continue;
      const int qa = a - lt.a, qb = b - lt.b;
      if (qa < 0 || qb < 0 || qb > db - eb) return std::nullopt;
      if (!mpz_divisible_p(r.get_mpz_t(), lt.c.get_mpz_t())) return std::nullopt;
      mpz_divexact(c.get_mpz_t(), r.get_mpz_t(), lt.c.get_mpz_t());
      for (const auto& t : ys) {
        const int pa = qa + t.a, pb = qb + t.b;
        if (pa > da || pb > db) return std::nullopt;
        mpz_submul(rem[static_cast<std::size_t>(pa * h + pb)].get_mpz_t(), c.get_mpz_t(), t.c.get_mpz_t());
      }
      quot.push_back({qa, qb, c});
    }
  }
  return LaurentPoly::from_terms(std::move(quot)).shifted(xa - ya, xb - yb);
}

inline LaurentPoly divide_or_throw(const LaurentPoly& x, const LaurentPoly& y) {
  auto r = divide_exact(x, y);
  if (!r) throw ArithmeticError("inexact polynomial division");
  return std::move(*r);
}

namespace detail {

/// Shifts x so that it is a polynomial in p, q with no monomial factor.
inline LaurentPoly strip_monomial(const LaurentPoly& x) {
  if (x.is_zero()) return x;
  return x.shifted(-x.min_a(), -x.min_b());
}

/// Makes the lex-leading coefficient positive.
inline LaurentPoly positive_leading(const LaurentPoly& x) {
  if (!x.is_zero() && x.leading().c < 0) return -x;
  return x;
}

inline mpz_class max_norm(const LaurentPoly& x) {
  mpz_class m = 0;
  for (const auto& t : x.terms()) {
    if (abs(t.c) > m) m = abs(t.c);
  }
  return m;
}

// Univariate dense polynomials over Z, used by the fallback gcd.
using UPoly = std::vector<mpz_class>;

inline void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline mpz_class ucontent(const UPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline UPoly uprimitive(UPoly f) {
  trim(f);
  if (f.empty()) return f;
  mpz_class g = ucontent(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return f;
}

inline UPoly uprem(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  while (a.size() >= b.size()) {
    const mpz_class la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

inline UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (!a.empty() && a.back() < 0)
      for (auto& c : a) c = -c;
    return a;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ucontent(a).get_mpz_t(), ucontent(b).get_mpz_t());
  a = uprimitive(a);
  b = uprimitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    UPoly r = uprem(a, b);
    a = std::move(b);
    b = uprimitive(r);
  }
  a = uprimitive(a);
  for (auto& c : a) c *= g;
  return a;
}

inline std::optional<UPoly> udivexact(UPoly a, const UPoly& b) {
  trim(a);
  if (a.empty()) return UPoly{};
  if (a.size() < b.size()) return std::nullopt;
  UPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    q[shift] = c;
    trim(a);
  }
  if (!a.empty()) return std::nullopt;
  return q;
}

// Bivariate polynomials as Z[q][p]: entry i is the coefficient of p^i.
using BPoly = std::vector<UPoly>;

inline BPoly to_bpoly(const LaurentPoly& x) {
  BPoly r(static_cast<std::size_t>(x.max_a() + 1));
  for (const auto& t : x.terms()) {
    auto& u = r[static_cast<std::size_t>(t.a)];
    if (u.size() <= static_cast<std::size_t>(t.b)) u.resize(static_cast<std::size_t>(t.b) + 1);
    u[static_cast<std::size_t>(t.b)] = t.c;
  }
  return r;
}

inline LaurentPoly from_bpoly(const BPoly& f) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f[i].size(); ++j)
      if (f[i][j] != 0) ts.push_back({static_cast<int>(i), static_cast<int>(j), f[i][j]});
  return LaurentPoly::from_terms(std::move(ts));
}

inline void btrim(BPoly& f) {
  while (!f.empty() && f.back().empty()) f.pop_back();
}

inline UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  trim(r);
  return r;
}

inline UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline UPoly bcontent(const BPoly& f) {
  UPoly g;
  for (const auto& c : f) {
    if (c.empty()) continue;
    if (g.empty()) {
      g = c;
      if (g.back() < 0)
        for (auto& x : g) x = -x;
    } else {
      g = ugcd(g, c);
    }
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

inline BPoly bdiv_content(const BPoly& f, const UPoly& c) {
  BPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].empty()) continue;
    auto d = udivexact(f[i], c);
    if (!d) throw ArithmeticError("content division failed");
    r[i] = std::move(*d);
  }
  return r;
}

inline BPoly bprem(BPoly a, const BPoly& b) {
  const UPoly& lb = b.back();
  while (a.size() >= b.size()) {
    const UPoly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = umul(c, lb);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = usub(a[i + shift], umul(la, b[i]));
    btrim(a);
  }
  return a;
}

/// Primitive-PRS gcd of two polynomials with no monomial factor (fallback path).
inline LaurentPoly prs_gcd(const LaurentPoly& x, const LaurentPoly& y) {
  BPoly a = to_bpoly(x), b = to_bpoly(y);
  btrim(a);
  btrim(b);
  UPoly ca = bcontent(a), cb = bcontent(b);
  UPoly cg = ugcd(ca, cb);
  a = bdiv_content(a, ca);
  b = bdiv_content(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    BPoly r = bprem(a, b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
      break;
    }
    b = bdiv_content(r, bcontent(r));
  }
  BPoly g;
  if (b.empty()) {
    g = a;  // a is primitive
  } else {
    g = BPoly{UPoly{1}};  // b is a nonzero polynomial in q only: primitive part 1
  }
  if (g.size() > 1) g = bdiv_content(g, bcontent(g));
  for (auto& c : g) c = umul(c, cg);
  return positive_leading(from_bpoly(g));
}

struct GcdStats {
  std::uint64_t calls = 0;
  std::uint64_t heuristic = 0;
  std::uint64_t fallback = 0;
};

inline GcdStats& gcd_stats() {
  thread_local GcdStats s;
  return s;
}

/// Heuristic gcd of primitive polynomials with no monomial factor, via the
/// Kronecker substitution q = p^K and evaluation at a large integer. The
/// result is certified by exact division.
inline std::optional<LaurentPoly> heuristic_gcd(const LaurentPoly& x, const LaurentPoly& y) {
  const int K = std::max(x.max_a(), y.max_a()) + 1;
  mpz_class xi = 2 * std::min(max_norm(x), max_norm(y)) + 29;
  auto eval = [K](const LaurentPoly& f, const mpz_class& at) {
    // Horner over the packed exponent a + K*b.
    std::vector<std::pair<long, const mpz_class*>> packed;
    packed.reserve(f.size());
    for (const auto& t : f.terms()) packed.emplace_back(static_cast<long>(t.a) + static_cast<long>(K) * t.b, &t.c);
    std::sort(packed.begin(), packed.end(), [](const auto& u, const auto& v) { return u.first > v.first; });
    mpz_class r = 0, pw;
    long cur = packed.front().first;
    for (const auto& [e, c] : packed) {
      if (cur > e) {
        mpz_pow_ui(pw.get_mpz_t(), at.get_mpz_t(), static_cast<unsigned long>(cur - e));
        r *= pw;
        cur = e;
      }
      r += *c;
    }
    if (cur > 0) {
      mpz_pow_ui(pw.get_mpz_t(), at.get_mpz_t(), static_cast<unsigned long>(cur));
      r *= pw;
    }
    return r;
  };
  for (int attempt = 0; attempt < 6; ++attempt) {
    const mpz_class vx = eval(x, xi), vy = eval(y, xi);
    mpz_class gamma;
    mpz_gcd(gamma.get_mpz_t(), vx.get_mpz_t(), vy.get_mpz_t());
    // xi-adic symmetric expansion of gamma.
    std::vector<Term> ts;
    mpz_class h = gamma, digit, half = xi / 2;
    long e = 0;
    while (h != 0) {
      mpz_fdiv_r(digit.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      if (digit != 0) ts.push_back({static_cast<int>(e % K), static_cast<int>(e / K), digit});
      h -= digit;
      mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      ++e;
    }
    LaurentPoly g = LaurentPoly::from_terms(std::move(ts));
    if (!g.is_zero()) {
      g = positive_leading(g.divided_by_integer(g.content()));
      // xi exceeds twice the smaller norm, so a reconstruction that divides
      // both inputs is the gcd; the constant 1 always does.
      if (g.is_constant()) return LaurentPoly(1);
      if (g.min_a() == 0 && g.min_b() == 0 && divide_exact(x, g) && divide_exact(y, g)) return g;
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace detail

/// Greatest common divisor in Z[p^{+-1}, q^{+-1}], normalized to a polynomial
/// with no monomial factor and positive lex-leading coefficient. The integer
/// content of the inputs participates.
inline LaurentPoly gcd(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero()) return detail::positive_leading(detail::strip_monomial(y));
  if (y.is_zero()) return detail::positive_leading(detail::strip_monomial(x));
  auto& stats = detail::gcd_stats();
  ++stats.calls;
  mpz_class cx = x.content(), cy = y.content(), cg;
  mpz_gcd(cg.get_mpz_t(), cx.get_mpz_t(), cy.get_mpz_t());
  if (x.is_monomial() || y.is_monomial()) return LaurentPoly(cg);
  LaurentPoly px = detail::strip_monomial(x.divided_by_integer(cx));
  LaurentPoly py = detail::strip_monomial(y.divided_by_integer(cy));
  if (px.is_constant() || py.is_constant()) return LaurentPoly(cg);
  px = detail::positive_leading(px);
  py = detail::positive_leading(py);
  if (px == py) return px.times_integer(cg);
  // a polynomial in p alone and one in q alone share no factor
  if ((px.max_a() == 0 && py.max_b() == 0) || (px.max_b() == 0 && py.max_a() == 0)) return LaurentPoly(cg);
  if (auto g = detail::heuristic_gcd(px, py)) {
    ++stats.heuristic;
    return g->times_integer(cg);
  }
  ++stats.fallback;
  return detail::prs_gcd(px, py).times_integer(cg);
}

/// Substitutes a unit monomial x = s p^a q^b into the bracket polynomials
/// [2]_x = x + x^-1, [3]_x = x^2 + 1 + x^-2, [0]_x = x - x^-1.
inline LaurentPoly bracket(const LaurentPoly& x, int n) {
  if (!x.is_unit()) throw ArithmeticError("bracket argument must be a unit monomial");
  const Term& t = x.terms()[0];
  const LaurentPoly inv = LaurentPoly::monomial(t.c, -t.a, -t.b);  // (+-1)^-1 = +-1
  switch (n) {
    case 2: return x + inv;
    case 3: return x * x + LaurentPoly(1) + inv * inv;
    case 0: return x - inv;
    default: throw ArithmeticError("unsupported bracket index " + std::to_string(n));
  }
}

inline LaurentPoly unit_monomial(int a, int b, int sign = 1) { return LaurentPoly::monomial(sign, a, b); }

// ---------------------------------------------------------------------------
// Fractions

/// Element of Q(p,q) in canonical reduced form: num / den with den a polynomial
/// (no monomial factor, positive lex-leading coefficient) and gcd(num, den) = 1
/// in Z[p^{+-1}, q^{+-1}].
class RatFun {
public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(const LaurentPoly& x) : num_(x), den_(1) {}  // NOLINT(google-explicit-constructor)

  static RatFun fraction(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw ArithmeticError("division by zero");
    RatFun r;
    if (n.is_zero()) return r;
    // Move the monomial part of d onto the numerator.
    LaurentPoly num = n.shifted(-d.min_a(), -d.min_b());
    LaurentPoly den = detail::strip_monomial(d);
    LaurentPoly g = gcd(num, den);
    if (!g.is_one()) {
      num = divide_or_throw(num, g);
      den = divide_or_throw(den, g);
    }
    r.set_normalized(std::move(num), std::move(den));
    return r;
  }

  static RatFun rational(long n, long d) { return fraction(LaurentPoly(n), LaurentPoly(d)); }

  static RatFun from_mpq(const mpq_class& v) {
    return fraction(LaurentPoly(mpz_class(v.get_num())), LaurentPoly(mpz_class(v.get_den())));
  }

  /// For a pair already known to be coprime (e.g. an automorphic image).
  static RatFun from_coprime(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw ArithmeticError("division by zero");
    RatFun r;
    if (n.is_zero()) return r;
    r.set_normalized(n.shifted(-d.min_a(), -d.min_b()), detail::strip_monomial(d));
    return r;
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  bool is_monomial() const { return den_.is_one() && num_.is_monomial(); }

  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFun operator+(const RatFun& x, const RatFun& y) { return add(x, y, false); }
  friend RatFun operator-(const RatFun& x, const RatFun& y) { return add(x, y, true); }

  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.den_.is_one() && y.den_.is_one()) return RatFun(x.num_ * y.num_);
    // Cross-cancel: (a/b)(c/d) with g1 = gcd(a,d), g2 = gcd(c,b).
    LaurentPoly a = x.num_, b = x.den_, c = y.num_, d = y.den_;
    if (!d.is_one()) {
      LaurentPoly g1 = gcd(a, d);
      if (!g1.is_one()) {
        a = divide_or_throw(a, g1);
        d = divide_or_throw(d, g1);
      }
    }
    if (!b.is_one()) {
      LaurentPoly g2 = gcd(c, b);
      if (!g2.is_one()) {
        c = divide_or_throw(c, g2);
        b = divide_or_throw(b, g2);
      }
    }
    RatFun r;
    r.set_normalized(a * c, b * d);
    return r;
  }

  RatFun inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    RatFun r;
    r.set_normalized(den_.shifted(-num_.min_a(), -num_.min_b()), detail::strip_monomial(num_));
    return r;
  }

  friend RatFun operator/(const RatFun& x, const RatFun& y) { return x * y.inverse(); }

  RatFun& operator+=(const RatFun& y) { return *this = *this + y; }
  RatFun& operator-=(const RatFun& y) { return *this = *this - y; }
  RatFun& operator*=(const RatFun& y) { return *this = *this * y; }
  RatFun& operator/=(const RatFun& y) { return *this = *this / y; }

  RatFun pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFun r(1), base = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
      if (u & 1u) r *= base;
      u >>= 1u;
      if (u) base *= base;
    }
    return r;
  }

  friend bool operator==(const RatFun& x, const RatFun& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend bool operator!=(const RatFun& x, const RatFun& y) { return !(x == y); }

  std::size_t hash() const {
    std::size_t h = num_.hash();
    detail::hash_combine(h, den_.hash());
    return h;
  }

  /// Exact value at (p0, q0); throws ArithmeticError at a pole.
  mpq_class evaluate(const mpq_class& p0, const mpq_class& q0) const {
    const mpq_class d = den_.evaluate(p0, q0);
    if (d == 0) throw ArithmeticError("pole at evaluation point");
    mpq_class r = num_.evaluate(p0, q0) / d;
    r.canonicalize();
    return r;
  }

  /// alpha_p: p -> -p^-1 (q fixed); alpha_q: q -> -q^-1 (p fixed).
  RatFun apply_automorphism(bool alpha_p, bool alpha_q) const {
    const int sp = alpha_p ? -1 : 1, ep = alpha_p ? -1 : 1;
    const int sq = alpha_q ? -1 : 1, eq = alpha_q ? -1 : 1;
    return from_coprime(num_.substitute_units(sp, ep, sq, eq), den_.substitute_units(sp, ep, sq, eq));
  }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

private:
  static RatFun add(const RatFun& x, const RatFun& y, bool subtract) {
    if (y.is_zero()) return x;
    if (x.is_zero()) return subtract ? -y : y;
    const LaurentPoly& a = x.num_;
    const LaurentPoly& b = x.den_;
    const LaurentPoly c = subtract ? -y.num_ : y.num_;
    const LaurentPoly& d = y.den_;
    if (b.is_one() && d.is_one()) return RatFun(a + c);
    if (b == d) {
      LaurentPoly n = a + c;
      if (n.is_zero()) return {};
      LaurentPoly g = gcd(n, b);
      RatFun r;
      if (g.is_one()) {
        r.set_normalized(std::move(n), b);
      } else {
        r.set_normalized(divide_or_throw(n, g), divide_or_throw(b, g));
      }
      return r;
    }
    if (b.is_one()) {
      RatFun r;
      r.set_normalized(a * d + c, d);
      return r;
    }
    if (d.is_one()) {
      RatFun r;
      r.set_normalized(a + c * b, b);
      return r;
    }
    LaurentPoly g = gcd(b, d);
    if (g.is_one()) {
      RatFun r;
      r.set_normalized(a * d + c * b, b * d);
      return r;
    }
    LaurentPoly b1 = divide_or_throw(b, g), d1 = divide_or_throw(d, g);
    LaurentPoly n = a * d1 + c * b1;
    if (n.is_zero()) return {};
    LaurentPoly den = b1 * d;
    LaurentPoly g2 = gcd(n, g);
    if (!g2.is_one()) {
      n = divide_or_throw(n, g2);
      den = divide_or_throw(den, g2);
    }
    RatFun r;
    r.set_normalized(std::move(n), std::move(den));
    return r;
  }

  // den must be a polynomial without monomial factor; only the sign is fixed here.
  void set_normalized(LaurentPoly n, LaurentPoly d) {
    if (n.is_zero()) {
      num_ = {};
      den_ = LaurentPoly(1);
      return;
    }
    if (d.leading().c < 0) {
      n = -n;
      d = -d;
    }
    num_ = std::move(n);
    den_ = std::move(d);
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFun& x) { return os << x.to_string(); }

inline RatFun P(int e = 1) { return RatFun(LaurentPoly::p(e)); }
inline RatFun Q(int e = 1) { return RatFun(LaurentPoly::q(e)); }
inline RatFun PQ(int a, int b, long c = 1) { return RatFun(LaurentPoly::monomial(c, a, b)); }

/// Bracket applied to an arbitrary element: [2]_x = x + 1/x, [3]_x = x^2 + 1 + x^-2, [0]_x = x - 1/x.
inline RatFun br(int n, const RatFun& x) {
  const RatFun inv = x.inverse();
  switch (n) {
    case 2: return x + inv;
    case 3: return x * x + RatFun(1) + inv * inv;
    case 0: return x - inv;
    default: throw ArithmeticError("unsupported bracket index " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Monomials with rational exponents (only for cube roots of central constants)

struct Monomial {
  int sign = 1;
  mpq_class a = 0;
  mpq_class b = 0;

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial r{x.sign * y.sign, x.a + y.a, x.b + y.b};
    r.a.canonicalize();
    r.b.canonicalize();
    return r;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.sign == y.sign && x.a == y.a && x.b == y.b;
  }

  /// Real power x^(n/d); the sign follows the real root (cube root of -1 is -1).
  Monomial pow(long n, long d = 1) const {
    if (d <= 0) throw ArithmeticError("monomial root index must be positive");
    Monomial r;
    mpq_class f(n, d);
    f.canonicalize();
    r.a = a * f;
    r.b = b * f;
    r.a.canonicalize();
    r.b.canonicalize();
    if (sign < 0) {
      // (-1)^(n/d) real only for odd d (in lowest terms)
      const long dd = mpz_class(f.get_den()).get_si();
      const long nn = mpz_class(f.get_num()).get_si();
      if (dd % 2 == 0) throw ArithmeticError("even root of negative monomial");
      r.sign = (nn % 2 == 0) ? 1 : -1;
    }
    return r;
  }

  bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }

  RatFun to_ratfun() const {
    if (!is_integral()) throw ArithmeticError("monomial has fractional exponents");
    return RatFun(LaurentPoly::monomial(sign, static_cast<int>(mpz_class(a.get_num()).get_si()),
                                        static_cast<int>(mpz_class(b.get_num()).get_si())));
  }

  static Monomial from_ratfun(const RatFun& x) {
    if (!x.is_monomial()) throw ArithmeticError("not a signed monomial: " + x.to_string());
    const Term& t = x.num().terms()[0];
    if (t.c != 1 && t.c != -1) throw ArithmeticError("monomial coefficient is not +-1");
    return Monomial{t.c > 0 ? 1 : -1, mpq_class(t.a), mpq_class(t.b)};
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (sign < 0 ? "-" : "") << "p^(" << a.get_str() << ")*q^(" << b.get_str() << ")";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Denominator analysis

/// One of the eight bracket polynomials that may occur in denominators.
struct BracketFactor {
  std::string name;    // e.g. "[2]_{p^2q}"
  LaurentPoly poly;    // shifted to a polynomial without monomial factor
};

inline const std::vector<BracketFactor>& allowed_denominator_brackets() {
  static const std::vector<BracketFactor> list = [] {
    auto mk = [](const std::string& name, int n, int a, int b) {
      return BracketFactor{name, detail::strip_monomial(bracket(unit_monomial(a, b), n))};
    };
    return std::vector<BracketFactor>{
        mk("[2]_p", 2, 1, 0),          mk("[2]_q", 2, 0, 1),          mk("[2]_{pq}", 2, 1, 1),
        mk("[2]_{pq^-1}", 2, 1, -1),   mk("[2]_{p^2q}", 2, 2, 1),     mk("[2]_{p^2q^-1}", 2, 2, -1),
        mk("[3]_p", 3, 1, 0),          mk("[3]_q", 3, 0, 1),
    };
  }();
  return list;
}

struct DenominatorFactors {
  std::vector<std::pair<std::string, int>> brackets;  // name, multiplicity
  mpz_class constant = 1;                             // integer unit part
  std::optional<LaurentPoly> foreign;                 // nonconstant leftover
  bool clean() const { return !foreign.has_value(); }
};

/// Trial-divides the denominator by the allowed bracket polynomials.
inline DenominatorFactors denominator_factors(const RatFun& x) {
  DenominatorFactors out;
  LaurentPoly rest = x.den();
  for (const auto& f : allowed_denominator_brackets()) {
    int mult = 0;
    while (!rest.is_constant()) {
      auto d = divide_exact(rest, f.poly);
      if (!d) break;
      rest = std::move(*d);
      ++mult;
    }
    if (mult > 0) out.brackets.emplace_back(f.name, mult);
  }
  if (rest.is_constant()) {
    out.constant = rest.constant_value();
  } else {
    mpz_class c = rest.content();
    out.constant = c;
    out.foreign = rest.divided_by_integer(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const LaurentPoly& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : x.terms()) arr.push_back({t.a, t.b, t.c.get_str()});
  return arr;
}

inline LaurentPoly laurent_from_json(const nlohmann::json& j) {
  std::vector<Term> ts;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("term must be [a, b, \"coeff\"]");
    mpz_class c;
    if (c.set_str(e[2].get<std::string>(), 10) != 0) throw std::invalid_argument("bad coefficient");
    ts.push_back({e[0].get<int>(), e[1].get<int>(), c});
  }
  return LaurentPoly::from_terms(std::move(ts));
}

inline nlohmann::json to_json(const RatFun& x) { return {{"num", to_json(x.num())}, {"den", to_json(x.den())}}; }

inline RatFun ratfun_from_json(const nlohmann::json& j) {
  return RatFun::fraction(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

}  // namespace hecke

template <>
struct std::hash<hecke::LaurentPoly> {
  std::size_t operator()(const hecke::LaurentPoly& x) const { return x.hash(); }
};
template <>
struct std::hash<hecke::RatFun> {
  std::size_t operator()(const hecke::RatFun& x) const { return x.hash(); }
};

#endif  // HECKE_RATFUN_HPP
