#ifndef HECKE_WEYL_HPP
#define HECKE_WEYL_HPP

// Weyl groups of types A1, A2, B3, F4 as groups of integer 4x4 matrices acting
// on the F4 root lattice, with classes, character tables and branching.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hecke/ratfun.hpp"

namespace hecke {

enum class WeylType { A1, A2, B3, F4 };

inline int weyl_rank(WeylType t) {
  switch (t) {
    case WeylType::A1: return 1;
    case WeylType::A2: return 2;
    case WeylType::B3: return 3;
    case WeylType::F4: return 4;
  }
  return 0;
}

inline std::string weyl_name(WeylType t) {
  static const char* names[] = {"A1", "A2", "B3", "F4"};
  return names[static_cast<int>(t)];
}

inline WeylType weyl_type_from_string(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (s == "A1") return WeylType::A1;
  if (s == "A2") return WeylType::A2;
  if (s == "B3") return WeylType::B3;
  if (s == "F4") return WeylType::F4;
  throw std::invalid_argument("unknown Weyl group type: " + s);
}

using GroupMatrix = std::array<int, 16>;

struct GroupMatrixHash {
  std::size_t operator()(const GroupMatrix& m) const {
    std::size_t h = 0;
    for (int x : m) h = h * 1000003u + static_cast<std::size_t>(x + 7);
    return h;
  }
};

inline GroupMatrix gm_mul(const GroupMatrix& a, const GroupMatrix& b) {
  GroupMatrix r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const int x = a[static_cast<std::size_t>(4 * i + k)];
      if (x == 0) continue;
      for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(4 * i + j)] += x * b[static_cast<std::size_t>(4 * k + j)];
    }
  return r;
}

inline GroupMatrix gm_identity() {
  GroupMatrix r{};
  for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(5 * i)] = 1;
  return r;
}

/// Cartan integers a_ij = 2(a_i, a_j)/(a_i, a_i) of F4 with a_1, a_2 short and a_3, a_4 long.
inline int f4_cartan(int i, int j) {
  static const int a[4][4] = {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  return a[i][j];
}

/// Simple reflection s_i (0-based) on root coordinates: s_i(a_j) = a_j - a_ij a_i.
inline GroupMatrix simple_reflection(int i) {
  GroupMatrix r = gm_identity();
  for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(4 * i + j)] = (i == j ? -1 : -f4_cartan(i, j));
  return r;
}

class WeylGroup {
public:
  static constexpr std::size_t kSafetyBound = 5000;

  explicit WeylGroup(WeylType type) : type_(type), rank_(weyl_rank(type)) {
    for (int i = 0; i < rank_; ++i) gens_.push_back(simple_reflection(i));
    enumerate();
    build_tables();
    build_classes();
    build_roots();
  }

  WeylType type() const { return type_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const GroupMatrix& element(int x) const { return elements_[static_cast<std::size_t>(x)]; }
  /// Shortlex-minimal reduced word, generator indices 1-based.
  const std::vector<int>& word(int x) const { return words_[static_cast<std::size_t>(x)]; }
  int length(int x) const { return static_cast<int>(words_[static_cast<std::size_t>(x)].size()); }
  int identity() const { return 0; }
  int longest() const { return longest_; }
  int generator(int i) const { return rmul(0, i); }  // 0-based i

  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * elements_.size() + static_cast<std::size_t>(b)]; }
  int rmul(int a, int gen) const { return rgen_[static_cast<std::size_t>(a * rank_ + gen)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int order(int a) const { return order_[static_cast<std::size_t>(a)]; }

  int find(const GroupMatrix& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

  /// Product s_{w1} s_{w2} ... for a word of 1-based generator indices.
  int from_word(const std::vector<int>& w) const {
    int x = 0;
    for (int g : w) {
      if (g < 1 || g > rank_) throw std::invalid_argument("generator index out of range");
      x = rmul(x, g - 1);
    }
    return x;
  }

  int power(int x, int e) const {
    int r = 0;
    for (int i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

  bool is_central(int x) const {
    for (int g = 0; g < rank_; ++g)
      if (mul(generator(g), x) != mul(x, generator(g))) return false;
    return true;
  }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<int>& class_members(int c) const { return classes_[static_cast<std::size_t>(c)]; }
  int class_size(int c) const { return static_cast<int>(classes_[static_cast<std::size_t>(c)].size()); }
  int class_rep(int c) const { return classes_[static_cast<std::size_t>(c)].front(); }
  int class_of(int x) const { return class_of_[static_cast<std::size_t>(x)]; }

  /// Positive roots as coefficient vectors in the simple roots of F4.
  const std::vector<std::array<int, 4>>& positive_roots() const { return pos_roots_; }
  int num_short_positive() const { return n_short_; }
  int num_long_positive() const { return n_long_; }
  /// True when generator i (0-based) is a reflection in a short root.
  bool generator_is_short(int i) const { return i < 2; }
  /// A reflection in a short root, and in a long root if the type has one (else -1).
  int short_reflection() const { return generator(0); }
  int long_reflection() const { return rank_ >= 3 ? generator(2) : -1; }

private:
  void enumerate() {
    elements_.push_back(gm_identity());
    words_.push_back({});
    index_.emplace(elements_[0], 0);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (int g = 0; g < rank_; ++g) {
        GroupMatrix m = gm_mul(elements_[head], gens_[static_cast<std::size_t>(g)]);
        if (index_.find(m) != index_.end()) continue;
        if (elements_.size() >= kSafetyBound) throw std::runtime_error("group enumeration exceeded safety bound");
        index_.emplace(m, static_cast<int>(elements_.size()));
        elements_.push_back(m);
        auto w = words_[head];
        w.push_back(g + 1);
        words_.push_back(std::move(w));
      }
    }
  }

  void build_tables() {
    const std::size_t n = elements_.size();
    rgen_.assign(n * static_cast<std::size_t>(rank_), -1);
    for (std::size_t x = 0; x < n; ++x)
      for (int g = 0; g < rank_; ++g)
        rgen_[x * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(g)] =
            index_.at(gm_mul(elements_[x], gens_[static_cast<std::size_t>(g)]));
    mult_.assign(n * n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      mult_[a * n] = static_cast<int>(a);
      for (std::size_t b = 1; b < n; ++b) {
        // b = b' s with b' earlier in BFS order
        const auto& w = words_[b];
        const int s = w.back() - 1;
        const int bprime = prefix_index(b);
        mult_[a * n + b] = rmul(mult_[a * n + static_cast<std::size_t>(bprime)], s);
      }
    }
    inv_.assign(n, -1);
    order_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (mult_[a * n + b] == 0) {
          inv_[a] = static_cast<int>(b);
          break;
        }
      int x = static_cast<int>(a), o = 1;
      while (x != 0) {
        x = mult_[static_cast<std::size_t>(x) * n + a];
        ++o;
      }
      order_[a] = o;
    }
    longest_ = static_cast<int>(n) - 1;  // BFS order: the last element has maximal length
    for (std::size_t x = 0; x < n; ++x)
      if (words_[x].size() == words_.back().size() && static_cast<int>(x) != longest_)
        throw std::runtime_error("longest element is not unique");
  }

  int prefix_index(std::size_t b) {
    auto w = words_[b];
    w.pop_back();
    int x = 0;
    for (int g : w) x = rgen_[static_cast<std::size_t>(x * rank_ + g - 1)];
    return x;
  }

  void build_classes() {
    const int n = size();
    class_of_.assign(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> raw;
    for (int x = 0; x < n; ++x) {
      if (class_of_[static_cast<std::size_t>(x)] >= 0) continue;
      std::vector<int> orbit{x};
      class_of_[static_cast<std::size_t>(x)] = static_cast<int>(raw.size());
      for (std::size_t h = 0; h < orbit.size(); ++h) {
        for (int g = 0; g < rank_; ++g) {
          const int s = generator(g);
          const int y = mul(mul(s, orbit[h]), s);
          if (class_of_[static_cast<std::size_t>(y)] < 0) {
            class_of_[static_cast<std::size_t>(y)] = static_cast<int>(raw.size());
            orbit.push_back(y);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      raw.push_back(std::move(orbit));
    }
    // order by (element order, class size, representative); the representative
    // is the member with the shortlex-least word, i.e. the smallest index
    std::vector<int> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      const auto& A = raw[static_cast<std::size_t>(a)];
      const auto& B = raw[static_cast<std::size_t>(b)];
      const auto ka = std::make_tuple(order(A.front()), A.size(), A.front());
      const auto kb = std::make_tuple(order(B.front()), B.size(), B.front());
      return ka < kb;
    });
    for (std::size_t i = 0; i < perm.size(); ++i) {
      classes_.push_back(raw[static_cast<std::size_t>(perm[i])]);
      for (int x : classes_.back()) class_of_[static_cast<std::size_t>(x)] = static_cast<int>(i);
    }
  }

  void build_roots() {
    auto orbit_of = [&](int simple) {
      std::vector<std::array<int, 4>> out;
      for (const auto& m : elements_) {
        std::array<int, 4> v{};
        for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(4 * i + simple)];
        bool pos = true;
        for (int c : v) pos = pos && c >= 0;
        if (pos && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
      return out;
    };
    auto s = orbit_of(0);
    n_short_ = static_cast<int>(s.size());
    pos_roots_ = s;
    if (rank_ >= 3) {
      auto l = orbit_of(2);
      n_long_ = static_cast<int>(l.size());
      pos_roots_.insert(pos_roots_.end(), l.begin(), l.end());
    }
    std::sort(pos_roots_.begin(), pos_roots_.end());
  }

  WeylType type_;
  int rank_;
  std::vector<GroupMatrix> gens_;
  std::vector<GroupMatrix> elements_;
  std::vector<std::vector<int>> words_;
  std::unordered_map<GroupMatrix, int, GroupMatrixHash> index_;
  std::vector<int> rgen_, mult_, inv_, order_;
  int longest_ = 0;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<std::array<int, 4>> pos_roots_;
  int n_short_ = 0, n_long_ = 0;
};

// ---------------------------------------------------------------------------
// Character tables

struct CharTable {
  WeylType type;
  std::vector<std::string> labels;
  std::vector<std::vector<long>> values;  // [irrep][class]

  int num_irreps() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown label " + label + " for " + weyl_name(type));
  }
  long degree(int i) const { return values[static_cast<std::size_t>(i)][0]; }
  long value(int irrep, int cls) const { return values[static_cast<std::size_t>(irrep)][static_cast<std::size_t>(cls)]; }
};

class CharTableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline long modpow(long a, long e, long m) {
  long r = 1;
  a %= m;
  if (a < 0) a += m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

inline long modinv(long a, long m) { return modpow(a, m - 2, m); }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Nullspace basis (as columns) of an r x c matrix over GF(l).
inline std::vector<std::vector<long>> nullspace_mod(std::vector<std::vector<long>> a, int cols, long l) {
  const int rows = static_cast<int>(a.size());
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] % l != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(piv)]);
    const long inv = modinv(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], l);
    for (auto& x : a[static_cast<std::size_t>(r)]) x = (x * inv % l + l) % l;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const long f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] % l;
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            ((a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) % l + l) % l;
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<std::vector<long>> basis;
  for (int f = 0; f < cols; ++f) {
    if (std::find(pivcol.begin(), pivcol.end(), f) != pivcol.end()) continue;
    std::vector<long> v(static_cast<std::size_t>(cols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i)
      v[static_cast<std::size_t>(pivcol[i])] = (l - a[i][static_cast<std::size_t>(f)]) % l;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline long symmetric_residue(long x, long l) {
  x %= l;
  if (x < 0) x += l;
  return x > l / 2 ? x - l : x;
}

}  // namespace detail

/// Exponent of the group (lcm of element orders).
inline long group_exponent(const WeylGroup& g) {
  long e = 1;
  for (int c = 0; c < g.num_classes(); ++c) e = std::lcm(e, static_cast<long>(g.order(g.class_rep(c))));
  return e;
}

/// Smallest prime l = 1 (mod exponent) above 33 and above 2*sqrt|G|, so that
/// twice every degree stays below l.
inline long dixon_prime(const WeylGroup& g) {
  const long e = group_exponent(g);
  const long bound = std::max(33L, 2 * static_cast<long>(std::sqrt(static_cast<double>(g.size()))) + 1);
  for (long l = e + 1;; l += e) {
    if (l > bound && detail::is_prime(l)) return l;
    if (l > 1000000) throw CharTableError("Dixon prime search failed");
  }
}

/// Unlabelled irreducible characters by the Dixon-Schneider method; rows are
/// sorted by (degree, values) for determinism.
inline std::vector<std::vector<long>> dixon_characters(const WeylGroup& g) {
  const int r = g.num_classes();
  const long l = dixon_prime(g);
  // a[j][k][m] = #{x in C_j : x^-1 z_m in C_k}
  std::vector<std::vector<std::vector<long>>> a(
      static_cast<std::size_t>(r), std::vector<std::vector<long>>(static_cast<std::size_t>(r), std::vector<long>(static_cast<std::size_t>(r), 0)));
  for (int j = 0; j < r; ++j)
    for (int m = 0; m < r; ++m) {
      const int z = g.class_rep(m);
      for (int x : g.class_members(j)) ++a[static_cast<std::size_t>(j)][static_cast<std::size_t>(g.class_of(g.mul(g.inv(x), z)))][static_cast<std::size_t>(m)];
    }
  // split GF(l)^r into common eigenspaces of the class matrices
  std::vector<std::vector<std::vector<long>>> spaces;  // each: basis vectors
  {
    std::vector<std::vector<long>> full;
    for (int i = 0; i < r; ++i) {
      std::vector<long> v(static_cast<std::size_t>(r), 0);
      v[static_cast<std::size_t>(i)] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (int j = 1; j < r && static_cast<int>(spaces.size()) < r; ++j) {
    std::vector<std::vector<std::vector<long>>> next;
    for (auto& B : spaces) {
      if (B.size() == 1) {
        next.push_back(B);
        continue;
      }
      const int d = static_cast<int>(B.size());
      // M B as r x d matrix
      std::vector<std::vector<long>> MB(static_cast<std::size_t>(r), std::vector<long>(static_cast<std::size_t>(d), 0));
      for (int k = 0; k < r; ++k)
        for (int c = 0; c < d; ++c) {
          long s = 0;
          for (int m = 0; m < r; ++m) s += a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] * B[static_cast<std::size_t>(c)][static_cast<std::size_t>(m)];
          MB[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = s % l;
        }
      int found = 0;
      for (long lam = 0; lam < l && found < d; ++lam) {
        auto sys = MB;
        for (int k = 0; k < r; ++k)
          for (int c = 0; c < d; ++c)
            sys[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] =
                ((sys[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] - lam * B[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)]) % l + l) % l;
        auto ns = detail::nullspace_mod(sys, d, l);
        if (ns.empty()) continue;
        std::vector<std::vector<long>> sub;
        for (const auto& coeffs : ns) {
          std::vector<long> v(static_cast<std::size_t>(r), 0);
          for (int c = 0; c < d; ++c)
            for (int k = 0; k < r; ++k)
              v[static_cast<std::size_t>(k)] = (v[static_cast<std::size_t>(k)] + coeffs[static_cast<std::size_t>(c)] * B[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)]) % l;
          sub.push_back(std::move(v));
        }
        found += static_cast<int>(sub.size());
        next.push_back(std::move(sub));
      }
      if (found != d) throw CharTableError("eigenspace splitting failed");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != r) throw CharTableError("class matrices do not separate characters");
  const long order = g.size();
  std::vector<std::vector<long>> chars;
  for (auto& B : spaces) {
    std::vector<long> w = B[0];
    const long inv0 = detail::modinv(w[0], l);
    for (auto& x : w) x = x * inv0 % l;
    // chi(1)^2 = |G| / sum_k w_k w_k' / |C_k|, classes here are real
    long s = 0;
    for (int k = 0; k < r; ++k) {
      const int kinv = g.class_of(g.inv(g.class_rep(k)));
      s = (s + w[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(kinv)] % l * detail::modinv(g.class_size(k), l)) % l;
    }
    const long d2 = order % l * detail::modinv(s, l) % l;
    long deg = -1;
    for (long d = 1; d <= l / 2; ++d)
      if (d * d % l == d2) {
        deg = d;
        break;
      }
    if (deg < 0) throw CharTableError("degree is not a square residue");
    std::vector<long> chi(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k)
      chi[static_cast<std::size_t>(k)] =
          detail::symmetric_residue(w[static_cast<std::size_t>(k)] * deg % l * detail::modinv(g.class_size(k), l), l);
    chars.push_back(std::move(chi));
  }
  std::sort(chars.begin(), chars.end());
  // exact orthogonality check of the lift
  for (std::size_t x = 0; x < chars.size(); ++x)
    for (std::size_t y = 0; y < chars.size(); ++y) {
      long s = 0;
      for (int k = 0; k < r; ++k) s += g.class_size(k) * chars[x][static_cast<std::size_t>(k)] * chars[y][static_cast<std::size_t>(g.class_of(g.inv(g.class_rep(k))))];
      if (s != (x == y ? order : 0)) throw CharTableError("lifted table fails orthogonality");
    }
  return chars;
}

/// Class fusion: for each class of the subgroup H, the class of G containing it.
inline std::vector<int> class_fusion(const WeylGroup& h, const WeylGroup& g) {
  std::vector<int> f;
  for (int c = 0; c < h.num_classes(); ++c) {
    const int x = g.find(h.element(h.class_rep(c)));
    if (x < 0) throw std::invalid_argument("subgroup element not found in group");
    f.push_back(g.class_of(x));
  }
  return f;
}

/// m[k][mu] = (1/|H|) sum_{w in H} chi^k(w) chi^mu(w^-1).
inline std::vector<std::vector<long>> branching(const WeylGroup& g, const CharTable& tg, const WeylGroup& h,
                                                const CharTable& th) {
  const auto fuse = class_fusion(h, g);
  std::vector<std::vector<long>> m(tg.values.size(), std::vector<long>(th.values.size(), 0));
  for (std::size_t k = 0; k < tg.values.size(); ++k)
    for (std::size_t mu = 0; mu < th.values.size(); ++mu) {
      long s = 0;
      for (int c = 0; c < h.num_classes(); ++c) {
        const int cinv = h.class_of(h.inv(h.class_rep(c)));
        s += h.class_size(c) * tg.values[k][static_cast<std::size_t>(fuse[static_cast<std::size_t>(c)])] *
             th.values[mu][static_cast<std::size_t>(cinv)];
      }
      if (s % h.size() != 0) throw CharTableError("non-integral branching multiplicity");
      m[k][mu] = s / h.size();
    }
  return m;
}

// Published label orders and restriction tables.

inline const std::vector<std::string>& a1_labels() {
  static const std::vector<std::string> v{"2", "1^2"};
  return v;
}
inline const std::vector<std::string>& a2_labels() {
  static const std::vector<std::string> v{"3", "21", "1^3"};
  return v;
}
inline const std::vector<std::string>& b3_labels() {
  static const std::vector<std::string> v{"3|-", "1^3|-", "-|3", "-|1^3", "21|-", "-|21", "2|1", "1^2|1", "1|2", "1|1^2"};
  return v;
}
inline const std::vector<std::string>& f4_labels() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> r;
    for (int k = 1; k <= 25; ++k) r.push_back(std::to_string(k));
    return r;
  }();
  return v;
}

inline const std::vector<std::string>& labels_for(WeylType t) {
  switch (t) {
    case WeylType::A1: return a1_labels();
    case WeylType::A2: return a2_labels();
    case WeylType::B3: return b3_labels();
    case WeylType::F4: return f4_labels();
  }
  throw std::invalid_argument("bad type");
}

/// Restriction of each A2 irreducible to A1, as published.
inline const std::map<std::string, std::vector<std::string>>& published_a2_to_a1() {
  static const std::map<std::string, std::vector<std::string>> t{
      {"3", {"2"}}, {"21", {"2", "1^2"}}, {"1^3", {"1^2"}}};
  return t;
}

inline const std::map<std::string, std::vector<std::string>>& published_b3_to_a2() {
  static const std::map<std::string, std::vector<std::string>> t{
      {"3|-", {"3"}},       {"1^3|-", {"1^3"}},      {"-|3", {"3"}},         {"-|1^3", {"1^3"}},
      {"21|-", {"21"}},     {"-|21", {"21"}},        {"2|1", {"3", "21"}},   {"1^2|1", {"21", "1^3"}},
      {"1|2", {"3", "21"}}, {"1|1^2", {"21", "1^3"}}};
  return t;
}

inline const std::map<std::string, std::vector<std::string>>& published_f4_to_b3() {
  static const std::map<std::string, std::vector<std::string>> t{
      {"1", {"3|-"}},
      {"2", {"1^3|-"}},
      {"3", {"-|3"}},
      {"4", {"-|1^3"}},
      {"5", {"21|-"}},
      {"6", {"-|21"}},
      {"7", {"3|-", "-|3"}},
      {"8", {"1^3|-", "-|1^3"}},
      {"9", {"21|-", "-|21"}},
      {"10", {"3|-", "21|-", "2|1", "1|2"}},
      {"11", {"21|-", "1^3|-", "1^2|1", "1|1^2"}},
      {"12", {"2|1", "1|2", "-|3", "-|21"}},
      {"13", {"1^2|1", "1|1^2", "-|21", "-|1^3"}},
      {"14", {"1^2|1", "1|2"}},
      {"15", {"2|1", "1|1^2"}},
      {"16", {"2|1", "1^2|1", "1|2", "1|1^2"}},
      {"17", {"3|-", "2|1"}},
      {"18", {"1^3|-", "1^2|1"}},
      {"19", {"1|2", "-|3"}},
      {"20", {"1|1^2", "-|1^3"}},
      {"21", {"21|-", "2|1", "1^2|1"}},
      {"22", {"1|2", "1|1^2", "-|21"}},
      {"23", {"3|-", "2|1", "1|2", "-|3"}},
      {"24", {"1^3|-", "1^2|1", "1|1^2", "-|1^3"}},
      {"25", {"21|-", "2|1", "1^2|1", "1|2", "1|1^2", "-|21"}}};
  return t;
}

inline const std::vector<int>& published_f4_degrees() {
  static const std::vector<int> d{1, 1, 1, 1, 2, 2, 2, 2, 4, 9, 9, 9, 9, 6, 6, 12, 4, 4, 4, 4, 8, 8, 8, 8, 16};
  return d;
}

/// Aligns unlabelled characters to the published label order.
///  A1/A2: trivial, sign and degree.
///  B3: restriction to A2 together with chi(s3) = d (|alpha| - |beta|) / 3.
///  F4: degree and the published restriction to B3 (all rows distinct).
inline CharTable label_characters(const WeylGroup& g, const std::vector<std::vector<long>>& chars,
                                  const WeylGroup* sub = nullptr, const CharTable* sub_table = nullptr) {
  CharTable t{g.type(), labels_for(g.type()), {}};
  const int n = static_cast<int>(chars.size());
  std::vector<int> assigned(static_cast<std::size_t>(n), -1);  // label index -> char index
  auto is_trivial = [&](const std::vector<long>& c) {
    return std::all_of(c.begin(), c.end(), [](long v) { return v == 1; });
  };
  auto cls_of_gen = [&](int i) { return g.class_of(g.generator(i)); };
  if (g.type() == WeylType::A1 || g.type() == WeylType::A2) {
    for (int i = 0; i < n; ++i) {
      const auto& c = chars[static_cast<std::size_t>(i)];
      int lab;
      if (is_trivial(c)) lab = 0;
      else if (c[0] == 1) lab = static_cast<int>(t.labels.size()) - 1;
      else lab = 1;
      if (assigned[static_cast<std::size_t>(lab)] >= 0) throw CharTableError("ambiguous A-type labels");
      assigned[static_cast<std::size_t>(lab)] = i;
    }
  } else {
    if (!sub || !sub_table) throw std::invalid_argument("alignment needs the subgroup table");
    CharTable tmp{g.type(), std::vector<std::string>(static_cast<std::size_t>(n)), chars};
    const auto br = branching(g, tmp, *sub, *sub_table);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> res;
      for (int mu = 0; mu < sub_table->num_irreps(); ++mu)
        for (long m = 0; m < br[static_cast<std::size_t>(i)][static_cast<std::size_t>(mu)]; ++m)
          res.push_back(sub_table->labels[static_cast<std::size_t>(mu)]);
      std::sort(res.begin(), res.end());
      int match = -1;
      for (int lab = 0; lab < n; ++lab) {
        const std::string& L = t.labels[static_cast<std::size_t>(lab)];
        std::vector<std::string> want;
        long deg;
        if (g.type() == WeylType::B3) {
          want = published_b3_to_a2().at(L);
          const auto bar = L.find('|');
          auto size_of = [](const std::string& part) -> long {
            if (part == "-") return 0;
            long s = 0;
            for (std::size_t k = 0; k < part.size(); ++k) {
              if (part[k] == '^') continue;
              if (k > 0 && part[k - 1] == '^') s += (part[k] - '0') - 1;  // previous digit repeated
              else s += part[k] - '0';
            }
            return s;
          };
          const long a = size_of(L.substr(0, bar)), b = size_of(L.substr(bar + 1));
          const long d = chars[static_cast<std::size_t>(i)][0];
          if (3 * chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(cls_of_gen(2))] != d * (a - b)) continue;
          deg = d;
        } else {
          want = published_f4_to_b3().at(L);
          deg = published_f4_degrees()[static_cast<std::size_t>(lab)];
        }
        std::sort(want.begin(), want.end());
        if (want == res && deg == chars[static_cast<std::size_t>(i)][0]) {
          if (match >= 0) throw CharTableError("character matches two labels");
          match = lab;
        }
      }
      if (match < 0) throw CharTableError("character matches no published label");
      if (assigned[static_cast<std::size_t>(match)] >= 0) throw CharTableError("label matched twice");
      assigned[static_cast<std::size_t>(match)] = i;
    }
  }
  for (int lab = 0; lab < n; ++lab) t.values.push_back(chars[static_cast<std::size_t>(assigned[static_cast<std::size_t>(lab)])]);
  return t;
}

/// Groups and labelled tables for the whole chain, computed once.
struct WeylChain {
  std::array<std::unique_ptr<WeylGroup>, 4> groups;
  std::array<CharTable, 4> tables;

  const WeylGroup& group(WeylType t) const { return *groups[static_cast<std::size_t>(t)]; }
  const CharTable& table(WeylType t) const { return tables[static_cast<std::size_t>(t)]; }
};

inline const WeylChain& weyl_chain() {
  static const WeylChain chain = [] {
    WeylChain c;
    for (int i = 0; i < 4; ++i) c.groups[static_cast<std::size_t>(i)] = std::make_unique<WeylGroup>(static_cast<WeylType>(i));
    c.tables[0] = label_characters(*c.groups[0], dixon_characters(*c.groups[0]));
    c.tables[1] = label_characters(*c.groups[1], dixon_characters(*c.groups[1]));
    c.tables[2] = label_characters(*c.groups[2], dixon_characters(*c.groups[2]), c.groups[1].get(), &c.tables[1]);
    c.tables[3] = label_characters(*c.groups[3], dixon_characters(*c.groups[3]), c.groups[2].get(), &c.tables[2]);
    return c;
  }();
  return chain;
}

inline const WeylGroup& weyl_group(WeylType t) { return weyl_chain().group(t); }
inline const CharTable& character_table(WeylType t) { return weyl_chain().table(t); }

/// Subgroup one step down the chain.
inline WeylType parent_subgroup(WeylType t) {
  if (t == WeylType::A1) throw std::invalid_argument("A1 has no subgroup in the chain");
  return static_cast<WeylType>(static_cast<int>(t) - 1);
}

// ---------------------------------------------------------------------------
// Central constants

/// c(lambda): when w0 is central, sign * p^{N_s chi(r_s)/chi(1)} q^{N_l chi(r_l)/chi(1)}
/// with sign = chi(w0)/chi(1); otherwise the unsigned monomial whose square is
/// the scalar of T_{w0}^2.
inline Monomial central_constant(WeylType t, const std::string& label) {
  const WeylGroup& g = weyl_group(t);
  const CharTable& tab = character_table(t);
  const int i = tab.index_of(label);
  const long d = tab.degree(i);
  const long xs = tab.value(i, g.class_of(g.short_reflection()));
  const long xl = g.long_reflection() >= 0 ? tab.value(i, g.class_of(g.long_reflection())) : 0;
  const long ns = g.num_short_positive(), nl = g.num_long_positive();
  if ((ns * xs) % d != 0 || (nl * xl) % d != 0) throw CharTableError("non-integral central exponent");
  Monomial m{1, mpq_class(ns * xs / d), mpq_class(nl * xl / d)};
  if (g.is_central(g.longest())) {
    const long w0 = tab.value(i, g.class_of(g.longest()));
    if (w0 != d && w0 != -d) throw CharTableError("central sign is not +-1");
    m.sign = w0 == d ? 1 : -1;
  }
  return m;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const WeylGroup& g, const CharTable& t) {
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < g.num_classes(); ++c)
    classes.push_back({{"rep_word", g.word(g.class_rep(c))}, {"size", g.class_size(c)}, {"order", g.order(g.class_rep(c))}});
  return {{"type", weyl_name(t.type)}, {"labels", t.labels}, {"classes", classes}, {"values", t.values}};
}

}  // namespace hecke

#endif  // HECKE_WEYL_HPP
