#ifndef THURSTON_GROUP_HPP
#define THURSTON_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace thurston {

// Orders: 0 encodes infinity, otherwise the finite order (1 = trivial factor).
constexpr long long kInf = 0;

enum class GroupKind { Sphere, Cryst };

struct PresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MismatchedPresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Marked-sphere group: peripheral generators g_0..g_{n-1} subject to
// g_0 g_1 ... g_{n-1} = 1, with one generator eliminated via the relation,
// and finite orders optionally installed on the remaining free-product
// factors.  Cryst is the fixed group Z^2 x| Z/2 (flip acts by -1), whose
// "peripheral" classes are the four conjugacy classes of involutions.
struct GroupPresentation {
  GroupKind kind = GroupKind::Sphere;
  int n = 0;                     // number of peripheral generators (sphere)
  std::vector<long long> orders; // per generator; kInf = infinite
  int eliminated = -1;
  // Set when all orders are finite and the order relation on the eliminated
  // generator had to be dropped; verdicts derived through this presentation
  // are only upper approximations of the true orbisphere group.
  bool relaxed = false;
  std::vector<std::string> names;

  static GroupPresentation sphere(int n, std::vector<long long> orders = {},
                                  int eliminated = -1) {
    GroupPresentation g;
    g.kind = GroupKind::Sphere;
    g.n = n;
    if (n < 2) throw PresentationError("sphere group needs at least 2 marked points");
    g.orders = orders.empty() ? std::vector<long long>(n, kInf) : std::move(orders);
    if ((int)g.orders.size() != n) throw PresentationError("orders size mismatch");
    g.eliminated = eliminated >= 0 ? eliminated : g.pick_eliminated();
    if (g.orders[g.eliminated] != kInf) {
      for (long long o : g.orders)
        if (o == kInf) throw PresentationError("eliminated generator must have infinite order when one exists");
    }
    g.names.resize(n);
    for (int i = 0; i < n; ++i) g.names[i] = "g" + std::to_string(i + 1);
    return g;
  }

  static GroupPresentation cryst() {
    GroupPresentation g;
    g.kind = GroupKind::Cryst;
    g.n = 4;                       // four involution classes
    g.orders = {2, 2, 2, 2};
    g.names = {"t0", "t1", "s"};
    return g;
  }

  int pick_eliminated() const {
    for (int i = n - 1; i >= 0; --i)
      if (orders[i] == kInf) return i;
    return n - 1;  // all finite: relaxed quotient will drop this order
  }

  int peripheral_count() const { return n; }

  bool same_as(const GroupPresentation& o) const {
    return kind == o.kind && n == o.n && orders == o.orders && eliminated == o.eliminated;
  }
};

struct Syllable {
  int gen = 0;
  long long exp = 0;
  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
  friend bool operator<(const Syllable& a, const Syllable& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.exp < b.exp;
  }
};

struct CrystElem {
  long long x = 0, y = 0;
  int flip = 0;
  friend bool operator==(const CrystElem& a, const CrystElem& b) {
    return a.x == b.x && a.y == b.y && a.flip == b.flip;
  }
  friend bool operator<(const CrystElem& a, const CrystElem& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.flip < b.flip;
  }
};

// Canonical exponent for an order-o generator: representative in
// (-floor((o-1)/2), ..., ceil((o-1)/2)], ties broken positive.
inline long long canonical_exp(long long e, long long order) {
  if (order == kInf) return e;
  long long r = e % order;
  if (r < 0) r += order;
  if (r > (order - 1) / 2 + ((order - 1) % 2)) r -= order;
  // the expression above is ceil((order-1)/2)
  return r;
}

// Reduced word in a free product of cyclics (sphere kind) or an exact
// element of Z^2 x| Z/2 (cryst kind).  Words are immutable values.
struct Word {
  GroupKind kind = GroupKind::Sphere;
  std::vector<Syllable> syls;  // sphere
  CrystElem ce;                // cryst

  static Word one(GroupKind k = GroupKind::Sphere) {
    Word w; w.kind = k; return w;
  }
  static Word gen(int g, long long e = 1) {
    Word w; w.kind = GroupKind::Sphere;
    if (e != 0) w.syls.push_back({g, e});
    return w;
  }
  static Word cryst(long long x, long long y, int flip) {
    Word w; w.kind = GroupKind::Cryst; w.ce = {x, y, flip & 1}; return w;
  }

  bool trivial() const {
    return kind == GroupKind::Sphere ? syls.empty()
                                     : (ce.x == 0 && ce.y == 0 && ce.flip == 0);
  }
  size_t length() const { return syls.size(); }
  // Total syllable weight; used as the word-norm for budgets.
  long long norm() const {
    if (kind == GroupKind::Cryst)
      return std::llabs(ce.x) + std::llabs(ce.y) + ce.flip;
    long long s = 0;
    for (auto& sy : syls) s += std::llabs(sy.exp);
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) {
    if (a.kind != b.kind) return false;
    return a.kind == GroupKind::Sphere ? a.syls == b.syls : a.ce == b.ce;
  }
  friend bool operator<(const Word& a, const Word& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == GroupKind::Cryst) return a.ce < b.ce;
    return a.syls < b.syls;
  }
};

namespace detail {
// Push one syllable onto a reduced syllable stack, keeping it reduced.
inline void push_syllable(std::vector<Syllable>& out, Syllable s,
                          const GroupPresentation& G) {
  s.exp = canonical_exp(s.exp, G.orders[s.gen]);
  if (s.exp == 0 || G.orders[s.gen] == 1) return;
  if (!out.empty() && out.back().gen == s.gen) {
    long long e = canonical_exp(out.back().exp + s.exp, G.orders[s.gen]);
    out.pop_back();
    if (e != 0) push_syllable(out, {s.gen, e}, G);
    return;
  }
  out.push_back(s);
}
}  // namespace detail

inline Word reduce(const Word& w, const GroupPresentation& G) {
  if (w.kind == GroupKind::Cryst) return w;
  Word out = Word::one(GroupKind::Sphere);
  for (auto& s : w.syls) detail::push_syllable(out.syls, s, G);
  return out;
}

inline Word multiply(const Word& a, const Word& b, const GroupPresentation& G) {
  if (a.kind != b.kind)
    throw MismatchedPresentation("multiply: words of different kinds");
  if (a.kind == GroupKind::Cryst) {
    // (n,e)(m,f) = (n + (-1)^e m, e xor f)
    long long sx = a.ce.flip ? -b.ce.x : b.ce.x;
    long long sy = a.ce.flip ? -b.ce.y : b.ce.y;
    return Word::cryst(a.ce.x + sx, a.ce.y + sy, a.ce.flip ^ b.ce.flip);
  }
  Word out = Word::one(GroupKind::Sphere);
  out.syls = a.syls;
  for (auto& s : b.syls) detail::push_syllable(out.syls, s, G);
  return out;
}

inline Word inverse(const Word& w, const GroupPresentation& G) {
  if (w.kind == GroupKind::Cryst) {
    // (n,0)^-1 = (-n,0); (n,1)^-1 = (n,1)
    if (w.ce.flip) return w;
    return Word::cryst(-w.ce.x, -w.ce.y, 0);
  }
  Word out = Word::one(GroupKind::Sphere);
  for (auto it = w.syls.rbegin(); it != w.syls.rend(); ++it)
    detail::push_syllable(out.syls, {it->gen, -it->exp}, G);
  return out;
}

inline Word power(const Word& w, long long k, const GroupPresentation& G) {
  Word base = k < 0 ? inverse(w, G) : w;
  long long m = k < 0 ? -k : k;
  Word out = Word::one(w.kind);
  for (long long i = 0; i < m; ++i) out = multiply(out, base, G);
  return out;
}

inline Word conjugate(const Word& u, const Word& w, const GroupPresentation& G) {
  return multiply(multiply(u, w, G), inverse(u, G), G);
}

// Word for the peripheral generator of index a; the eliminated generator is
// the explicit product forced by g_0 ... g_{n-1} = 1.
inline Word peripheral_word(int a, const GroupPresentation& G) {
  if (G.kind == GroupKind::Cryst) {
    static const long long px[4] = {0, 1, 1, 0};
    static const long long py[4] = {0, 0, 1, 1};
    return Word::cryst(px[a], py[a], 1);
  }
  if (a != G.eliminated) return reduce(Word::gen(a), G);
  // g_e = g_{e-1}^-1 ... g_0^-1 . g_{n-1}^-1 ... g_{e+1}^-1
  Word w = Word::one(GroupKind::Sphere);
  for (int i = G.eliminated - 1; i >= 0; --i)
    w = multiply(w, Word::gen(i, -1), G);
  for (int i = G.n - 1; i > G.eliminated; --i)
    w = multiply(w, Word::gen(i, -1), G);
  return reduce(w, G);
}

// --- conjugacy classes -----------------------------------------------------

// Canonical form: cyclic reduction followed by lexicographically minimal
// rotation.  In a free product of cyclics two cyclically reduced words are
// conjugate iff they are rotations of each other.
struct ConjClass {
  Word rep;

  bool trivial() const { return rep.trivial(); }
  friend bool operator==(const ConjClass& a, const ConjClass& b) { return a.rep == b.rep; }
  friend bool operator!=(const ConjClass& a, const ConjClass& b) { return !(a == b); }
  friend bool operator<(const ConjClass& a, const ConjClass& b) { return a.rep < b.rep; }
};

inline ConjClass conj_class(const Word& w0, const GroupPresentation& G) {
  if (w0.kind == GroupKind::Cryst) {
    CrystElem c = w0.ce;
    if (c.flip) {
      // (n,1) ~ (n + 2m, 1) and ~ (-n + 2m, 1): class is n mod 2
      c.x = ((c.x % 2) + 2) % 2;
      c.y = ((c.y % 2) + 2) % 2;
    } else {
      // (n,0) ~ (-n,0)
      CrystElem m{-c.x, -c.y, 0};
      if (m < c) c = m;
    }
    ConjClass out; out.rep = Word::one(GroupKind::Cryst); out.rep.ce = c;
    return out;
  }
  Word w = reduce(w0, G);
  // cyclic reduction: merge matching first/last syllables
  while (w.syls.size() >= 2 && w.syls.front().gen == w.syls.back().gen) {
    Syllable first = w.syls.front(), last = w.syls.back();
    std::vector<Syllable> mid(w.syls.begin() + 1, w.syls.end() - 1);
    long long e = canonical_exp(first.exp + last.exp, G.orders[first.gen]);
    Word nw = Word::one(GroupKind::Sphere);
    if (e != 0) detail::push_syllable(nw.syls, {first.gen, e}, G);
    for (auto& s : mid) detail::push_syllable(nw.syls, s, G);
    if (nw.syls == w.syls) break;
    w = nw;
  }
  // minimal rotation
  if (w.syls.size() > 1) {
    std::vector<Syllable> best = w.syls;
    std::vector<Syllable> cur = w.syls;
    for (size_t i = 1; i < w.syls.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    w.syls = best;
  }
  ConjClass out; out.rep = w;
  return out;
}

inline ConjClass inverse_class(const ConjClass& c, const GroupPresentation& G) {
  return conj_class(inverse(c.rep, G), G);
}

// Does c equal class(gamma_a^k) for some peripheral index a and k != 0?
inline std::optional<std::pair<int, long long>> peripheral_membership(
    const ConjClass& c, const GroupPresentation& G) {
  if (c.trivial()) return std::nullopt;
  if (G.kind == GroupKind::Cryst) {
    if (!c.rep.ce.flip) return std::nullopt;
    static const long long px[4] = {0, 1, 1, 0};
    static const long long py[4] = {0, 0, 1, 1};
    for (int a = 0; a < 4; ++a)
      if (c.rep.ce.x == px[a] && c.rep.ce.y == py[a]) return std::make_pair(a, 1LL);
    return std::nullopt;
  }
  if (c.rep.syls.size() == 1 && c.rep.syls[0].gen != G.eliminated)
    return std::make_pair(c.rep.syls[0].gen, c.rep.syls[0].exp);
  // powers of the eliminated generator
  Word ge = peripheral_word(G.eliminated, G);
  for (int sign : {1, -1}) {
    Word acc = Word::one(GroupKind::Sphere);
    Word step = sign > 0 ? ge : inverse(ge, G);
    for (long long k = 1; k <= (long long)c.rep.syls.size() + 2; ++k) {
      acc = multiply(acc, step, G);
      ConjClass cc = conj_class(acc, G);
      if (cc.trivial()) break;  // finite order exhausted
      if (cc == c) return std::make_pair(G.eliminated, sign * k);
      if (cc.rep.syls.size() > c.rep.syls.size()) break;
    }
  }
  return std::nullopt;
}

// --- orbisphere structures -------------------------------------------------

// ord: peripheral index -> {1,2,...} u {inf}.  Value 1 marks a removable
// point (its peripheral generator dies in the quotient).
struct OrbisphereStructure {
  std::vector<long long> ord;

  long long operator[](int a) const { return ord[a]; }
  int size() const { return (int)ord.size(); }
  friend bool operator==(const OrbisphereStructure& a, const OrbisphereStructure& b) {
    return a.ord == b.ord;
  }
};

// chi = 2 - sum_a (1 - 1/ord(a)), with 1/inf = 0.
inline Rational euler_characteristic(const OrbisphereStructure& o) {
  Rational chi(2);
  for (long long v : o.ord) {
    if (v == kInf) chi = chi - Rational(1);
    else chi = chi - (Rational(1) - Rational(1, v));
  }
  return chi;
}

// Rewrite a word over presentation `from` into presentation `to` given the
// image of every peripheral generator of `from`.
inline Word map_word(const Word& w, const std::vector<Word>& images,
                     const GroupPresentation& to) {
  Word out = Word::one(images.empty() ? GroupKind::Sphere : images[0].kind);
  if (w.kind == GroupKind::Cryst)
    throw PresentationError("map_word: cryst words carry no syllables");
  for (auto& s : w.syls)
    out = multiply(out, power(images[s.gen], s.exp, to), to);
  return reduce(out, to);
}

// Quotient of a sphere presentation by gamma_a^{ord(a)}.  When every order is
// finite the relation on the eliminated generator cannot be imposed without
// leaving free products of cyclics; it is dropped and `relaxed` is set.
// If the current eliminated generator would get a finite order while another
// generator stays infinite, the presentation is re-eliminated first; the
// returned mapper rewrites words of G into the new presentation.
struct QuotientResult {
  GroupPresentation group;
  std::vector<Word> gen_images;  // peripheral generators of G in the quotient
};

inline QuotientResult quotient(const GroupPresentation& G,
                               const OrbisphereStructure& ord) {
  if (G.kind != GroupKind::Sphere)
    throw PresentationError("quotient: sphere presentations only");
  if ((int)ord.ord.size() != G.n) throw PresentationError("quotient: ord size mismatch");
  int elim = G.eliminated;
  if (ord[elim] != kInf) {
    int fresh = -1;
    for (int i = 0; i < G.n; ++i)
      if (ord[i] == kInf) { fresh = i; break; }
    if (fresh >= 0) elim = fresh;
  }
  GroupPresentation Q;
  Q.kind = GroupKind::Sphere;
  Q.n = G.n;
  Q.orders = ord.ord;
  Q.eliminated = elim;
  Q.names = G.names;
  if (Q.orders[elim] != kInf) {
    Q.orders[elim] = kInf;  // dropped relation
    Q.relaxed = true;
  }
  QuotientResult res;
  res.group = Q;
  res.gen_images.resize(G.n);
  for (int a = 0; a < G.n; ++a) res.gen_images[a] = peripheral_word(a, Q);
  return res;
}

inline Word map_into_quotient(const Word& w, const QuotientResult& q) {
  return map_word(w, q.gen_images, q.group);
}

}  // namespace thurston

#endif
