#ifndef THURSTON_BISET_HPP
#define THURSTON_BISET_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace thurston {

struct BisetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonSphereBiset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One generator's slice of a wreath recursion: x . g = cof[x] . perm[x].
struct Row {
  std::vector<int> perm;
  std::vector<Word> cof;
};

// Left-free biset over a sphere or crystallographic group, presented by a
// wreath recursion on d basis letters.  Rows are stored for every peripheral
// generator; the eliminated generator's row is derived from the sphere
// relation at construction (and cross-checked if supplied).
struct SphereBiset {
  GroupPresentation group;
  int d = 0;
  std::vector<Row> rows;  // sphere: indexed by peripheral index; cryst: t0,t1,s
  std::vector<std::string> letter_names;
  bool angle_order = false;  // basis declared compatible with base-d encoding
  int adding_gen = -1;       // declared infinity generator, -1 if none

  int letters() const { return d; }

  // single generator step, sign = +-1
  std::pair<Word, int> step(int x, int row_idx, int sign) const {
    const Row& r = rows[row_idx];
    if (sign > 0) return {r.cof[x], r.perm[x]};
    int y = -1;
    for (int i = 0; i < d; ++i)
      if (r.perm[i] == x) { y = i; break; }
    return {inverse(r.cof[y], group), y};
  }

  std::pair<Word, int> act(int x, const Word& w) const {
    Word cof = Word::one(w.kind);
    int cur = x;
    if (group.kind == GroupKind::Cryst) {
      auto apply = [&](int idx, long long e) {
        int sg = e < 0 ? -1 : 1;
        for (long long i = 0; i < std::llabs(e); ++i) {
          auto [h, y] = step(cur, idx, sg);
          cof = multiply(cof, h, group);
          cur = y;
        }
      };
      apply(0, w.ce.x);
      apply(1, w.ce.y);
      if (w.ce.flip) apply(2, 1);
      return {cof, cur};
    }
    for (auto& s : w.syls) {
      int sg = s.exp < 0 ? -1 : 1;
      for (long long i = 0; i < std::llabs(s.exp); ++i) {
        auto [h, y] = step(cur, s.gen, sg);
        cof = multiply(cof, h, group);
        cur = y;
      }
    }
    return {cof, cur};
  }

  // Action on X^{tensor k}: the group element enters at the deepest letter
  // and the cofactor threads towards the front.
  std::pair<Word, std::vector<int>> tensor_act(std::vector<int> u, const Word& w) const {
    Word carry = w;
    for (int i = (int)u.size() - 1; i >= 0; --i) {
      auto [h, y] = act(u[i], carry);
      u[i] = y;
      carry = h;
    }
    return {carry, u};
  }

  Word peripheral(int a) const { return peripheral_word(a, group); }
};

namespace detail {
// Act by a word using only the provided rows (deriving the eliminated row).
inline std::pair<Word, int> act_partial(const std::map<int, Row>& rows, int d,
                                        const GroupPresentation& G, int x,
                                        const Word& w) {
  Word cof = Word::one(GroupKind::Sphere);
  int cur = x;
  for (auto& s : w.syls) {
    const Row& r = rows.at(s.gen);
    int sg = s.exp < 0 ? -1 : 1;
    for (long long i = 0; i < std::llabs(s.exp); ++i) {
      if (sg > 0) {
        cof = multiply(cof, r.cof[cur], G);
        cur = r.perm[cur];
      } else {
        int y = -1;
        for (int j = 0; j < d; ++j)
          if (r.perm[j] == cur) { y = j; break; }
        cof = multiply(cof, inverse(r.cof[y], G), G);
        cur = y;
      }
    }
  }
  return {cof, cur};
}

inline void check_row(const Row& r, int d, GroupKind k, const std::string& who) {
  if ((int)r.perm.size() != d || (int)r.cof.size() != d)
    throw BisetError("row size mismatch for " + who);
  std::vector<bool> seen(d, false);
  for (int i = 0; i < d; ++i) {
    if (r.perm[i] < 0 || r.perm[i] >= d || seen[r.perm[i]])
      throw BisetError("row of " + who + " is not a permutation");
    seen[r.perm[i]] = true;
    if (r.cof[i].kind != k) throw BisetError("cofactor kind mismatch in " + who);
  }
}
}  // namespace detail

// Build a sphere-kind machine from rows for the non-eliminated generators.
// If a row for the eliminated generator is supplied it is compared against
// the derived one; a mismatch means the sphere relation acts nontrivially.
inline SphereBiset make_sphere_biset(const GroupPresentation& G, int d,
                                     const std::map<int, Row>& given) {
  if (G.kind != GroupKind::Sphere) throw BisetError("make_sphere_biset: wrong kind");
  if (d < 1) throw BisetError("basis must be nonempty");
  SphereBiset B;
  B.group = G;
  B.d = d;
  std::map<int, Row> nonelim;
  for (auto& [g, r] : given) {
    if (g < 0 || g >= G.n) throw BisetError("transition for unknown generator");
    detail::check_row(r, d, GroupKind::Sphere, G.names[g]);
    if (g != G.eliminated) nonelim[g] = r;
  }
  for (int g = 0; g < G.n; ++g)
    if (g != G.eliminated && !nonelim.count(g))
      throw BisetError("missing transitions for generator " + G.names[g]);
  // derive the eliminated row from the relation
  Word ew = peripheral_word(G.eliminated, G);
  Row erow;
  erow.perm.resize(d);
  erow.cof.resize(d);
  for (int x = 0; x < d; ++x) {
    auto [h, y] = detail::act_partial(nonelim, d, G, x, ew);
    erow.cof[x] = reduce(h, G);
    erow.perm[x] = y;
  }
  if (auto it = given.find(G.eliminated); it != given.end()) {
    for (int x = 0; x < d; ++x)
      if (it->second.perm[x] != erow.perm[x] ||
          !(reduce(it->second.cof[x], G) == erow.cof[x]))
        throw BisetError("sphere relation does not act trivially (generator " +
                         G.names[G.eliminated] + ", letter " + std::to_string(x) + ")");
  }
  B.rows.resize(G.n);
  for (auto& [g, r] : nonelim) B.rows[g] = r;
  B.rows[G.eliminated] = erow;
  B.letter_names.resize(d);
  for (int i = 0; i < d; ++i) B.letter_names[i] = std::to_string(i);
  return B;
}

// Build a cryst machine from rows for t0, t1, s and check the defining
// relators s^2, [t0,t1], (s t0)^2, (s t1)^2 act trivially.
inline SphereBiset make_cryst_biset(int d, const std::vector<Row>& rows) {
  if (rows.size() != 3) throw BisetError("cryst machine needs rows for t0, t1, s");
  SphereBiset B;
  B.group = GroupPresentation::cryst();
  B.d = d;
  B.rows = rows;
  for (int i = 0; i < 3; ++i)
    detail::check_row(rows[i], d, GroupKind::Cryst, B.group.names[i]);
  B.letter_names.resize(d);
  for (int i = 0; i < d; ++i) B.letter_names[i] = std::to_string(i);
  auto seq = [&](int x, std::vector<std::pair<int, int>> steps) {
    Word cof = Word::one(GroupKind::Cryst);
    int cur = x;
    for (auto [idx, sg] : steps) {
      auto [h, y] = B.step(cur, idx, sg);
      cof = multiply(cof, h, B.group);
      cur = y;
    }
    return std::make_pair(cof, cur);
  };
  for (int x = 0; x < d; ++x) {
    auto r1 = seq(x, {{2, 1}, {2, 1}});
    auto r2 = seq(x, {{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    auto r3 = seq(x, {{2, 1}, {0, 1}, {2, 1}, {0, 1}});
    auto r4 = seq(x, {{2, 1}, {1, 1}, {2, 1}, {1, 1}});
    for (auto& r : {r1, r2, r3, r4})
      if (!r.first.trivial() || r.second != x)
        throw BisetError("cryst relator acts nontrivially at letter " + std::to_string(x));
  }
  return B;
}

// --- lifts and portraits -----------------------------------------------------

struct Lift {
  ConjClass cls;
  int degree = 0;
};

// Lifts of a conjugacy class: cycles of the permutation induced by a
// representative; each cycle of length k contributes the class of the
// cofactor product along the cycle, starting at the smallest letter.
inline std::vector<Lift> lift_class(const ConjClass& c, const SphereBiset& B) {
  Word rep = c.rep;
  std::vector<int> sigma(B.d);
  std::vector<Word> cof(B.d);
  for (int x = 0; x < B.d; ++x) {
    auto [h, y] = B.act(x, rep);
    sigma[x] = y;
    cof[x] = h;
  }
  std::vector<bool> used(B.d, false);
  std::vector<Lift> out;
  for (int x = 0; x < B.d; ++x) {
    if (used[x]) continue;
    Word w = Word::one(rep.kind);
    int k = 0, y = x;
    do {
      used[y] = true;
      w = multiply(w, cof[y], B.group);
      y = sigma[y];
      ++k;
    } while (y != x);
    out.push_back({conj_class(w, B.group), k});
  }
  return out;
}

struct Portrait {
  std::vector<int> image;    // B_*: peripheral index -> peripheral index
  std::vector<int> degree;   // local degree at each index
  // degrees of trivial lifts per class (unmarked critical preimages)
  std::vector<std::vector<int>> trivial_lifts;

  // every periodic cycle of B_* carries an index of local degree > 1
  bool hyperbolic() const {
    int n = (int)image.size();
    std::vector<bool> periodic(n, false);
    for (int a = 0; a < n; ++a) {
      int cur = a;
      for (int i = 0; i < n; ++i) cur = image[cur];
      int probe = cur;
      do { periodic[probe] = true; probe = image[probe]; } while (probe != cur);
    }
    std::vector<bool> done(n, false);
    for (int a = 0; a < n; ++a) {
      if (!periodic[a] || done[a]) continue;
      bool crit = false;
      int cur = a;
      do { done[cur] = true; crit |= degree[cur] > 1; cur = image[cur]; } while (cur != a);
      if (!crit) return false;
    }
    return true;
  }
};

// Induced map on peripheral classes.  Every peripheral class must occur among
// the lifts of exactly one class, each peripheral lift with winding one.
inline Portrait portrait(const SphereBiset& B) {
  int n = B.group.peripheral_count();
  Portrait P;
  P.image.assign(n, -1);
  P.degree.assign(n, 0);
  P.trivial_lifts.assign(n, {});
  for (int a = 0; a < n; ++a) {
    ConjClass ca = conj_class(B.peripheral(a), B.group);
    for (auto& lift : lift_class(ca, B)) {
      if (lift.cls.trivial()) {
        P.trivial_lifts[a].push_back(lift.degree);
        continue;
      }
      auto pm = peripheral_membership(lift.cls, B.group);
      if (!pm || pm->second != 1)
        throw NonSphereBiset("peripheral class " + B.group.names[a] +
                             " has a non-peripheral lift");
      int ap = pm->first;
      if (P.image[ap] != -1)
        throw NonSphereBiset("peripheral class " + B.group.names[ap] +
                             " appears as a lift twice");
      P.image[ap] = a;
      P.degree[ap] = lift.degree;
    }
  }
  for (int a = 0; a < n; ++a)
    if (P.image[a] == -1)
      throw NonSphereBiset("peripheral class " + B.group.names[a] +
                           " is not a lift of any class");
  return P;
}

// sum over all peripheral-class lifts of (degree - 1); equals 2d-2 for
// bisets of branched self-coverings.
inline int branching_count(const SphereBiset& B, const Portrait& P) {
  int s = 0;
  for (int a = 0; a < (int)P.image.size(); ++a) s += P.degree[a] - 1;
  for (auto& tl : P.trivial_lifts)
    for (int k : tl) s += k - 1;
  return s;
}

inline bool riemann_hurwitz_ok(const SphereBiset& B, const Portrait& P) {
  return branching_count(B, P) == 2 * B.d - 2;
}

inline void validate_full(const SphereBiset& B) {
  Portrait P = portrait(B);
  if (!riemann_hurwitz_ok(B, P))
    throw NonSphereBiset("branching count violates Riemann-Hurwitz");
}

// Minimal orbisphere structure from the portrait data alone.
//
// A point gets order infinity iff it lies on (equivalently, in the forward
// orbit of) a critical portrait cycle.  Otherwise its order is the lcm of the
// iterated local degrees over all backward chains, where a chain may start
// one step below the marked set at an unmarked critical preimage; those
// contribute the degrees of the trivial lifts of the chain's first marked
// class.
inline OrbisphereStructure minimal_orbisphere_from_portrait(const Portrait& P) {
  int n = (int)P.image.size();
  std::vector<bool> inf(n, false);
  {
    std::vector<bool> done(n, false);
    for (int a = 0; a < n; ++a) {
      if (done[a]) continue;
      // find the cycle reachable from a
      std::vector<int> path;
      std::vector<int> mark(n, -1);
      int cur = a;
      while (mark[cur] == -1) {
        mark[cur] = (int)path.size();
        path.push_back(cur);
        cur = P.image[cur];
      }
      bool crit = false;
      if (mark[cur] != -1 && std::find(path.begin(), path.end(), cur) != path.end()) {
        for (size_t i = mark[cur]; i < path.size(); ++i) crit |= P.degree[path[i]] > 1;
        if (crit)
          for (size_t i = mark[cur]; i < path.size(); ++i) inf[path[i]] = true;
      }
      for (int v : path) done[v] = true;
    }
  }
  auto trivial_factor = [&](int b) {
    long long t = 1;
    for (int k : P.trivial_lifts[b]) t = std::lcm(t, (long long)k);
    return t;
  };
  OrbisphereStructure ord;
  ord.ord.assign(n, 1);
  std::vector<std::vector<int>> preimages(n);
  for (int b = 0; b < n; ++b) preimages[P.image[b]].push_back(b);
  for (int a = 0; a < n; ++a) {
    if (inf[a]) { ord.ord[a] = kInf; continue; }
    // states (vertex, product of degrees along the walk into a)
    std::set<std::pair<int, long long>> seen;
    std::vector<std::pair<int, long long>> frontier{{a, 1}};
    seen.insert({a, 1});
    long long acc = trivial_factor(a);
    while (!frontier.empty()) {
      auto [b, p] = frontier.back();
      frontier.pop_back();
      for (int c : preimages[b]) {
        long long q = p * P.degree[c];
        if (q > (1LL << 40)) throw BisetError("unbounded local degrees off the critical cycles");
        acc = std::lcm(acc, q * trivial_factor(c));
        if (seen.insert({c, q}).second) frontier.push_back({c, q});
      }
    }
    ord.ord[a] = acc;
  }
  return ord;
}

inline OrbisphereStructure minimal_orbisphere(const SphereBiset& B) {
  return minimal_orbisphere_from_portrait(portrait(B));
}

// Is `ord` bounded with respect to B: infinite exactly on the minimal
// structure's infinite part, and ord(a) deg_a | ord(B_*(a)).
inline bool bounded_structure(const OrbisphereStructure& ord, const SphereBiset& B) {
  Portrait P = portrait(B);
  OrbisphereStructure min = minimal_orbisphere_from_portrait(P);
  int n = (int)ord.ord.size();
  if (n != (int)P.image.size()) return false;
  for (int a = 0; a < n; ++a) {
    if ((ord[a] == kInf) != (min[a] == kInf)) return false;
    if (ord[a] != kInf) {
      long long target = ord[P.image[a]];
      if (target != kInf && (target % (ord[a] * P.degree[a])) != 0) return false;
    }
  }
  return true;
}

// --- constructions -----------------------------------------------------------

// B1 (x) B2 over the same group: basis = pairs (i,j) |-> i*d2+j, the group
// element enters through the second factor.
inline SphereBiset tensor(const SphereBiset& B1, const SphereBiset& B2) {
  if (!B1.group.same_as(B2.group)) throw MismatchedPresentation("tensor: group mismatch");
  SphereBiset T;
  T.group = B1.group;
  T.d = B1.d * B2.d;
  T.rows.resize(B1.rows.size());
  for (size_t g = 0; g < B1.rows.size(); ++g) {
    Row r;
    r.perm.resize(T.d);
    r.cof.resize(T.d);
    for (int i = 0; i < B1.d; ++i)
      for (int j = 0; j < B2.d; ++j) {
        Word h = B2.rows[g].cof[j];
        int j2 = B2.rows[g].perm[j];
        auto [h2, i2] = B1.act(i, h);
        r.cof[i * B2.d + j] = h2;
        r.perm[i * B2.d + j] = i2 * B2.d + j2;
      }
    T.rows[g] = r;
  }
  T.letter_names.resize(T.d);
  for (int i = 0; i < B1.d; ++i)
    for (int j = 0; j < B2.d; ++j)
      T.letter_names[i * B2.d + j] = B1.letter_names[i] + B2.letter_names[j];
  return T;
}

// Principal biset of the identity on one letter.
inline SphereBiset trivial_biset(const GroupPresentation& G) {
  SphereBiset B;
  B.group = G;
  B.d = 1;
  size_t ngen = G.kind == GroupKind::Cryst ? 3 : (size_t)G.n;
  B.rows.resize(ngen);
  for (size_t g = 0; g < ngen; ++g) {
    B.rows[g].perm = {0};
    Word w = G.kind == GroupKind::Cryst
                 ? (g == 0 ? Word::cryst(1, 0, 0) : g == 1 ? Word::cryst(0, 1, 0) : Word::cryst(0, 0, 1))
                 : Word::gen((int)g);
    B.rows[g].cof = {reduce(w, G)};
  }
  B.letter_names = {"0"};
  return B;
}

// Change of basis x'_j = h_j . x_{pi(j)}.
inline SphereBiset rebase(const SphereBiset& B, const std::vector<int>& pi,
                          const std::vector<Word>& h) {
  std::vector<int> pinv(B.d);
  for (int j = 0; j < B.d; ++j) pinv[pi[j]] = j;
  auto rebased_row = [&](const Word& gen_word) {
    Row r;
    r.perm.resize(B.d);
    r.cof.resize(B.d);
    for (int j = 0; j < B.d; ++j) {
      auto [c, y] = B.act(pi[j], gen_word);
      int j2 = pinv[y];
      r.perm[j] = j2;
      r.cof[j] = multiply(multiply(h[j], c, B.group), inverse(h[j2], B.group), B.group);
    }
    return r;
  };
  if (B.group.kind == GroupKind::Cryst) {
    std::vector<Row> rows = {rebased_row(Word::cryst(1, 0, 0)),
                             rebased_row(Word::cryst(0, 1, 0)),
                             rebased_row(Word::cryst(0, 0, 1))};
    SphereBiset R = make_cryst_biset(B.d, rows);
    R.letter_names = B.letter_names;
    return R;
  }
  std::map<int, Row> rows;
  for (int g = 0; g < B.group.n; ++g)
    if (g != B.group.eliminated) rows[g] = rebased_row(Word::gen(g));
  SphereBiset R = make_sphere_biset(B.group, B.d, rows);
  R.letter_names = B.letter_names;
  R.angle_order = false;
  R.adding_gen = B.adding_gen;
  return R;
}

}  // namespace thurston

#endif
