#ifndef THURSTON_CONTRACTION_HPP
#define THURSTON_CONTRACTION_HPP

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "biset.hpp"

namespace thurston {

struct InvalidStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotStateClosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource limits for the semi-decision procedures.  Exhaustion is evidence
// of divergence, never proof.
struct Budget {
  long long max_norm = 64;    // word-norm cap during closures
  size_t max_set = 10000;     // set-size cap during closures
  int rounds = 5;             // dovetail rounds in deciders
  int levy_len = 4;           // initial class-length bound for Levy search
  int levy_period = 4;        // initial period bound
  size_t levy_nodes = 200000; // cap on enumerated classes per round

  Budget scaled(double f) const {
    Budget b = *this;
    b.max_norm = (long long)(b.max_norm * f);
    b.max_set = (size_t)(b.max_set * f);
    b.levy_nodes = (size_t)(b.levy_nodes * f);
    return b;
  }
  static double env_scale() {
    if (const char* s = std::getenv("THURSTON_BUDGET_SCALE")) {
      double f = std::atof(s);
      if (f > 0) return f;
    }
    return 1.0;
  }
  static Budget defaults() { return Budget{}.scaled(env_scale()); }
};

using WordSet = std::set<Word>;

// phi(A) = cofactors of single letters acting through elements of A.
inline WordSet phi(const WordSet& A, const SphereBiset& B) {
  WordSet out;
  for (const Word& g : A)
    for (int x = 0; x < B.d; ++x)
      out.insert(reduce(B.act(x, g).first, B.group));
  return out;
}

struct PsiResult {
  bool ok = false;
  WordSet closure;
  std::vector<Word> frontier;  // last frontier on budget failure
};

// psi(A) = least phi-closed superset of A.
inline PsiResult psi(const WordSet& A, const SphereBiset& B, const Budget& budget) {
  PsiResult r;
  r.closure = A;
  WordSet frontier = A;
  while (!frontier.empty()) {
    WordSet next;
    for (const Word& g : phi(frontier, B)) {
      if (r.closure.count(g)) continue;
      if (g.norm() > budget.max_norm || r.closure.size() >= budget.max_set) {
        r.frontier.assign(frontier.begin(), frontier.end());
        return r;
      }
      r.closure.insert(g);
      next.insert(g);
    }
    frontier = std::move(next);
  }
  r.ok = true;
  return r;
}

struct OmegaResult {
  bool ok = false;
  WordSet attractor;
  std::vector<Word> frontier;
};

// omega(A) = eventual image of phi on psi(A): the iterates decrease once the
// closure is reached, so the fixpoint is the attractor.
inline OmegaResult omega(const WordSet& A, const SphereBiset& B, const Budget& budget) {
  OmegaResult r;
  PsiResult p = psi(A, B, budget);
  if (!p.ok) { r.frontier = p.frontier; return r; }
  WordSet cur = p.closure;
  for (;;) {
    WordSet next = phi(cur, B);
    if (next == cur) break;
    cur = std::move(next);
  }
  r.ok = true;
  r.attractor = std::move(cur);
  return r;
}

struct Nucleus {
  WordSet elems;
  bool contains(const Word& w) const { return elems.count(w) > 0; }
  size_t size() const { return elems.size(); }
};

struct NucleusResult {
  bool ok = false;
  Nucleus nucleus;
  std::vector<Word> frontier;
};

// generating set S = generators u inverses u {1}
inline WordSet symmetric_generators(const SphereBiset& B) {
  WordSet S;
  S.insert(Word::one(B.group.kind));
  if (B.group.kind == GroupKind::Cryst) {
    for (auto w : {Word::cryst(1, 0, 0), Word::cryst(0, 1, 0), Word::cryst(0, 0, 1)}) {
      S.insert(w);
      S.insert(inverse(w, B.group));
    }
    return S;
  }
  for (int g = 0; g < B.group.n; ++g) {
    if (g == B.group.eliminated) continue;
    Word w = reduce(Word::gen(g), B.group);
    if (w.trivial()) continue;  // order-1 factor
    S.insert(w);
    S.insert(inverse(w, B.group));
  }
  return S;
}

// Increasing chain N_0 = {1}, N_k = omega(N_{k-1} S) until stable.
inline NucleusResult nucleus(const SphereBiset& B, const Budget& budget) {
  NucleusResult res;
  WordSet S = symmetric_generators(B);
  WordSet N{Word::one(B.group.kind)};
  for (;;) {
    WordSet NS;
    for (const Word& n : N)
      for (const Word& s : S) NS.insert(multiply(n, s, B.group));
    OmegaResult om = omega(NS, B, budget);
    if (!om.ok) { res.frontier = om.frontier; return res; }
    if (om.attractor == N) break;
    N = std::move(om.attractor);
  }
  res.ok = true;
  res.nucleus.elems = std::move(N);
  return res;
}

// Spot-check the defining inclusion X^{(x) n} s <= N X^{(x) n} for all
// generators and all n <= nmax by direct enumeration.
inline bool certify_nucleus(const Nucleus& N, const SphereBiset& B, int nmax) {
  WordSet S = symmetric_generators(B);
  std::vector<std::vector<int>> level{{}};
  for (int n = 1; n <= nmax; ++n) {
    std::vector<std::vector<int>> next;
    for (auto& u : level)
      for (int x = 0; x < B.d; ++x) {
        auto v = u;
        v.push_back(x);
        next.push_back(v);
      }
    level = std::move(next);
    for (auto& u : level)
      for (const Word& s : S)
        if (!N.contains(reduce(B.tensor_act(u, s).first, B.group))) return false;
  }
  return true;
}

// --- Mealy automaton ---------------------------------------------------------

struct MealyAutomaton {
  std::vector<Word> states;             // sorted nucleus elements
  // transition[q][x] = {output letter, target state index}
  std::vector<std::vector<std::pair<int, int>>> transition;

  int state_index(const Word& w) const {
    auto it = std::lower_bound(states.begin(), states.end(), w);
    if (it == states.end() || !(*it == w)) return -1;
    return (int)(it - states.begin());
  }
  int letters() const { return transition.empty() ? 0 : (int)transition[0].size(); }
};

// Transition structure on a state-closed set: an edge labeled x->y from g to
// h whenever x.g = h.y in B.
inline MealyAutomaton mealy(const Nucleus& N, const SphereBiset& B) {
  MealyAutomaton M;
  M.states.assign(N.elems.begin(), N.elems.end());
  M.transition.resize(M.states.size());
  for (size_t q = 0; q < M.states.size(); ++q) {
    M.transition[q].resize(B.d);
    for (int x = 0; x < B.d; ++x) {
      auto [h, y] = B.act(x, M.states[q]);
      int t = M.state_index(reduce(h, B.group));
      if (t < 0) throw NotStateClosed("state set is not phi-closed");
      M.transition[q][x] = {y, t};
    }
  }
  return M;
}

// --- orbisphere contraction ---------------------------------------------------

// Push a sphere machine through an orbisphere quotient.  The installed order
// relations must act trivially on the basis; this is exactly boundedness of
// the structure and is rechecked here on the quotient rows.
struct QuotientMachine {
  SphereBiset machine;
  bool relaxed = false;
};

inline QuotientMachine quotient_machine(const SphereBiset& B, const OrbisphereStructure& ord) {
  if (B.group.kind != GroupKind::Sphere)
    throw InvalidStructure("quotient_machine: sphere machines only");
  QuotientResult q = quotient(B.group, ord);
  std::map<int, Row> rows;
  for (int g = 0; g < B.group.n; ++g) {
    if (g == q.group.eliminated) continue;
    Row r;
    r.perm = B.rows[g].perm;
    r.cof.resize(B.d);
    for (int x = 0; x < B.d; ++x) r.cof[x] = map_into_quotient(B.rows[g].cof[x], q);
    rows[g] = r;
  }
  QuotientMachine out{make_sphere_biset(q.group, B.d, rows), q.group.relaxed};
  // order relations must act trivially
  for (int a = 0; a < q.group.n; ++a) {
    long long o = ord.ord[a];
    if (o == kInf || a == q.group.eliminated) continue;
    Word rel = power(peripheral_word(a, q.group), o, q.group);
    // the reduced relator is trivial by construction; act with the unreduced
    // power of the generator instead
    Word gen_pow = Word::one(GroupKind::Sphere);
    gen_pow.syls.push_back({a, o});
    for (int x = 0; x < B.d; ++x) {
      Word cof = Word::one(GroupKind::Sphere);
      int cur = x;
      for (long long i = 0; i < o; ++i) {
        cof = multiply(cof, out.machine.rows[a].cof[cur], q.group);
        cur = out.machine.rows[a].perm[cur];
      }
      if (!cof.trivial() || cur != x)
        throw InvalidStructure("structure is not bounded: order relation on " +
                               q.group.names[a] + " acts nontrivially");
    }
    (void)rel;
  }
  return out;
}

struct ContractionVerdict {
  bool contracting = false;
  Nucleus nucleus;          // over the quotient presentation
  SphereBiset quotient;     // machine the nucleus lives on
  bool relaxed = false;     // quotient presentation only surjects onto the
                            // true orbisphere group
  std::vector<Word> frontier;
};

inline ContractionVerdict is_orbisphere_contracting(
    const SphereBiset& B, std::optional<OrbisphereStructure> ord,
    const Budget& budget) {
  ContractionVerdict v;
  if (B.group.kind == GroupKind::Cryst) {
    v.quotient = B;
    NucleusResult r = nucleus(B, budget);
    if (!r.ok) { v.frontier = r.frontier; return v; }
    v.contracting = true;
    v.nucleus = r.nucleus;
    return v;
  }
  OrbisphereStructure o = ord ? *ord : minimal_orbisphere(B);
  if (ord && !bounded_structure(o, B))
    throw InvalidStructure("orbisphere structure is not bounded for this biset");
  QuotientMachine qm = quotient_machine(B, o);
  v.quotient = qm.machine;
  v.relaxed = qm.relaxed;
  NucleusResult r = nucleus(qm.machine, budget);
  if (!r.ok) { v.frontier = r.frontier; return v; }
  v.contracting = true;
  v.nucleus = r.nucleus;
  return v;
}

}  // namespace thurston

#endif
