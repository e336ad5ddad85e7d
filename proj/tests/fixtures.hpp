#ifndef THURSTON_TESTS_FIXTURES_HPP
#define THURSTON_TESTS_FIXTURES_HPP

#include <thurston/biset.hpp>

// Machines used across the test suite, built in code so tests do not depend
// on the parser.
namespace fixtures {

using namespace thurston;

// z^2 - 1 with the basis of the classical two-state presentation:
//   0.a = 1,  1.a = b.0,  0.b = 0,  1.b = a.1
// marked points: a around -1, b around 0, third generator eliminated.
inline SphereBiset basilica() {
  GroupPresentation G = GroupPresentation::sphere(3, {kInf, kInf, kInf}, 2);
  G.names = {"a", "b", "c"};
  std::map<int, Row> rows;
  rows[0] = Row{{1, 0}, {Word::one(), Word::gen(1)}};
  rows[1] = Row{{0, 1}, {Word::one(), Word::gen(0)}};
  return make_sphere_biset(G, 2, rows);
}

// z^d with marked points 0 and infinity: the degree-d adding machine.
inline SphereBiset adding_machine(int d) {
  GroupPresentation G = GroupPresentation::sphere(2, {kInf, kInf}, 1);
  G.names = {"t", "tbar"};
  Row r;
  r.perm.resize(d);
  r.cof.resize(d);
  for (int i = 0; i < d; ++i) {
    r.perm[i] = (i + 1) % d;
    r.cof[i] = i == d - 1 ? Word::gen(0) : Word::one();
  }
  std::map<int, Row> rows{{0, r}};
  SphereBiset B = make_sphere_biset(G, d, rows);
  B.angle_order = true;
  B.adding_gen = 1;  // the eliminated generator encircles infinity
  return B;
}

// x.g = g^2.x on one letter: word lengths double, the machine is not
// contracting.
inline SphereBiset doubling_machine() {
  GroupPresentation G = GroupPresentation::sphere(2, {kInf, kInf}, 1);
  std::map<int, Row> rows{{0, Row{{0}, {Word::gen(0, 2)}}}};
  return make_sphere_biset(G, 1, rows);
}

// z^2 - 1 rebased so that the product of the two finite peripheral
// generators is the exact adding machine; basis letters are in base-2
// angle order (letter j corresponds to the sector of angles (j/2,(j+1)/2)).
//   a around -1, b around 0, relation a.b.g_inf = 1:
//   0.a = a^-1.1, 1.a = ab.0, 0.b = 0, 1.b = a.1
inline SphereBiset basilica_angle() {
  GroupPresentation G = GroupPresentation::sphere(3, {kInf, kInf, kInf}, 2);
  G.names = {"a", "b", "c"};
  Word a = Word::gen(0), b = Word::gen(1);
  std::map<int, Row> rows;
  rows[0] = Row{{1, 0}, {inverse(a, G), multiply(a, b, G)}};
  rows[1] = Row{{0, 1}, {Word::one(), a}};
  SphereBiset B = make_sphere_biset(G, 2, rows);
  B.angle_order = true;
  B.adding_gen = 2;
  return B;
}

}  // namespace fixtures

#endif
