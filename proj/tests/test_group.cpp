#include <catch2/catch_amalgamated.hpp>
#include <thurston/group.hpp>

#include <random>

using namespace thurston;

static GroupPresentation free3() {
  return GroupPresentation::sphere(3, {kInf, kInf, kInf}, 2);
}

TEST_CASE("multiply_and_reduce basics") {
  GroupPresentation G = free3();
  Word g1 = Word::gen(0);
  REQUIRE(multiply(g1, inverse(g1, G), G).trivial());

  GroupPresentation H = GroupPresentation::sphere(3, {2, kInf, kInf}, 2);
  // with o_1 = 2: g1^3 -> g1
  REQUIRE(power(Word::gen(0), 3, H) == reduce(Word::gen(0), H));
  // sphere relation: g1 g2 g3 = 1 with g3 eliminated
  Word prod = multiply(multiply(Word::gen(0), Word::gen(1), G), peripheral_word(2, G), G);
  REQUIRE(prod.trivial());
}

TEST_CASE("normal form confluence on random products") {
  GroupPresentation G = GroupPresentation::sphere(4, {2, 3, kInf, kInf}, 3);
  std::mt19937 rng(12345);
  auto random_word = [&](int len) {
    Word w = Word::one();
    for (int i = 0; i < len; ++i) {
      int g = (int)(rng() % 3);
      long long e = (long long)(rng() % 5) - 2;
      if (e == 0) e = 1;
      w = multiply(w, Word::gen(g, e), G);
    }
    return w;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Word a = random_word(2), b = random_word(2), c = random_word(2);
    REQUIRE(multiply(multiply(a, b, G), c, G) == multiply(a, multiply(b, c, G), G));
  }
}

TEST_CASE("conjugacy classes") {
  GroupPresentation G = free3();
  Word g1 = Word::gen(0), g2 = Word::gen(1);
  // g1 g2 g1^-1 ~ g2
  Word w = multiply(multiply(g1, g2, G), inverse(g1, G), G);
  REQUIRE(conj_class(w, G) == conj_class(g2, G));
  // g2 g1 ~ g1 g2
  REQUIRE(conj_class(multiply(g2, g1, G), G) == conj_class(multiply(g1, g2, G), G));
  REQUIRE(conj_class(Word::one(), G).trivial());
}

TEST_CASE("conj_class separates non-conjugate words in rank 2") {
  // exhaustive over reduced words of length <= 4 in F2: classes agree
  // exactly when words are conjugate (checked by brute conjugation search)
  GroupPresentation G = GroupPresentation::sphere(3, {kInf, kInf, kInf}, 2);
  std::vector<Word> words;
  std::vector<Word> letters = {Word::gen(0), Word::gen(0, -1), Word::gen(1), Word::gen(1, -1)};
  std::vector<Word> cur = {Word::one()};
  words.push_back(Word::one());
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (auto& w : cur)
      for (auto& l : letters) {
        Word v = multiply(w, l, G);
        if ((int)v.norm() == len) {
          next.push_back(v);
          words.push_back(v);
        }
      }
    cur = next;
  }
  // brute conjugators of norm <= 2
  std::vector<Word> conjugators = {Word::one()};
  for (auto& l : letters) conjugators.push_back(l);
  for (auto& l : letters)
    for (auto& m : letters) {
      Word v = multiply(l, m, G);
      if (v.norm() == 2) conjugators.push_back(v);
    }
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const Word& a = words[rng() % words.size()];
    const Word& b = words[rng() % words.size()];
    bool brute = false;
    for (auto& u : conjugators)
      if (conjugate(u, a, G) == b) brute = true;
    if (brute) REQUIRE(conj_class(a, G) == conj_class(b, G));
    if (conj_class(a, G) != conj_class(b, G)) REQUIRE_FALSE(brute);
  }
}

TEST_CASE("peripheral membership") {
  GroupPresentation G = free3();
  REQUIRE(peripheral_membership(conj_class(Word::gen(0, 2), G), G) ==
          std::make_pair(0, 2LL));
  // class((g1 g2)^-1) is the eliminated generator's class
  Word w = inverse(multiply(Word::gen(0), Word::gen(1), G), G);
  auto pm = peripheral_membership(conj_class(w, G), G);
  REQUIRE(pm);
  REQUIRE(pm->first == 2);
  REQUIRE(pm->second == 1);
  // a commutator in a 4-marked group is essential
  GroupPresentation H = GroupPresentation::sphere(4, {kInf, kInf, kInf, kInf}, 3);
  Word c = multiply(multiply(Word::gen(0), Word::gen(1), H),
                    multiply(Word::gen(0, -1), Word::gen(1, -1), H), H);
  REQUIRE_FALSE(peripheral_membership(conj_class(c, H), H));
}

TEST_CASE("euler characteristic") {
  REQUIRE(euler_characteristic({{2, 2, 2, 2}}) == Rational(0));
  REQUIRE(euler_characteristic({{kInf, kInf, kInf}}) == Rational(-1));
  REQUIRE(euler_characteristic({{2, 3, 6}}) == Rational(0));
  // permutation invariance
  REQUIRE(euler_characteristic({{2, 6, 3}}) == Rational(0));
  REQUIRE(euler_characteristic({{3, 2, 6}}) == Rational(0));
}

TEST_CASE("quotient presentations") {
  GroupPresentation G = free3();
  // all-infinity: unchanged free presentation
  QuotientResult q1 = quotient(G, {{kInf, kInf, kInf}});
  REQUIRE_FALSE(q1.group.relaxed);
  REQUIRE(q1.group.orders == std::vector<long long>{kInf, kInf, kInf});

  // (inf, 2, inf): C_inf * C_2, g2^3 -> g2, g1^4 reduces only freely
  QuotientResult q2 = quotient(G, {{kInf, 2, kInf}});
  REQUIRE(power(Word::gen(1), 3, q2.group) == reduce(Word::gen(1), q2.group));
  REQUIRE(power(Word::gen(0), 4, q2.group).norm() == 4);

  // all finite: one order dropped, flagged
  GroupPresentation H = GroupPresentation::sphere(4, {kInf, kInf, kInf, kInf}, 3);
  QuotientResult q3 = quotient(H, {{2, 2, 2, 2}});
  REQUIRE(q3.group.relaxed);
  REQUIRE(q3.group.orders[q3.group.eliminated] == kInf);
}

TEST_CASE("cryst arithmetic") {
  GroupPresentation K = GroupPresentation::cryst();
  Word n1 = Word::cryst(3, -2, 1);
  // every flip is an involution
  REQUIRE(multiply(n1, n1, K).trivial());
  Word a = Word::cryst(1, 0, 0), b = Word::cryst(0, 1, 0);
  REQUIRE(multiply(a, b, K) == multiply(b, a, K));
  Word s = Word::cryst(0, 0, 1);
  // s t s = t^-1
  REQUIRE(multiply(multiply(s, a, K), s, K) == inverse(a, K));
  // conjugacy: (n,0) ~ (-n,0); flips classified mod 2
  REQUIRE(conj_class(Word::cryst(2, 1, 0), K) == conj_class(Word::cryst(-2, -1, 0), K));
  REQUIRE(conj_class(Word::cryst(3, 2, 1), K) == conj_class(Word::cryst(1, 0, 1), K));
  auto pm = peripheral_membership(conj_class(Word::cryst(5, 2, 1), K), K);
  REQUIRE(pm);
  REQUIRE(pm->first == 1);
}
