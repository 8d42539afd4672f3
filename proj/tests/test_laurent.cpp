#include "doctest.h"

#include <random>

#include "knotsw/laurent.hpp"

using namespace knotsw;

namespace {

VariableSet T() { return VariableSet::single("t"); }

LaurentPoly t_pow(std::int64_t e2, Int c = 1) {
  return LaurentPoly::term(T(), Monomial::var(1, 0, e2), c);
}

LaurentPoly random_poly(std::mt19937& rng, const VariableSet& vs,
                        int max_terms = 5) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::int64_t> e2(-6, 6);
  LaurentPoly p(vs);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m = Monomial::one(vs.size());
    for (std::size_t v = 0; v < vs.size(); ++v) m.exp2[v] = e2(rng);
    p.add_term(m, coef(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("ring ops on the documented examples") {
  // (t - 1 + t^-1)^2 = t^2 - 2t + 3 - 2t^-1 + t^-2
  LaurentPoly p = t_pow(2) - t_pow(0) + t_pow(-2);
  LaurentPoly sq = p * p;
  LaurentPoly expect = t_pow(4) + t_pow(2, -2) + t_pow(0, 3) + t_pow(-2, -2) +
                       t_pow(-4);
  CHECK(sq == expect);
  // additive identity
  CHECK(p + LaurentPoly(T()) == p);
  // (t^{1/2} - t^{-1/2})(t^{1/2} + t^{-1/2}) = t - t^{-1}
  LaurentPoly a = t_pow(1) - t_pow(-1);
  LaurentPoly b = t_pow(1) + t_pow(-1);
  CHECK(a * b == t_pow(2) - t_pow(-2));
}

TEST_CASE("variable set mismatch is an error, extension is explicit") {
  LaurentPoly p = t_pow(2);
  LaurentPoly q = LaurentPoly::constant(VariableSet::single("s"), 1);
  CHECK_THROWS_AS(p + q, domain_error);
  VariableSet both({"t", "s"});
  CHECK_NOTHROW(p.extended_to(both) + q.extended_to(both));
}

TEST_CASE("divide_exact on the documented examples") {
  // (t - t^-1) / (t^{1/2} - t^{-1/2}) = t^{1/2} + t^{-1/2}
  LaurentPoly num = t_pow(2) - t_pow(-2);
  LaurentPoly den = t_pow(1) - t_pow(-1);
  CHECK(divide_exact(num, den) == t_pow(1) + t_pow(-1));
  // p / p = 1
  LaurentPoly p = t_pow(2, 3) - t_pow(0, 5) + t_pow(-2, 3);
  CHECK(divide_exact(p, p) == LaurentPoly::constant(T(), 1));
  // (t + 1) / (t - 1) is non-exact
  LaurentPoly tp1 = t_pow(2) + t_pow(0);
  LaurentPoly tm1 = t_pow(2) - t_pow(0);
  CHECK_THROWS_AS(divide_exact(tp1, tm1), division_error);
}

TEST_CASE("divide_exact recovers a random factor") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    VariableSet vs = trial % 2 ? VariableSet({"t1", "t2"}) : T();
    LaurentPoly a = random_poly(rng, vs);
    LaurentPoly b = random_poly(rng, vs);
    if (b.is_zero()) continue;
    CHECK(divide_exact(a * b, b) == a);
  }
}

TEST_CASE("substitute examples and homomorphism property") {
  VariableSet two({"u1", "u2"});
  // identification u2 -> u1
  LaurentPoly p = LaurentPoly::variable(two, 0) * LaurentPoly::variable(two, 1);
  VariableSet one = VariableSet::single("u1");
  LaurentPoly r = substitute(p, one, {Monomial::var(1, 0, 2), Monomial::var(1, 0, 2)});
  CHECK(r == LaurentPoly::variable(one, 0, 4));
  // relabel t = s^2
  LaurentPoly d = t_pow(2) - t_pow(0) + t_pow(-2);
  VariableSet sv = VariableSet::single("s");
  LaurentPoly ds = substitute(d, sv, {Monomial::var(1, 0, 4)});
  CHECK(ds == parse_poly("1*s^(2) - 1 + 1*s^(-2)", sv));
  // k(t1^{1/2}-t1^{-1/2})(t2^{1/2}-t2^{-1/2}) at t1,t2 -> t
  VariableSet tt({"t1", "t2"});
  LaurentPoly f1 = LaurentPoly::variable(tt, 0, 1) - LaurentPoly::variable(tt, 0, -1);
  LaurentPoly f2 = LaurentPoly::variable(tt, 1, 1) - LaurentPoly::variable(tt, 1, -1);
  LaurentPoly prod = Int(3) * (f1 * f2);
  LaurentPoly sub = substitute(prod, T(), {Monomial::var(1, 0, 2), Monomial::var(1, 0, 2)});
  LaurentPoly half = t_pow(1) - t_pow(-1);
  CHECK(sub == Int(3) * (half * half));
  // fractional-result exponent must error: t1 appears at 1/2, image s^{1/2}
  CHECK_THROWS_AS(substitute(f1, sv, {Monomial::var(1, 0, 1), Monomial::var(1, 0, 2)}),
                  domain_error);
}

TEST_CASE("substitute is a ring homomorphism on randoms") {
  std::mt19937 rng(777);
  VariableSet vs({"t1", "t2"});
  VariableSet tgt({"x"});
  for (int trial = 0; trial < 100; ++trial) {
    LaurentPoly a = random_poly(rng, vs);
    LaurentPoly b = random_poly(rng, vs);
    std::vector<Monomial> imgs{Monomial::var(1, 0, 2), Monomial::var(1, 0, -4)};
    CHECK(substitute(a * b, tgt, imgs) ==
          substitute(a, tgt, imgs) * substitute(b, tgt, imgs));
    CHECK(substitute(a + b, tgt, imgs) ==
          substitute(a, tgt, imgs) + substitute(b, tgt, imgs));
  }
}

TEST_CASE("evaluate_all_ones") {
  // kt - (2k+1) + kt^-1 at k=3 sums to -1
  LaurentPoly p = t_pow(2, 3) + t_pow(0, -7) + t_pow(-2, 3);
  CHECK(evaluate_all_ones(p) == -1);
  CHECK(evaluate_all_ones(LaurentPoly(T())) == 0);
  VariableSet tt({"t1", "t2"});
  LaurentPoly f1 = LaurentPoly::variable(tt, 0, 1) - LaurentPoly::variable(tt, 0, -1);
  LaurentPoly f2 = LaurentPoly::variable(tt, 1, 1) - LaurentPoly::variable(tt, 1, -1);
  CHECK(evaluate_all_ones(Int(2) * (f1 * f2)) == 0);
  // ring homomorphism to Z
  std::mt19937 rng(42);
  for (int i = 0; i < 50; ++i) {
    LaurentPoly a = random_poly(rng, tt), b = random_poly(rng, tt);
    CHECK(evaluate_all_ones(a * b) == evaluate_all_ones(a) * evaluate_all_ones(b));
    CHECK(evaluate_all_ones(a + b) == evaluate_all_ones(a) + evaluate_all_ones(b));
  }
}

TEST_CASE("canonical_rep centers, fixes sign, and ignores units") {
  // t^2 - t -> t^{1/2} - t^{-1/2}
  LaurentPoly p = t_pow(4) - t_pow(2);
  CHECK(canonical_rep(p) == t_pow(1) - t_pow(-1));
  // sign normalization
  LaurentPoly d = t_pow(2) - t_pow(0) + t_pow(-2);
  CHECK(canonical_rep(-d) == d);
  CHECK_THROWS_AS(canonical_rep(LaurentPoly(T())), domain_error);
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    VariableSet vs({"t1", "t2"});
    LaurentPoly a = random_poly(rng, vs);
    if (a.is_zero()) continue;
    CHECK(canonical_rep(canonical_rep(a)) == canonical_rep(a));
    std::uniform_int_distribution<std::int64_t> e2(-5, 5);
    Monomial u = Monomial::one(2);
    u.exp2[0] = e2(rng);
    u.exp2[1] = e2(rng);
    LaurentPoly unit = LaurentPoly::term(vs, u, i % 2 ? 1 : -1);
    CHECK(canonical_rep(unit * a) == canonical_rep(a));
    CHECK(doteq(unit * a, a));
  }
}

TEST_CASE("classify") {
  LaurentPoly trefoil = t_pow(2) - t_pow(0) + t_pow(-2);
  PolyClass c = classify(trefoil);
  CHECK(c.symmetric);
  CHECK(c.a_polynomial);
  CHECK(c.monic);
  LaurentPoly tk2 = t_pow(2, 2) + t_pow(0, -5) + t_pow(-2, 2);
  c = classify(tk2);
  CHECK(c.symmetric);
  CHECK(c.a_polynomial);
  CHECK_FALSE(c.monic);
  c = classify(t_pow(2) + t_pow(0));
  CHECK_FALSE(c.symmetric);
  std::mt19937 rng(1);
  CHECK_THROWS_AS(classify(random_poly(rng, VariableSet({"a", "b"}))),
                  domain_error);
}

TEST_CASE("render / parse round trip") {
  LaurentPoly p = t_pow(2, 3) + t_pow(0, -7) + t_pow(-2, 3);
  CHECK(render(p) == "3*t^(1) - 7 + 3*t^(-1)");
  LaurentPoly h = t_pow(1) - t_pow(-1);
  CHECK(render(h) == "1*t^(1/2) - 1*t^(-1/2)");
  CHECK(render(LaurentPoly(T())) == "0");
  std::mt19937 rng(4242);
  for (int i = 0; i < 100; ++i) {
    VariableSet vs = i % 2 ? VariableSet({"t1", "t2"}) : T();
    LaurentPoly a = random_poly(rng, vs);
    CHECK(parse_poly(render(a), vs) == a);
  }
}

TEST_CASE("malformed polynomial text throws parse errors") {
  VariableSet tv = VariableSet::single("t");
  const char* bads[] = {"",    "+",       "1*",      "t^",     "t^(1/3)",
                        "1**t", "1*t^(1/2", "2*q^(1)", "1 + + 2"};
  for (const char* b : bads)
    CHECK_THROWS_AS(parse_poly(b, tv), parse_error);
  // lenient forms that are accepted
  CHECK(parse_poly("t", tv) == LaurentPoly::variable(tv, 0));
  CHECK(parse_poly("-t^2", tv) == -LaurentPoly::variable(tv, 0, 4));
  CHECK(parse_poly("0", tv).is_zero());
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(31337);
  VariableSet vs({"t1", "t2"});
  for (int i = 0; i < 60; ++i) {
    LaurentPoly a = random_poly(rng, vs), b = random_poly(rng, vs),
                c = random_poly(rng, vs);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}
