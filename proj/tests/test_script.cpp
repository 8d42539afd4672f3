#include "doctest.h"

#include "knotsw/script.hpp"

using namespace knotsw;

namespace {

const ScriptValue& find_out(const std::vector<ScriptOutput>& outs,
                            const std::string& name) {
  for (const auto& o : outs)
    if (o.name == name) return o.value;
  throw std::runtime_error("missing output " + name);
}

}  // namespace

TEST_CASE("script: K3 twist surgery end to end") {
  ScriptEngine eng;
  auto outs = eng.run(R"(
# twist-knot surgery on the K3 surface
let X = builtin(K3)
let Y = knot_surgery(X, T1, twist(2))
let TH = theta(Y, X)
emit Y
emit TH
)");
  REQUIRE(outs.size() == 2);
  const auto& y = std::get<ManifoldDescriptor>(find_out(outs, "Y").v);
  CHECK(render(y.sw) == "2*T1^(2) - 5 + 2*T1^(-2)");
  CHECK(swcalc::symplectic_status(y).standard == Tri::no);
  const auto& th = std::get<LaurentPoly>(find_out(outs, "TH").v);
  CHECK(render(th) == "2*T1^(2) - 5 + 2*T1^(-2)");
  std::string text = render_text(outs[0]);
  CHECK(text.find("SW = 2*T1^(2) - 5 + 2*T1^(-2)") != std::string::npos);
  CHECK(text.find("symplectic (standard orientation): no") !=
        std::string::npos);
}

TEST_CASE("script: link surgery and realizability") {
  ScriptEngine eng;
  auto outs = eng.run(R"(
let L = link_surgery(whitehead(2))
let X = builtin(K3)
let A = knot_surgery(X, T1, twist(1))
let B = knot_surgery(A, T2, twist(2))
let C = knot_surgery(B, T3, twist(3))
let R = realizability(C, 2, 3)
emit L
emit R
)");
  const auto& l = std::get<ManifoldDescriptor>(find_out(outs, "L").v);
  CHECK(doteq(l.sw, parse_poly("2*T1^(1)*T2^(1) - 2*T1^(1)*T2^(-1) - "
                               "2*T1^(-1)*T2^(1) + 2*T1^(-1)*T2^(-1)",
                               l.vars())));
  CHECK(std::get<bool>(find_out(outs, "R").v) == false);
}

TEST_CASE("script: restricted pairs") {
  ScriptEngine eng;
  auto outs = eng.run(R"(
let P = e1_restricted()
let Q = knot_surgery_b1(P, twist(3))
let S = sw0(Q)
let F = fiber_sum_b1(P, P)
emit Q
emit S
emit F
)");
  const auto& q = std::get<RestrictedPair>(find_out(outs, "Q").v);
  CHECK(render(q.minus.poly) == "3*T^(2) - 7 + 3*T^(-2)");  // t = T^2
  const auto& s = std::get<LaurentPoly>(find_out(outs, "S").v);
  CHECK(render(s) == "-3*T^(1) + 3*T^(-1)");  // k t^{-1/2} - k t^{1/2}
  const auto& f = std::get<LaurentPoly>(find_out(outs, "F").v);
  CHECK(render(f) == "1");
  std::string text = render_text(outs[0]);
  CHECK(text.find("SUM") != std::string::npos);
}

TEST_CASE("script: structured output is schema-tagged and re-parses") {
  ScriptEngine eng;
  auto outs = eng.run("let X = builtin(K3)\nemit X\n");
  std::string j = render_structured(outs);
  CHECK(j.find("\"schema\": \"knotsw/1\"") != std::string::npos);
  CHECK(j.find("\"sw\": \"1\"") != std::string::npos);
}

TEST_CASE("script: errors carry types") {
  ScriptEngine eng;
  CHECK_THROWS_AS(eng.run("let X = builtin(K4)\n"), domain_error);
  CHECK_THROWS_AS(eng.run("frobnicate\n"), parse_error);
  CHECK_THROWS_AS(eng.run("let X = builtin(K3)\n"
                          "let Y = knot_surgery(X, T9, twist(1))\n"),
                  domain_error);
  CHECK_THROWS_AS(eng.run("emit NOPE\n"), parse_error);
}

TEST_CASE("polynomial round trip through the renderer") {
  // rendered polynomials re-parse to equal values (CLI round-trip contract)
  ScriptEngine eng;
  auto outs = eng.run(R"(
let X = builtin(K3)
let Y = knot_surgery(X, T1, BR(2; 1 1 1))
emit Y
)");
  const auto& y = std::get<ManifoldDescriptor>(find_out(outs, "Y").v);
  CHECK(parse_poly(render(y.sw), y.vars()) == y.sw);
}
