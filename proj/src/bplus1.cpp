#include "knotsw/bplus1.hpp"

#include "knotsw/skein.hpp"

namespace knotsw {

std::size_t TailSeries::var_index() const {
  auto idx = poly.vars().index_of(torus_var);
  if (!idx)
    throw domain_error("tail series lost its torus variable " + torus_var);
  return *idx;
}

namespace bplus1 {

LaurentPoly collapse(const TailSeries& ts) {
  return ts.toward_plus_infinity ? -ts.poly : ts.poly;
}

RestrictedPair e1_restricted(const std::string& torus_var) {
  VariableSet vs = VariableSet::single(torus_var);
  RestrictedPair p;
  p.minus = TailSeries{LaurentPoly::constant(vs, 1), true, torus_var};
  p.plus = TailSeries{LaurentPoly::constant(vs, -1), false, torus_var};
  return p;
}

TailSeries tail_mul(const TailSeries& ts, const LaurentPoly& p) {
  TailSeries out = ts;
  out.poly = ts.poly * p;
  return out;
}

Int coefficient(const TailSeries& ts, std::int64_t v_exp) {
  const std::size_t vi = ts.var_index();
  Int sum = 0;
  for (const auto& [m, c] : ts.poly.terms()) {
    if (m.exp2[vi] % 2 != 0)
      throw domain_error("tail series finite part has half exponents");
    std::int64_t e = m.exp2[vi] / 2;
    std::int64_t gap = ts.toward_plus_infinity ? v_exp - e : e - v_exp;
    // the tail contributes at odd positive offsets (2n+1, n >= 0)
    if (gap >= 1 && gap % 2 == 1) sum += c;
  }
  return sum;
}

bool equal_lemma_holds(const RestrictedPair& pair) {
  return collapse(pair.plus) == collapse(pair.minus);
}

Sw0Result sw0(const RestrictedPair& pair) {
  if (pair.plus.torus_var != pair.minus.torus_var)
    throw domain_error("restricted pair mixes torus variables");
  if (!(pair.plus.poly.vars() == pair.minus.poly.vars()))
    throw domain_error("restricted pair mixes variable sets");
  if (pair.plus.poly.vars().size() != 1)
    throw domain_error("sw0 is defined for one-variable pairs");
  Sw0Result out;
  VariableSet vs = pair.plus.poly.vars();
  out.poly = LaurentPoly(vs);
  auto scan = [&](const TailSeries& ts, bool positive_side) {
    if (ts.poly.is_zero()) return;
    std::int64_t lo = ts.poly.min_exp2(0) / 2 - 2;
    std::int64_t hi = ts.poly.max_exp2(0) / 2 + 2;
    for (std::int64_t m = lo; m <= hi; ++m) {
      if (positive_side && m <= 0) continue;
      if (!positive_side && m > 0) continue;
      Int c = coefficient(ts, m);
      if (c == 0) continue;
      if (m == 0) out.zero_exponent_outside_paper = true;
      out.poly.add_term(Monomial::var(1, 0, 2 * m), c);
    }
  };
  scan(pair.plus, true);
  scan(pair.minus, false);
  return out;
}

long wall_dim(long k_square, long euler, long signature) {
  long num = k_square - 3 * signature - 2 * euler;
  if (((num % 4) + 4) % 4 != 0)
    throw domain_error(
        "class fails the characteristic parity k^2 = 3 sign + 2 e (mod 4)");
  return num / 4;
}

RestrictedPair knot_surgery_b1(const RestrictedPair& pair,
                               const LinkDiagram& K,
                               const B1Hypotheses& hyp) {
  if (!hyp.c_embedded || !hyp.complement_simply_connected ||
      !hyp.simply_connected)
    throw hypothesis_error(
        "b+ = 1 knot surgery needs the c-embedded / pi_1 hypotheses "
        "asserted");
  if (K.n_components() != 1) throw domain_error("needs a knot");
  SkeinEngine eng;
  LaurentPoly delta_s = eng.alexander(K).poly;
  const VariableSet& vs = pair.minus.poly.vars();
  std::vector<Monomial> img{
      Monomial::var(vs.size(), pair.minus.var_index(), 2)};  // s -> v
  LaurentPoly delta_v = substitute(delta_s, vs, img);
  RestrictedPair out;
  out.minus = tail_mul(pair.minus, delta_v);
  out.plus = tail_mul(pair.plus, delta_v);
  if (!equal_lemma_holds(out))
    throw identity_error("restricted pair lost the collapse identity");
  return out;
}

LaurentPoly fiber_sum_b1(const RestrictedPair& a, const RestrictedPair& b) {
  LaurentPoly via_plus = collapse(a.plus) * collapse(b.plus);
  LaurentPoly via_minus = collapse(a.minus) * collapse(b.minus);
  if (!(via_plus == via_minus))
    throw identity_error("fiber sum disagrees between the two chambers");
  return via_plus;
}

LaurentPoly fiber_sum_b1(const RestrictedPair& a, const ManifoldDescriptor& X,
                         const std::string& T) {
  if (X.b_plus <= 1 || !X.b_plus_specified)
    throw hypothesis_error("descriptor side of the fiber sum needs b+ > 1");
  if (!X.torus(T).c_embedded)
    throw hypothesis_error("fiber sum needs a c-embedded torus");
  const std::size_t idx = X.class_index(T);
  VariableSet vs = X.vars();
  // rename the tail variable onto the torus class of X
  std::vector<Monomial> img{Monomial::var(vs.size(), idx, 2)};
  LaurentPoly cp = substitute(collapse(a.plus), vs, img);
  LaurentPoly cm = substitute(collapse(a.minus), vs, img);
  if (!(cp == cm))
    throw identity_error("fiber sum disagrees between the two chambers");
  LaurentPoly vfac = LaurentPoly::variable(vs, idx, 2) -
                     LaurentPoly::variable(vs, idx, -2);
  return cp * X.sw * vfac;
}

RestrictedPair log_transform_b1(const RestrictedPair& pair, long p, long q,
                                const LaurentPoly& y01_sw,
                                const std::string& tau_var) {
  if (p == 0)
    throw domain_error("the b+ = 1 log transform formula needs p != 0");
  // evaluate the tau class of Y(0/1) at 1 and land in the pair's variables
  const VariableSet& vs = pair.minus.poly.vars();
  LaurentPoly corr(vs);
  if (!y01_sw.is_zero()) {
    std::vector<Monomial> images;
    for (const auto& nm : y01_sw.vars().names()) {
      if (nm == tau_var) {
        images.push_back(Monomial::one(vs.size()));
      } else {
        auto idx = vs.index_of(nm);
        if (!idx)
          throw domain_error("Y(0/1) SW carries a class " + nm +
                             " unknown to the restricted pair");
        images.push_back(Monomial::var(vs.size(), *idx, 2));
      }
    }
    corr = substitute(y01_sw, vs, images);
  }
  auto transform = [&](const TailSeries& ts) {
    const std::size_t vi = ts.var_index();
    LaurentPoly v = LaurentPoly::variable(vs, vi, 2);
    LaurentPoly vinv = LaurentPoly::variable(vs, vi, -2);
    // a tail-constant c equals the series with finite part c*(v^{-1}-v)
    // (plus direction) or c*(v-v^{-1}) (minus direction)
    LaurentPoly fold =
        ts.toward_plus_infinity ? corr * (vinv - v) : corr * (v - vinv);
    TailSeries out = ts;
    out.poly = Int(p) * ts.poly + Int(q) * fold;
    return out;
  };
  RestrictedPair out{transform(pair.plus), transform(pair.minus)};
  if (!equal_lemma_holds(out))
    throw identity_error("restricted pair lost the collapse identity");
  return out;
}

}  // namespace bplus1

}  // namespace knotsw
