#pragma once

#include <string>

#include "knotsw/diagram.hpp"
#include "knotsw/laurent.hpp"
#include "knotsw/swcalc.hpp"

namespace knotsw {

/// Exact finite representation of S * Σ_{n>=0} v^{±(2n+1)} with v the
/// variable of the distinguished torus class (v = t^{1/2}). Multiplying by
/// (v - v^{-1}) telescopes the tail to -S (plus direction) or +S (minus
/// direction); no manipulation in the calculus ever truncates.
struct TailSeries {
  LaurentPoly poly;                 // the finite part S
  bool toward_plus_infinity = true;
  std::string torus_var = "T";

  std::size_t var_index() const;
};

/// The pair (SW^+, SW^-) of [T]-perp restricted invariants.
struct RestrictedPair {
  TailSeries plus;
  TailSeries minus;
};

namespace bplus1 {

/// Finite polynomial (v - v^{-1}) * series.
LaurentPoly collapse(const TailSeries& ts);

/// SW^-_{E(1),F} = Σ t^{(2n+1)/2}, SW^+_{E(1),F} = -Σ t^{-(2n+1)/2}.
RestrictedPair e1_restricted(const std::string& torus_var = "T");

TailSeries tail_mul(const TailSeries& ts, const LaurentPoly& p);

/// Coefficient of v^exp (that is, of t^{exp/2}) in the full series; always
/// a finite sum.
Int coefficient(const TailSeries& ts, std::int64_t v_exp);

/// Lemma "equal!": the two collapses agree on every honest pair.
bool equal_lemma_holds(const RestrictedPair& pair);

struct Sw0Result {
  LaurentPoly poly;
  // the paper's examples never have a constant term; a nonzero one is
  // reported as outside its coverage
  bool zero_exponent_outside_paper = false;
};

/// Small-perturbation invariant: positive exponents read from SW^+,
/// negative from SW^-, exponent zero from SW^- (flagged when nonzero).
Sw0Result sw0(const RestrictedPair& pair);

/// delta(k) = (k^2 - 3 sign - 2 e)/4; throws unless the characteristic
/// parity k^2 ≡ 3 sign + 2 e (mod 4) holds.
long wall_dim(long k_square, long euler, long signature);

struct B1Hypotheses {
  bool c_embedded = false;
  bool complement_simply_connected = false;
  bool simply_connected = false;
};

/// SW^±_{X_K,T} = SW^±_{X,T} * Δ_K(t); hypothesis flags are caller
/// asserted.
RestrictedPair knot_surgery_b1(const RestrictedPair& pair,
                               const LinkDiagram& K,
                               const B1Hypotheses& hyp);

/// Fiber sum of two b+ = 1 sides: SW^± SW^± (v - v^{-1})^2, a finite
/// polynomial; both sign choices are computed and must agree.
LaurentPoly fiber_sum_b1(const RestrictedPair& a, const RestrictedPair& b);

/// Fiber sum with a b+ > 1 manifold along its named torus:
/// SW^± * SW_X * (v - v^{-1})^2 with one factor collapsing the tail.
LaurentPoly fiber_sum_b1(const RestrictedPair& a, const ManifoldDescriptor& X,
                         const std::string& T);

/// Log transform at b+ = 1 (p != 0): each side becomes p * tail plus the
/// finite correction q * SW_{Y(0/1)}|_{tau = 1}, folded exactly back into
/// the tail representation.
RestrictedPair log_transform_b1(const RestrictedPair& pair, long p, long q,
                                const LaurentPoly& y01_sw,
                                const std::string& tau_var);

}  // namespace bplus1

}  // namespace knotsw
