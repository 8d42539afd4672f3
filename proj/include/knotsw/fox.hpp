#pragma once

#include <vector>

#include "knotsw/diagram.hpp"
#include "knotsw/laurent.hpp"
#include "knotsw/skein.hpp"

namespace knotsw {

/// Wirtinger presentation of the diagram's group: one generator per arc
/// (maximal over-strand segment), one relation per crossing of the form
/// x_out = x_o^{ε} x_in x_o^{-ε} with ε the crossing sign.
struct WirtingerPresentation {
  int n_generators = 0;
  std::vector<int> gen_component;  // owning component per generator
  struct Relation {
    int out_gen, in_gen, over_gen;
    int sign;
  };
  std::vector<Relation> relations;
  int n_link_components = 0;
};

/// Requires a connected diagram with at least one crossing.
WirtingerPresentation wirtinger(const LinkDiagram& d);

/// Variable set t_1..t_n (or t for a knot) used by the Fox route.
VariableSet fox_vars(int n_components);

/// Abelianized Fox derivative matrix: one row per relation, one column per
/// generator, entries over t_1..t_n.
std::vector<std::vector<LaurentPoly>> alexander_matrix(
    const WirtingerPresentation& w);

/// Determinant of the matrix with the last relation dropped and column
/// `drop_col` deleted (fraction-free elimination, exact divisions only).
LaurentPoly alexander_minor(const WirtingerPresentation& w, int drop_col);

/// Symmetric multivariable Alexander polynomial as a canonical ≐
/// representative: the one-column minor, divided exactly by
/// (t_{comp} - 1) when the diagram has >= 2 components. Split links give 0.
LaurentPoly alexander_multi(const LinkDiagram& d, int drop_col = 0);

/// Torres-style cross check against the skein engine: the multivariable
/// polynomial at t_i -> t^2, times (t - t^{-1}), must match the one
/// variable skein output at s -> t up to ≐.
bool torres_crosscheck(const LinkDiagram& d, SkeinEngine& engine);

/// Conway axiom on a chosen positive crossing: raw skein values satisfy
/// val(d) = val(change) + (s - s^{-1}) val(resolve) exactly.
bool conway_axiom_check(const LinkDiagram& d, int k, SkeinEngine& engine);

/// Doubling axiom: the multivariable polynomial of the (2,1)-cable of
/// component j equals (T + T^{-1}) times the polynomial at t_j -> t_j^2,
/// where T = t_j^{1/2} ∏_{i≠j} t_i^{lk(j,i)/2} in the engine's variables,
/// up to ≐.
bool doubling_axiom_check(const LinkDiagram& d, int j);

}  // namespace knotsw
