#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotsw/diagram.hpp"
#include "knotsw/laurent.hpp"
#include "knotsw/skein.hpp"

namespace knotsw {

enum class Tri { yes, no, unknown };
const char* tri_name(Tri t);

/// A marked torus inside a manifold descriptor. The class vector is over
/// the descriptor's class basis; an all-zero vector marks a nullhomologous
/// torus (log-transform material only).
struct TorusMark {
  std::string name;
  std::vector<long> class_vec;
  bool c_embedded = false;
  bool complement_simply_connected = false;
  bool symplectic = false;
  bool nullhomologous() const;
};

/// Symbolic 4-manifold record. SW values live in the group ring over
/// exponentials of the class basis: the polynomial variable named after a
/// class C stands for exp(C), so t = exp(2[T]) is the square of the
/// variable of [T]. Only carried when b+ > 1 (the b+ = 1 calculus keeps
/// restricted pairs instead).
struct ManifoldDescriptor {
  std::string name;
  long euler = 0;
  long signature = 0;
  int b_plus = 0;
  bool b_plus_specified = true;
  std::vector<std::string> class_basis;
  std::optional<std::vector<std::vector<long>>> pairing;
  LaurentPoly sw;
  std::map<std::string, TorusMark> tori;
  bool simply_connected = false;
  Tri symplectic = Tri::unknown;
  std::optional<std::vector<long>> canonical_class;
  std::optional<std::pair<long, long>> neg_surface;  // (genus, square)
  std::vector<std::string> warnings;

  VariableSet vars() const { return VariableSet(class_basis); }
  const TorusMark& torus(const std::string& tname) const;
  std::size_t class_index(const std::string& cname) const;
};

namespace swcalc {

/// K3: e = 24, sign = -16, b+ = 3, SW = 1, three disjoint c-embedded tori
/// with simply connected complements.
ManifoldDescriptor builtin(const std::string& name);

/// SW_(X;T) = SW_X * (v_T - v_T^{-1}); requires b+ > 1 and a c-embedded
/// torus.
LaurentPoly relative_sw(const ManifoldDescriptor& X, const std::string& T);

/// Fiber sum along the named tori: classes [T1], [T2] become one class,
/// SW multiplies the two relative invariants, e and sign add, and
/// b+' = b1 + b2 + 1.
ManifoldDescriptor fiber_sum(const ManifoldDescriptor& X1,
                             const std::string& T1,
                             const ManifoldDescriptor& X2,
                             const std::string& T2);

/// Internal fiber sum identifying T2's class with T1's. b+ of the result
/// is not specified by the calculus and is flagged as such.
ManifoldDescriptor internal_fiber_sum(const ManifoldDescriptor& X,
                                      const std::string& T1,
                                      const std::string& T2);

/// Knot surgery: SW multiplies by the knot's Alexander polynomial at
/// t = exp(2[T]). Homology, e, sign and b+ are unchanged. `fibered` is a
/// caller-supplied declaration; claiming it for a non-monic polynomial is
/// rejected.
ManifoldDescriptor knot_surgery(const ManifoldDescriptor& X,
                                const std::string& T, const LinkDiagram& K,
                                bool fibered = false,
                                const std::string& knot_name = "K");

/// E(1)_L for a link with n >= 2 components: SW is the multivariable
/// Alexander polynomial at t_j = exp(2[T_j]), e = 12n, sign = -8n,
/// b+ = 2n - 1.
ManifoldDescriptor link_surgery_e1(const LinkDiagram& L);

/// X(X_1..X_n; L): SW = Δ_L(t_1..t_n) * ∏ SW_{E(1)#_{F=T_j}X_j} with the
/// E(1)-fiber-sum factors supplied by relative_sw.
ManifoldDescriptor link_surgery_general(
    const std::vector<ManifoldDescriptor>& Xs,
    const std::vector<std::string>& Ts, const LinkDiagram& L);

/// Generalized log transform on a nullhomologous torus; Y(0/1) is caller
/// supplied, matching the paper's case-by-case usage. Under the dual-torus
/// hypothesis SW' = p SW_Y + q SW_{Y(0/1)}; otherwise the shift sum is
/// collapsed by evaluating the tau class of Y01 at 1.
ManifoldDescriptor log_transform(const ManifoldDescriptor& Y,
                                 const std::string& torus, long p, long q,
                                 const ManifoldDescriptor& Y01,
                                 bool dual_torus_hypothesis,
                                 const std::string& tau_class = "");

/// Order-2 log transform on the torus with class [T_j] + sum lk(j,i)[T_i]:
/// SW' = (w + w^{-1}) * SW|_{t_j -> t_j^2}.
ManifoldDescriptor double_transform(const ManifoldDescriptor& X, int j,
                                    const std::vector<long>& lks);

/// Exact quotient SW_{XK} / SW_X; a non-exact division signals a violated
/// surgery identity.
LaurentPoly theta(const ManifoldDescriptor& XK, const ManifoldDescriptor& X);

struct GromovResult {
  LaurentPoly gr_multiplier;  // A_K as a polynomial in tau = exp([T])
  std::vector<long> canonical_class;
};

/// Gromov-invariant update for a fibered knot surgery on a symplectic
/// pair: Gr multiplies by A_K(tau) = tau^{2d} Δ_K(tau^2) and the canonical
/// class gains 2d[T].
GromovResult gromov_knot_surgery(const ManifoldDescriptor& X,
                                 const std::string& T, const LinkDiagram& K);

struct SymplecticVerdict {
  Tri standard = Tri::unknown;
  Tri reversed = Tri::unknown;  // never yes
};
SymplecticVerdict symplectic_status(const ManifoldDescriptor& X);

/// Log-transform realizability necessary condition:
/// |SW(1,...,1)| = |p_1 * ... * p_n|.
bool realizability_check(const ManifoldDescriptor& X,
                         const std::vector<long>& multiplicities);

/// SW(-beta) = (-1)^{(e+sign)/4} SW(beta) for every class; throws if e+sign
/// is not divisible by 4 while SW != 0.
bool symmetry_check(const ManifoldDescriptor& X);

/// User-supplied class identification (the engine never infers relations
/// from a linking matrix): substitutes the variable of `from_class` by the
/// variable of `to_class` and drops `from_class` from the basis.
ManifoldDescriptor identify_classes(const ManifoldDescriptor& X,
                                    const std::string& from_class,
                                    const std::string& to_class);

}  // namespace swcalc

}  // namespace knotsw
