#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotsw/errors.hpp"

namespace knotsw {

// Crossing slots follow the PD convention fixed for this project: in
// X(a,b,c,d) the under-strand enters at a and exits at c, and b,c,d
// complete the clockwise order of edge ends around the crossing. The over
// strand occupies b and d; over_in_b records at which of the two it enters.
// Sign: +1 exactly when the over strand runs b -> d (right-handed under the
// clockwise listing). kSignOverBToD is the single documented constant that
// would flip the convention if a parity audit ever demanded it.
inline constexpr int kSignOverBToD = +1;

struct CrossingRec {
  std::array<int, 4> s{};
  bool over_in_b = true;

  int under_in() const { return s[0]; }
  int under_out() const { return s[2]; }
  int over_in() const { return over_in_b ? s[1] : s[3]; }
  int over_out() const { return over_in_b ? s[3] : s[1]; }
  int sign() const { return over_in_b ? kSignOverBToD : -kSignOverBToD; }

  bool operator==(const CrossingRec&) const = default;
};

// Where an edge label occurs: crossing index + slot index (0..3).
struct EdgeOcc {
  int crossing = -1;
  int slot = -1;
  bool operator==(const EdgeOcc&) const = default;
};

/// Oriented combinatorial link diagram. Immutable after construction; all
/// moves return new diagrams. Components are cyclic edge sequences in
/// traversal order, each starting at its basepoint edge; 0-crossing unknot
/// components ("free loops") are carried as an explicit count since the
/// edge-based encoding degenerates for them.
class LinkDiagram {
 public:
  /// Builds and fully validates a diagram: every edge label appears exactly
  /// twice (once entering a crossing, once leaving), successor cycles are
  /// consistent, and every connected piece passes the Euler face check
  /// v - e + f = 2.
  static LinkDiagram make(std::vector<CrossingRec> crossings, int free_loops);

  /// Unknot / unlink with no crossings.
  static LinkDiagram unlink(int components);

  int n_crossings() const { return static_cast<int>(cross_.size()); }
  int n_edge_components() const { return static_cast<int>(comps_.size()); }
  int n_free_loops() const { return free_loops_; }
  int n_components() const { return n_edge_components() + free_loops_; }
  const std::vector<CrossingRec>& crossings() const { return cross_; }
  const std::vector<std::vector<int>>& components() const { return comps_; }

  /// Component index (0-based) owning an edge label.
  int component_of(int edge) const;

  int writhe() const;
  int self_writhe(int comp) const;
  /// Linking number of two distinct components (free loops link nothing).
  int linking_number(int ci, int cj) const;
  int total_linking(int cj) const;

  /// (c, b): total crossings and bad crossings on the based ordered
  /// traverse. For exactly two components b counts only bad crossings
  /// between the components; otherwise all bad crossings count.
  std::pair<int, int> complexity() const;
  std::optional<int> first_bad_crossing() const;
  bool is_descending() const { return complexity().second == 0; }

  /// True iff some component (or free loop) shares no crossing with the
  /// rest and there are at least two components.
  bool is_split() const;
  /// Crossing-incidence graph connectivity over edge components only.
  bool is_connected() const;

  LinkDiagram crossing_change(int k) const;
  LinkDiagram resolve(int k) const;
  LinkDiagram mirror() const;
  LinkDiagram reversed() const;

  /// Replaces component j by its (2,1)-cable: blackboard 2-parallel,
  /// -w full twists (w = self writhe) restoring the 0-framing, then one
  /// extra positive crossing. Component count is preserved.
  LinkDiagram cable_2_1(int j) const;

  /// Reorders components (permutation over current indices, free loops
  /// excluded) and/or moves basepoints. Used by the invariance tests.
  LinkDiagram with_component_order(const std::vector<int>& perm) const;
  LinkDiagram with_basepoint(int comp, int edge) const;

  /// Joins component c1 of this diagram with component c2 of other into a
  /// connected sum (test utility for multiplicativity checks).
  LinkDiagram connect_sum(const LinkDiagram& other, int c1, int c2) const;

  /// Lexicographically least edge relabeling of the crossing list over
  /// component order / basepoint choices; memoization key.
  std::string canonical_code() const;

  bool operator==(const LinkDiagram&) const = default;

 private:
  std::vector<CrossingRec> cross_;
  std::vector<std::vector<int>> comps_;
  int free_loops_ = 0;

  std::map<int, EdgeOcc> in_occ_, out_occ_;  // edge -> occurrence
  std::map<int, int> comp_of_;

  LinkDiagram() = default;
  void index_edges();
  void derive_components();
  void validate() const;

  struct TraverseStep {
    int crossing;
    bool as_under;
    bool first_visit;
    bool inter_component;
  };
  std::vector<TraverseStep> traverse() const;

  friend LinkDiagram relabel_for_tests(const LinkDiagram& d,
                                       const std::map<int, int>& perm);
};

/// Parses `PD[X(a,b,c,d),...]`, `GC[...]` (signed Gauss code) or
/// `BR(n; w1 w2 ...)` (braid closure), with optional trailing annotations
/// `ORD(i1,...,in)` (component order) and `LOOPS(k)` (free unknot
/// components). PD[] denotes the 0-crossing unknot.
LinkDiagram parse_diagram(std::string_view text);

/// Canonical PD text of the diagram: edges relabeled 1..2c in traversal
/// order, crossings sorted, annotations appended when needed. Re-parses to
/// an isomorphic diagram.
std::string render_pd(const LinkDiagram& d);

/// The k-twist knot T(k): clasp plus k right-handed full twists
/// (T(1) = figure eight, T(-1) = trefoil up to isotopy).
LinkDiagram twist_family(int k);

/// The k-twisted Whitehead link W(k); two components with linking number 0
/// (W(1) = Whitehead link).
LinkDiagram whitehead_family(int k);

/// Named torus-knot style helpers used in tests and the CLI.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);

// Test utility: relabels every edge by the given bijection.
LinkDiagram relabel_for_tests(const LinkDiagram& d,
                              const std::map<int, int>& perm);

namespace detail {
/// 4-plat assembly: two top caps over positions (0,1) and (2,3), a word of
/// half twists (position in 0..2, over_left flag), two bottom cups. Used by
/// the family constructors; exposed so tests can audit the conventions.
LinkDiagram plat4(bool cap1_down_left, bool cap2_down_left,
                  const std::vector<std::pair<int, bool>>& word);
}  // namespace detail

}  // namespace knotsw
