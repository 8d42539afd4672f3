#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotsw/diagram.hpp"
#include "knotsw/laurent.hpp"

namespace knotsw {

/// One node of a retained resolution tree.
struct ResolutionNode {
  std::string pd;
  int c = 0, b = 0;
  std::string move;  // "root", "change@k", "resolve@k"
  std::string status;  // "", "cached", "base:unknot", "base:split", ...
  std::vector<std::unique_ptr<ResolutionNode>> kids;
};

struct SkeinStats {
  std::size_t nodes = 0;
  std::size_t cache_hits = 0;
};

struct SkeinResult {
  LaurentPoly poly;  // normalized output in s (s^2 = t)
  LaurentPoly raw;   // unnormalized recursion value (skein identity holds)
  SkeinStats stats;
  std::unique_ptr<ResolutionNode> tree;  // present when requested
};

/// The resolution-tree engine for the symmetrized one-variable Alexander
/// polynomial, computed in s = t^{1/2} by the skein recursion
///   val(K+) = val(K-) + (s - s^{-1}) * val(K0)
/// over the based ordered traversal, with memoization keyed on canonical
/// diagram codes. Results are identical between the serial and the
/// task-parallel evaluation; the parallel path exists for speed only.
class SkeinEngine {
 public:
  explicit SkeinEngine(int jobs = 1) : jobs_(jobs) {}

  const VariableSet& var_s() const { return s_vars_; }

  /// Full computation with normalization: knots get the sign fixed so the
  /// leading coefficient is positive, links get the canonical ≐
  /// representative. Trees are only retained on serial evaluations.
  SkeinResult alexander(const LinkDiagram& d, bool keep_tree = false);

  /// Serial reference evaluation (no task parallelism regardless of jobs).
  SkeinResult alexander_serial(const LinkDiagram& d, bool keep_tree = false);

  /// Raw recursion value in s; exactly satisfies the skein identity.
  LaurentPoly raw_value(const LinkDiagram& d);

  /// Conway form: rewrite of the raw value in z = s - s^{-1}.
  LaurentPoly conway(const LinkDiagram& d);

  /// Knot output rewritten in t = s^2; throws if odd powers appear.
  static LaurentPoly as_t_poly(const LaurentPoly& p_in_s);

  void clear_cache();
  std::size_t cache_size() const;
  int jobs() const { return jobs_; }
  void set_jobs(int jobs) { jobs_ = jobs; }

 private:
  int jobs_ = 1;
  VariableSet s_vars_ = VariableSet::single("s");
  std::unordered_map<std::string, LaurentPoly> cache_;
  mutable std::mutex mu_;
  SkeinStats stats_;

  LaurentPoly eval(const LinkDiagram& d, int depth, int depth_cap,
                   bool parallel, ResolutionNode* node);
  LaurentPoly normalize(const LinkDiagram& d, const LaurentPoly& raw) const;
};

}  // namespace knotsw
