#pragma once

#include <string>
#include <variant>
#include <vector>

#include "knotsw/bplus1.hpp"
#include "knotsw/diagram.hpp"
#include "knotsw/laurent.hpp"
#include "knotsw/swcalc.hpp"

namespace knotsw {

/// A construction script is a line-based program:
///   let NAME = op(arg, ...)
///   emit NAME
/// with '#' comments. Arguments are binding names, integers, diagram
/// literals (PD[...], BR(...), GC[...], twist(k), whitehead(k)) or bare
/// keywords (fibered, dual, general, torus names). Bindings hold manifold
/// descriptors, restricted pairs, polynomials, diagrams or booleans.
/// Without any emit statement every let binding is emitted in order.
struct ScriptValue {
  std::variant<ManifoldDescriptor, RestrictedPair, LaurentPoly, LinkDiagram,
               bool>
      v;
  const char* kind() const;
};

struct ScriptOutput {
  std::string name;
  ScriptValue value;
};

class ScriptEngine {
 public:
  ScriptEngine() = default;

  /// Runs the whole script; throws parse/domain/hypothesis/identity errors.
  std::vector<ScriptOutput> run(const std::string& text);

 private:
  std::vector<std::pair<std::string, ScriptValue>> bindings_;
  const ScriptValue& lookup(const std::string& name) const;
  ScriptValue eval_op(const std::string& op,
                      const std::vector<std::string>& args);
};

/// Human-readable rendering of one emitted value.
std::string render_text(const ScriptOutput& out);

/// Versioned structured rendering (JSON, schema "knotsw/1") of a whole run.
std::string render_structured(const std::vector<ScriptOutput>& outs);

}  // namespace knotsw
