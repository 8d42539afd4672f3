#include "knotsw/script.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace knotsw {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// splits an argument list on top-level commas, respecting (), [] nesting
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool looks_like_diagram(const std::string& s) {
  return s.rfind("PD", 0) == 0 || s.rfind("GC", 0) == 0 ||
         s.rfind("BR", 0) == 0 || s.rfind("twist(", 0) == 0 ||
         s.rfind("whitehead(", 0) == 0;
}

}  // namespace

const char* ScriptValue::kind() const {
  switch (v.index()) {
    case 0: return "manifold";
    case 1: return "restricted_pair";
    case 2: return "polynomial";
    case 3: return "diagram";
    default: return "bool";
  }
}

const ScriptValue& ScriptEngine::lookup(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return it->second;
  throw parse_error("script: unknown binding '" + name + "'");
}

ScriptValue ScriptEngine::eval_op(const std::string& op,
                                  const std::vector<std::string>& args) {
  auto desc = [&](const std::string& a) -> const ManifoldDescriptor& {
    const ScriptValue& v = lookup(a);
    if (auto* d = std::get_if<ManifoldDescriptor>(&v.v)) return *d;
    throw parse_error("script: '" + a + "' is not a manifold");
  };
  auto pair_of = [&](const std::string& a) -> const RestrictedPair& {
    const ScriptValue& v = lookup(a);
    if (auto* p = std::get_if<RestrictedPair>(&v.v)) return *p;
    throw parse_error("script: '" + a + "' is not a restricted pair");
  };
  auto poly_of = [&](const std::string& a) -> LaurentPoly {
    if (is_integer(a)) return LaurentPoly::constant(VariableSet(), Int(a));
    const ScriptValue& v = lookup(a);
    if (auto* p = std::get_if<LaurentPoly>(&v.v)) return *p;
    if (auto* d = std::get_if<ManifoldDescriptor>(&v.v)) return d->sw;
    throw parse_error("script: '" + a + "' is not a polynomial");
  };
  auto diagram_of = [&](const std::string& a) -> LinkDiagram {
    if (looks_like_diagram(a)) return parse_diagram(a);
    const ScriptValue& v = lookup(a);
    if (auto* d = std::get_if<LinkDiagram>(&v.v)) return *d;
    throw parse_error("script: '" + a + "' is not a diagram");
  };
  auto integer = [&](const std::string& a) -> long {
    if (!is_integer(a)) throw parse_error("script: expected integer, got " + a);
    return std::stol(a);
  };
  auto need = [&](std::size_t lo, std::size_t hi = 0) {
    std::size_t h = hi ? hi : lo;
    if (args.size() < lo || args.size() > h)
      throw parse_error("script: wrong argument count for " + op);
  };

  if (op == "builtin") {
    need(1);
    return {swcalc::builtin(args[0])};
  }
  if (op == "diagram") {
    need(1);
    return {diagram_of(args[0])};
  }
  if (op == "knot_surgery") {
    need(3, 4);
    bool fibered = args.size() == 4;
    if (fibered && args[3] != "fibered")
      throw parse_error("script: fourth knot_surgery argument must be "
                        "'fibered'");
    return {swcalc::knot_surgery(desc(args[0]), args[1], diagram_of(args[2]),
                                 fibered, args[2].substr(0, 24))};
  }
  if (op == "fiber_sum") {
    need(4);
    return {swcalc::fiber_sum(desc(args[0]), args[1], desc(args[2]), args[3])};
  }
  if (op == "internal_fiber_sum") {
    need(3);
    return {swcalc::internal_fiber_sum(desc(args[0]), args[1], args[2])};
  }
  if (op == "link_surgery") {
    need(1);
    return {swcalc::link_surgery_e1(diagram_of(args[0]))};
  }
  if (op == "link_surgery_general") {
    if (args.size() < 3 || args.size() % 2 == 0)
      throw parse_error(
          "script: link_surgery_general(L, X1, T1, X2, T2, ...)");
    std::vector<ManifoldDescriptor> Xs;
    std::vector<std::string> Ts;
    for (std::size_t i = 1; i < args.size(); i += 2) {
      Xs.push_back(desc(args[i]));
      Ts.push_back(args[i + 1]);
    }
    return {swcalc::link_surgery_general(Xs, Ts, diagram_of(args[0]))};
  }
  if (op == "log_transform") {
    need(6, 7);
    bool dual = args[5] == "dual";
    if (!dual && args[5] != "general")
      throw parse_error("script: log_transform mode must be dual or general");
    std::string tau = args.size() == 7 ? args[6] : "";
    return {swcalc::log_transform(desc(args[0]), args[1], integer(args[2]),
                                  integer(args[3]), desc(args[4]), dual, tau)};
  }
  if (op == "double_transform") {
    if (args.size() < 2)
      throw parse_error("script: double_transform(X, j, lk...)");
    const ManifoldDescriptor& X = desc(args[0]);
    long j = integer(args[1]) - 1;  // 1-based in scripts
    std::vector<long> lks(X.class_basis.size(), 0);
    if (args.size() - 2 != X.class_basis.size())
      throw parse_error("script: double_transform needs one linking number "
                        "per class");
    for (std::size_t i = 2; i < args.size(); ++i)
      lks[i - 2] = integer(args[i]);
    return {swcalc::double_transform(X, static_cast<int>(j), lks)};
  }
  if (op == "identify") {
    need(3);
    return {swcalc::identify_classes(desc(args[0]), args[1], args[2])};
  }
  if (op == "relative_sw") {
    need(2);
    return {swcalc::relative_sw(desc(args[0]), args[1])};
  }
  if (op == "theta") {
    need(2);
    return {swcalc::theta(desc(args[0]), desc(args[1]))};
  }
  if (op == "realizability") {
    if (args.size() < 2)
      throw parse_error("script: realizability(X, p1, ...)");
    std::vector<long> ps;
    for (std::size_t i = 1; i < args.size(); ++i) ps.push_back(integer(args[i]));
    return {swcalc::realizability_check(desc(args[0]), ps)};
  }
  if (op == "symmetry") {
    need(1);
    return {swcalc::symmetry_check(desc(args[0]))};
  }
  if (op == "mul") {
    need(2);
    LaurentPoly a = poly_of(args[0]);
    LaurentPoly b = poly_of(args[1]);
    // align variable sets by name
    std::vector<std::string> names = a.vars().names();
    for (const auto& n : b.vars().names())
      if (std::find(names.begin(), names.end(), n) == names.end())
        names.push_back(n);
    VariableSet merged{names};
    return {a.extended_to(merged) * b.extended_to(merged)};
  }
  if (op == "alexander") {
    need(1);
    SkeinEngine eng;
    return {eng.alexander(diagram_of(args[0])).poly};
  }
  if (op == "e1_restricted") {
    need(0, 1);
    return {bplus1::e1_restricted(args.empty() ? "T" : args[0])};
  }
  if (op == "knot_surgery_b1") {
    need(2);
    bplus1::B1Hypotheses hyp{true, true, true};
    return {bplus1::knot_surgery_b1(pair_of(args[0]), diagram_of(args[1]),
                                    hyp)};
  }
  if (op == "fiber_sum_b1") {
    need(2, 3);
    const ScriptValue& second = lookup(args[1]);
    if (std::holds_alternative<RestrictedPair>(second.v)) {
      need(2);
      return {bplus1::fiber_sum_b1(pair_of(args[0]), pair_of(args[1]))};
    }
    need(3);
    return {bplus1::fiber_sum_b1(pair_of(args[0]), desc(args[1]), args[2])};
  }
  if (op == "log_transform_b1") {
    need(4, 5);
    LaurentPoly y01 = poly_of(args[3]);
    std::string tau = args.size() == 5 ? args[4] : "";
    return {bplus1::log_transform_b1(pair_of(args[0]), integer(args[1]),
                                     integer(args[2]), y01, tau)};
  }
  if (op == "sw0") {
    need(1);
    return {bplus1::sw0(pair_of(args[0])).poly};
  }
  if (op == "collapse") {
    need(1);
    const RestrictedPair& p = pair_of(args[0]);
    return {bplus1::collapse(p.minus)};
  }
  throw parse_error("script: unknown operation '" + op + "'");
}

std::vector<ScriptOutput> ScriptEngine::run(const std::string& text) {
  bindings_.clear();
  std::vector<ScriptOutput> outs;
  std::vector<std::string> emitted;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.rfind("let ", 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos)
          throw parse_error("script: let without '='");
        std::string name = trim(line.substr(4, eq - 4));
        std::string rhs = trim(line.substr(eq + 1));
        if (name.empty()) throw parse_error("script: empty binding name");
        ScriptValue val = [&]() -> ScriptValue {
          if (looks_like_diagram(rhs)) return {parse_diagram(rhs)};
          auto paren = rhs.find('(');
          if (paren == std::string::npos || rhs.back() != ')')
            throw parse_error("script: expected op(args...)");
          std::string op = trim(rhs.substr(0, paren));
          std::string inner = rhs.substr(paren + 1, rhs.size() - paren - 2);
          return eval_op(op, split_args(inner));
        }();
        bindings_.emplace_back(name, std::move(val));
      } else if (line.rfind("emit ", 0) == 0 || line.rfind("print ", 0) == 0) {
        std::string name = trim(line.substr(line.find(' ') + 1));
        outs.push_back({name, lookup(name)});
        emitted.push_back(name);
      } else {
        throw parse_error("script: expected 'let' or 'emit'");
      }
    } catch (error& e) {
      throw;  // already typed; message carries context below
    } catch (const std::exception& e) {
      throw parse_error("script line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  if (emitted.empty())
    for (const auto& [name, val] : bindings_) outs.push_back({name, val});
  return outs;
}

namespace {

std::string poly_block(const LaurentPoly& p) { return render(p); }

std::string tail_block(const TailSeries& ts) {
  std::ostringstream os;
  os << "(" << render(ts.poly) << ") * SUM t^("
     << (ts.toward_plus_infinity ? "" : "-") << "(2n+1)/2), n >= 0"
     << "   [t = " << ts.torus_var << "^2; direction "
     << (ts.toward_plus_infinity ? "plus" : "minus") << "_infinity]";
  return os.str();
}

}  // namespace

std::string render_text(const ScriptOutput& out) {
  std::ostringstream os;
  os << "== " << out.name << " (" << out.value.kind() << ") ==\n";
  if (auto* d = std::get_if<ManifoldDescriptor>(&out.value.v)) {
    os << "name: " << d->name << "\n";
    os << "e = " << d->euler << "  sign = " << d->signature << "  b+ = ";
    if (d->b_plus_specified)
      os << d->b_plus;
    else
      os << "unspecified";
    os << "\n";
    os << "classes:";
    for (const auto& c : d->class_basis) os << " " << c;
    os << "   (variable C = exp([C]); t_C = C^2)\n";
    os << "SW = " << render(d->sw) << "\n";
    os << "simply_connected: " << (d->simply_connected ? "yes" : "no")
       << "\n";
    auto verdict = swcalc::symplectic_status(*d);
    os << "symplectic (standard orientation): " << tri_name(verdict.standard)
       << "\n";
    os << "symplectic (reversed orientation): " << tri_name(verdict.reversed)
       << "\n";
    if (d->canonical_class) {
      os << "canonical class:";
      for (std::size_t i = 0; i < d->class_basis.size(); ++i)
        if ((*d->canonical_class)[i] != 0)
          os << " " << (*d->canonical_class)[i] << "*[" << d->class_basis[i]
             << "]";
      os << "\n";
    }
    for (const auto& w : d->warnings) os << "warning: " << w << "\n";
  } else if (auto* p = std::get_if<RestrictedPair>(&out.value.v)) {
    os << "SW+ = " << tail_block(p->plus) << "\n";
    os << "SW- = " << tail_block(p->minus) << "\n";
    os << "collapse (both sides): " << render(bplus1::collapse(p->minus))
       << "\n";
    auto s0 = bplus1::sw0(*p);
    os << "SW0 = " << render(s0.poly);
    if (s0.zero_exponent_outside_paper)
      os << "   [nonzero constant term: outside paper coverage]";
    os << "\n";
  } else if (auto* q = std::get_if<LaurentPoly>(&out.value.v)) {
    os << poly_block(*q) << "\n";
  } else if (auto* g = std::get_if<LinkDiagram>(&out.value.v)) {
    os << render_pd(*g) << "\n";
  } else if (auto* b = std::get_if<bool>(&out.value.v)) {
    os << (*b ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string render_structured(const std::vector<ScriptOutput>& outs) {
  nlohmann::json root;
  root["schema"] = "knotsw/1";
  root["bindings"] = nlohmann::json::array();
  for (const auto& out : outs) {
    nlohmann::json j;
    j["name"] = out.name;
    j["kind"] = out.value.kind();
    if (auto* d = std::get_if<ManifoldDescriptor>(&out.value.v)) {
      j["manifold"] = d->name;
      j["euler"] = d->euler;
      j["signature"] = d->signature;
      if (d->b_plus_specified)
        j["b_plus"] = d->b_plus;
      else
        j["b_plus"] = "unspecified";
      j["classes"] = d->class_basis;
      j["sw"] = render(d->sw);
      j["simply_connected"] = d->simply_connected;
      auto verdict = swcalc::symplectic_status(*d);
      j["symplectic_standard"] = tri_name(verdict.standard);
      j["symplectic_reversed"] = tri_name(verdict.reversed);
      if (d->canonical_class) j["canonical_class"] = *d->canonical_class;
      j["warnings"] = d->warnings;
    } else if (auto* p = std::get_if<RestrictedPair>(&out.value.v)) {
      j["sw_plus"] = {{"finite_part", render(p->plus.poly)},
                      {"direction", p->plus.toward_plus_infinity
                                        ? "plus_infinity"
                                        : "minus_infinity"},
                      {"torus_var", p->plus.torus_var}};
      j["sw_minus"] = {{"finite_part", render(p->minus.poly)},
                       {"direction", p->minus.toward_plus_infinity
                                         ? "plus_infinity"
                                         : "minus_infinity"},
                       {"torus_var", p->minus.torus_var}};
      j["collapse"] = render(bplus1::collapse(p->minus));
      j["sw0"] = render(bplus1::sw0(*p).poly);
    } else if (auto* q = std::get_if<LaurentPoly>(&out.value.v)) {
      j["poly"] = render(*q);
      j["variables"] = q->vars().names();
    } else if (auto* g = std::get_if<LinkDiagram>(&out.value.v)) {
      j["pd"] = render_pd(*g);
      j["components"] = g->n_components();
      j["crossings"] = g->n_crossings();
      j["writhe"] = g->writhe();
    } else if (auto* b = std::get_if<bool>(&out.value.v)) {
      j["value"] = *b;
    }
    root["bindings"].push_back(j);
  }
  return root.dump(2);
}

}  // namespace knotsw
