#include "knotsw/fox.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace knotsw {

namespace {

struct ArcIndex {
  std::map<int, int> arc_of_edge;
  int n_arcs = 0;
};

// Arcs are the equivalence classes of edges glued through over-passes.
ArcIndex arcs_of(const LinkDiagram& d) {
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    int r = find(it->second);
    it->second = r;
    return r;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    if (!parent.count(a)) parent[a] = a;
  };
  std::set<int> edges;
  for (const auto& x : d.crossings()) {
    for (int e : x.s) edges.insert(e);
    unite(x.over_in(), x.over_out());
  }
  ArcIndex ai;
  std::map<int, int> root_to_arc;
  for (int e : edges) {
    int r = find(e);
    auto [it, fresh] = root_to_arc.emplace(r, ai.n_arcs);
    if (fresh) ++ai.n_arcs;
    ai.arc_of_edge[e] = it->second;
  }
  return ai;
}

}  // namespace

WirtingerPresentation wirtinger(const LinkDiagram& d) {
  if (d.n_crossings() == 0)
    throw domain_error("wirtinger needs at least one crossing");
  if (!d.is_connected())
    throw domain_error("wirtinger needs a connected diagram");
  ArcIndex ai = arcs_of(d);
  WirtingerPresentation w;
  w.n_generators = ai.n_arcs;
  w.n_link_components = d.n_components();
  w.gen_component.assign(ai.n_arcs, -1);
  for (const auto& [e, a] : ai.arc_of_edge) w.gen_component[a] = d.component_of(e);
  for (const auto& x : d.crossings()) {
    WirtingerPresentation::Relation r;
    r.out_gen = ai.arc_of_edge.at(x.under_out());
    r.in_gen = ai.arc_of_edge.at(x.under_in());
    r.over_gen = ai.arc_of_edge.at(x.over_in());
    r.sign = x.sign();
    w.relations.push_back(r);
  }
  return w;
}

VariableSet fox_vars(int n_components) {
  if (n_components == 1) return VariableSet::single("t");
  std::vector<std::string> names;
  for (int i = 1; i <= n_components; ++i)
    names.push_back("t" + std::to_string(i));
  return VariableSet(names);
}

std::vector<std::vector<LaurentPoly>> alexander_matrix(
    const WirtingerPresentation& w) {
  const VariableSet vars = fox_vars(w.n_link_components);
  auto tvar = [&](int gen, std::int64_t e2) {
    return LaurentPoly::variable(vars, w.gen_component[gen], e2);
  };
  std::vector<std::vector<LaurentPoly>> M;
  for (const auto& r : w.relations) {
    std::vector<LaurentPoly> row(w.n_generators, LaurentPoly(vars));
    // relation word: out^{-1} o^{ε} in o^{-ε}; abelianized Fox derivatives
    LaurentPoly prefix = LaurentPoly::constant(vars, 1);
    auto letter = [&](int gen, int exp) {
      if (exp > 0) {
        row[gen] += prefix;
        prefix = prefix * tvar(gen, 2);
      } else {
        prefix = prefix * tvar(gen, -2);
        row[gen] -= prefix;
      }
    };
    letter(r.out_gen, -1);
    letter(r.over_gen, r.sign);
    letter(r.in_gen, +1);
    letter(r.over_gen, -r.sign);
    M.push_back(std::move(row));
  }
  return M;
}

namespace {

// Bareiss fraction-free determinant; every division is exact over the
// Laurent ring, anything else is an identity violation upstream.
LaurentPoly det_bareiss(std::vector<std::vector<LaurentPoly>> M,
                        const VariableSet& vars) {
  const std::size_t n = M.size();
  if (n == 0) return LaurentPoly::constant(vars, 1);
  int sign = 1;
  LaurentPoly prev = LaurentPoly::constant(vars, 1);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::size_t pr = r;
    while (pr < n && M[pr][r].is_zero()) ++pr;
    if (pr == n) return LaurentPoly(vars);  // zero column, zero determinant
    if (pr != r) {
      std::swap(M[pr], M[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i)
      for (std::size_t j = r + 1; j < n; ++j)
        M[i][j] =
            divide_exact(M[r][r] * M[i][j] - M[i][r] * M[r][j], prev);
    prev = M[r][r];
  }
  LaurentPoly det = M[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

LaurentPoly alexander_minor(const WirtingerPresentation& w, int drop_col) {
  if (static_cast<int>(w.relations.size()) != w.n_generators)
    throw domain_error("presentation is not square");
  if (drop_col < 0 || drop_col >= w.n_generators)
    throw domain_error("bad column index");
  const VariableSet vars = fox_vars(w.n_link_components);
  auto M = alexander_matrix(w);
  std::vector<std::vector<LaurentPoly>> minor;
  for (std::size_t r = 0; r + 1 < M.size(); ++r) {  // drop last relation
    std::vector<LaurentPoly> row;
    for (int c = 0; c < w.n_generators; ++c)
      if (c != drop_col) row.push_back(M[r][c]);
    minor.push_back(std::move(row));
  }
  return det_bareiss(std::move(minor), vars);
}

LaurentPoly alexander_multi(const LinkDiagram& d, int drop_col) {
  const int n = d.n_components();
  const VariableSet vars = fox_vars(n);
  if (d.n_crossings() == 0) {
    if (n == 1) return LaurentPoly::constant(vars, 1);  // unknot
    return LaurentPoly(vars);                           // split unlink
  }
  if (d.is_split()) return LaurentPoly(vars);
  WirtingerPresentation w = wirtinger(d);
  if (static_cast<int>(w.relations.size()) != w.n_generators) {
    // a component that never passes under lifts off the rest: split
    return LaurentPoly(vars);
  }
  LaurentPoly minor = alexander_minor(w, drop_col);
  if (minor.is_zero()) return minor;
  LaurentPoly result;
  if (n == 1) {
    result = minor;
  } else {
    const int comp = w.gen_component[drop_col];
    LaurentPoly tm1 = LaurentPoly::variable(vars, comp, 2) -
                      LaurentPoly::constant(vars, 1);
    result = divide_exact(minor, tm1);  // throws on a convention bug
  }
  if (result.is_zero()) return result;
  return canonical_rep(result);
}

bool torres_crosscheck(const LinkDiagram& d, SkeinEngine& engine) {
  if (d.n_components() < 2)
    throw domain_error("torres_crosscheck needs a link");
  const int n = d.n_components();
  LaurentPoly multi = alexander_multi(d);
  VariableSet tv = VariableSet::single("t");
  std::vector<Monomial> to_t2(n, Monomial::var(1, 0, 4));  // t_i -> t^2
  LaurentPoly lhs = substitute(multi, tv, to_t2);
  lhs = lhs * (LaurentPoly::variable(tv, 0, 2) -
               LaurentPoly::variable(tv, 0, -2));
  LaurentPoly one_var = engine.alexander(d).poly;
  LaurentPoly rhs =
      substitute(one_var, tv, {Monomial::var(1, 0, 2)});  // s -> t
  return doteq(lhs, rhs);
}

bool conway_axiom_check(const LinkDiagram& d, int k, SkeinEngine& engine) {
  if (k < 0 || k >= d.n_crossings()) throw domain_error("bad crossing index");
  if (d.crossings()[k].sign() <= 0)
    throw domain_error("conway_axiom_check expects a positive crossing");
  LaurentPoly vplus = engine.raw_value(d);
  LaurentPoly vminus = engine.raw_value(d.crossing_change(k));
  LaurentPoly vzero = engine.raw_value(d.resolve(k));
  const VariableSet& sv = engine.var_s();
  LaurentPoly z =
      LaurentPoly::variable(sv, 0, 2) - LaurentPoly::variable(sv, 0, -2);
  return vplus == vminus + z * vzero;
}

bool doubling_axiom_check(const LinkDiagram& d, int j) {
  const int n = d.n_components();
  if (n < 2) throw domain_error("doubling axiom needs >= 2 components");
  if (j < 0 || j >= n) throw domain_error("bad component index");
  const VariableSet vars = fox_vars(n);
  LaurentPoly lhs = alexander_multi(d.cable_2_1(j));
  // T = t_j^{1/2} ∏ t_i^{lk(j,i)/2} in these variables
  Monomial Tm = Monomial::one(n);
  Tm.exp2[j] = 1;
  for (int i = 0; i < n; ++i)
    if (i != j) Tm.exp2[i] = d.linking_number(j, i);
  LaurentPoly Tfac = LaurentPoly::term(vars, Tm, 1) +
                     LaurentPoly::term(vars, Tm.inverse(), 1);
  std::vector<Monomial> images;
  for (int i = 0; i < n; ++i)
    images.push_back(Monomial::var(n, i, i == j ? 4 : 2));  // t_j -> t_j^2
  LaurentPoly rhs = Tfac * substitute(alexander_multi(d), vars, images);
  return doteq(lhs, rhs);
}

}  // namespace knotsw
