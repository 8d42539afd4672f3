#include "knotsw/swcalc.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "knotsw/fox.hpp"

namespace knotsw {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
  }
}

bool TorusMark::nullhomologous() const {
  return std::all_of(class_vec.begin(), class_vec.end(),
                     [](long v) { return v == 0; });
}

const TorusMark& ManifoldDescriptor::torus(const std::string& tname) const {
  auto it = tori.find(tname);
  if (it == tori.end())
    throw domain_error(name + " has no torus named " + tname);
  return it->second;
}

std::size_t ManifoldDescriptor::class_index(const std::string& cname) const {
  for (std::size_t i = 0; i < class_basis.size(); ++i)
    if (class_basis[i] == cname) return i;
  throw domain_error(name + " has no class named " + cname);
}

namespace swcalc {

namespace {

// verify the symmetry law (and, when a pairing is recorded, that every
// marked torus has square zero) on every construction output
void finalize(const ManifoldDescriptor& d) {
  if (!symmetry_check(d))
    throw identity_error("descriptor " + d.name +
                         " violates the SW symmetry law");
  if (d.pairing) {
    const auto& P = *d.pairing;
    for (const auto& [nm, m] : d.tori) {
      if (m.class_vec.size() != d.class_basis.size()) continue;
      long q = 0;
      for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < P.size(); ++j)
          q += m.class_vec[i] * P[i][j] * m.class_vec[j];
      if (q != 0)
        throw identity_error("torus " + nm + " of " + d.name +
                             " has nonzero square");
    }
  }
}

LaurentPoly torus_factor(const ManifoldDescriptor& X, std::size_t idx) {
  VariableSet vs = X.vars();
  return LaurentPoly::variable(vs, idx, 2) -
         LaurentPoly::variable(vs, idx, -2);
}

// distinct new name for a class carried into a merged basis
std::string unique_name(std::string base, const std::set<std::string>& used) {
  std::string n = base;
  while (used.count(n)) n += "'";
  return n;
}

LaurentPoly alexander_in_class_var(SkeinEngine& eng, const LinkDiagram& K,
                                   const VariableSet& target,
                                   std::size_t idx) {
  LaurentPoly delta = eng.alexander(K).poly;  // in s = t^{1/2}
  return substitute(delta, target,
                    {Monomial::var(target.size(), idx, 2)});  // s -> v_T
}

long alexander_t_degree(const LaurentPoly& delta_s) {
  if (delta_s.is_zero()) return 0;
  return delta_s.max_exp2(0) / 4;  // s-exponents are doubled twice over t
}

}  // namespace

ManifoldDescriptor builtin(const std::string& name) {
  if (name != "K3") throw domain_error("unknown builtin manifold: " + name);
  ManifoldDescriptor d;
  d.name = "K3";
  d.euler = 24;
  d.signature = -16;
  d.b_plus = 3;
  d.class_basis = {"T1", "T2", "T3"};
  d.pairing = std::vector<std::vector<long>>(3, std::vector<long>(3, 0));
  d.sw = LaurentPoly::constant(d.vars(), 1);
  for (int i = 0; i < 3; ++i) {
    TorusMark m;
    m.name = "T" + std::to_string(i + 1);
    m.class_vec = {0, 0, 0};
    m.class_vec[i] = 1;
    m.c_embedded = true;
    m.complement_simply_connected = true;
    m.symplectic = true;
    d.tori[m.name] = m;
  }
  d.simply_connected = true;
  d.symplectic = Tri::yes;
  d.canonical_class = std::vector<long>{0, 0, 0};
  finalize(d);
  return d;
}

LaurentPoly relative_sw(const ManifoldDescriptor& X, const std::string& T) {
  if (X.b_plus <= 1 || !X.b_plus_specified)
    throw hypothesis_error("relative SW needs b+ > 1");
  const TorusMark& mark = X.torus(T);
  if (!mark.c_embedded)
    throw hypothesis_error("relative SW needs a c-embedded torus");
  return X.sw * torus_factor(X, X.class_index(T));
}

ManifoldDescriptor knot_surgery(const ManifoldDescriptor& X,
                                const std::string& T, const LinkDiagram& K,
                                bool fibered, const std::string& knot_name) {
  if (X.b_plus <= 1 || !X.b_plus_specified)
    throw hypothesis_error("knot surgery needs b+ > 1 (use the b+ = 1 "
                           "restricted calculus otherwise)");
  if (!X.simply_connected)
    throw hypothesis_error("knot surgery needs a simply connected X");
  const TorusMark& mark = X.torus(T);
  if (!mark.c_embedded)
    throw hypothesis_error("knot surgery needs a c-embedded torus");
  if (!mark.complement_simply_connected)
    throw hypothesis_error("knot surgery needs pi_1(X - T) = 1");
  if (mark.nullhomologous())
    throw hypothesis_error("knot surgery torus must carry a nontrivial "
                           "homology class");
  if (K.n_components() != 1)
    throw domain_error("knot surgery takes a knot, not a link");

  SkeinEngine eng;
  LaurentPoly delta_s = eng.alexander(K).poly;
  LaurentPoly delta_t = SkeinEngine::as_t_poly(delta_s);
  PolyClass cls = classify(delta_t);
  if (fibered && !cls.monic)
    throw hypothesis_error(
        "knot declared fibered but its polynomial is not monic");

  ManifoldDescriptor d = X;
  d.name = X.name + "_" + knot_name;
  const std::size_t idx = X.class_index(T);
  d.sw = X.sw * substitute(delta_s, X.vars(),
                           {Monomial::var(X.class_basis.size(), idx, 2)});
  const long deg = alexander_t_degree(delta_s);
  if (X.symplectic == Tri::yes && mark.symplectic && fibered) {
    d.symplectic = Tri::yes;
    if (d.canonical_class) (*d.canonical_class)[idx] += 2 * deg;
  } else if (!cls.monic) {
    d.symplectic = Tri::no;
    d.canonical_class.reset();
  } else {
    d.symplectic = Tri::unknown;
    d.canonical_class.reset();
  }
  finalize(d);
  return d;
}

ManifoldDescriptor fiber_sum(const ManifoldDescriptor& X1,
                             const std::string& T1,
                             const ManifoldDescriptor& X2,
                             const std::string& T2) {
  LaurentPoly rel1 = relative_sw(X1, T1);
  LaurentPoly rel2 = relative_sw(X2, T2);

  ManifoldDescriptor d;
  d.name = X1.name + "#" + X2.name;
  d.euler = X1.euler + X2.euler;
  d.signature = X1.signature + X2.signature;
  d.b_plus = X1.b_plus + X2.b_plus + 1;
  d.class_basis = X1.class_basis;
  std::set<std::string> used(d.class_basis.begin(), d.class_basis.end());
  // X2's classes join the basis with [T2] identified to [T1]
  std::map<std::string, std::string> rename;
  rename[T2] = T1;
  for (const auto& c : X2.class_basis) {
    if (c == T2) continue;
    std::string nn = unique_name(c, used);
    rename[c] = nn;
    used.insert(nn);
    d.class_basis.push_back(nn);
  }
  VariableSet merged = d.vars();
  std::vector<Monomial> images;
  for (const auto& c : X2.class_basis)
    images.push_back(Monomial::var(merged.size(),
                                   *merged.index_of(rename[c]), 2));
  d.sw = rel1.extended_to(merged) * substitute(rel2, merged, images);

  auto carry_mark = [&](const TorusMark& m, const ManifoldDescriptor& owner,
                        const std::map<std::string, std::string>& rn) {
    TorusMark out = m;
    auto it = rn.find(m.name);
    if (it != rn.end()) out.name = it->second;
    out.class_vec.assign(d.class_basis.size(), 0);
    for (std::size_t i = 0; i < owner.class_basis.size(); ++i)
      out.class_vec[d.class_index(rn.at(owner.class_basis[i]))] +=
          m.class_vec[i];
    return out;
  };
  std::map<std::string, std::string> id_rename;
  for (const auto& c : X1.class_basis) id_rename[c] = c;
  for (const auto& [nm, m] : X1.tori)
    d.tori[nm] = carry_mark(m, X1, id_rename);
  for (const auto& [nm, m] : X2.tori) {
    if (nm == T2) continue;  // identified with T1
    TorusMark out = carry_mark(m, X2, rename);
    std::set<std::string> taken;
    for (const auto& [tn, tm] : d.tori) taken.insert(tn);
    out.name = unique_name(out.name, taken);
    d.tori[out.name] = out;
  }
  d.simply_connected = X1.simply_connected && X2.simply_connected;
  const TorusMark& m1 = X1.torus(T1);
  const TorusMark& m2 = X2.torus(T2);
  if (X1.symplectic == Tri::yes && X2.symplectic == Tri::yes &&
      m1.symplectic && m2.symplectic)
    d.symplectic = Tri::yes;
  finalize(d);
  return d;
}

ManifoldDescriptor internal_fiber_sum(const ManifoldDescriptor& X,
                                      const std::string& T1,
                                      const std::string& T2) {
  if (T1 == T2)
    throw domain_error("internal fiber sum needs two distinct tori");
  if (X.b_plus <= 1 || !X.b_plus_specified)
    throw hypothesis_error("internal fiber sum needs b+ > 1");
  if (!X.torus(T1).c_embedded || !X.torus(T2).c_embedded)
    throw hypothesis_error("internal fiber sum needs c-embedded tori");
  const std::size_t i1 = X.class_index(T1);
  const std::size_t i2 = X.class_index(T2);

  ManifoldDescriptor d;
  d.name = X.name + "(" + T1 + "=" + T2 + ")";
  d.euler = X.euler;
  d.signature = X.signature;
  d.b_plus = X.b_plus;
  d.b_plus_specified = false;
  d.warnings.push_back("b+ after an internal fiber sum is not specified "
                       "by the calculus");
  for (std::size_t i = 0; i < X.class_basis.size(); ++i)
    if (i != i2) d.class_basis.push_back(X.class_basis[i]);
  VariableSet target = d.vars();
  std::vector<Monomial> images;
  for (std::size_t i = 0; i < X.class_basis.size(); ++i) {
    std::size_t to = (i == i2) ? *target.index_of(T1)
                               : *target.index_of(X.class_basis[i]);
    images.push_back(Monomial::var(target.size(), to, 2));
  }
  LaurentPoly rel = X.sw * torus_factor(X, i1) * torus_factor(X, i2);
  d.sw = substitute(rel, target, images);
  for (const auto& [nm, m] : X.tori) {
    if (nm == T2) continue;
    TorusMark out = m;
    out.class_vec.clear();
    for (std::size_t i = 0; i < X.class_basis.size(); ++i)
      if (i != i2) out.class_vec.push_back(m.class_vec[i]);
    out.class_vec[*target.index_of(T1)] += m.class_vec[i2];
    d.tori[nm] = out;
  }
  d.simply_connected = false;  // gluing may create pi_1; not tracked
  finalize(d);
  return d;
}

ManifoldDescriptor link_surgery_e1(const LinkDiagram& L) {
  const int n = L.n_components();
  if (n < 2)
    throw hypothesis_error(
        "link surgery E(1)_K for a knot has b+ = 1; use the restricted "
        "b+ = 1 calculus");
  ManifoldDescriptor d;
  d.name = "E1_L";
  d.euler = 12L * n;
  d.signature = -8L * n;
  d.b_plus = 2 * n - 1;
  for (int j = 1; j <= n; ++j) d.class_basis.push_back("T" + std::to_string(j));
  VariableSet vs = d.vars();
  LaurentPoly multi = alexander_multi(L);  // over t_1..t_n
  std::vector<Monomial> images;
  for (int j = 0; j < n; ++j)
    images.push_back(Monomial::var(n, j, 4));  // t_j -> v_j^2
  d.sw = substitute(multi, vs, images);
  for (int j = 0; j < n; ++j) {
    TorusMark m;
    m.name = d.class_basis[j];
    m.class_vec.assign(n, 0);
    m.class_vec[j] = 1;
    m.c_embedded = true;
    d.tori[m.name] = m;
  }
  d.simply_connected = true;
  bool nonzero_linking = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (L.linking_number(i, j) != 0) nonzero_linking = true;
  if (nonzero_linking)
    d.warnings.push_back(
        "nonzero linking numbers: the classes [T_j] may satisfy relations "
        "determined by the linking matrix; they are recorded as "
        "independent symbols (supply an identification explicitly)");
  finalize(d);
  return d;
}

ManifoldDescriptor link_surgery_general(
    const std::vector<ManifoldDescriptor>& Xs,
    const std::vector<std::string>& Ts, const LinkDiagram& L) {
  const int n = L.n_components();
  if (n == 1)
    throw domain_error("one-component link surgery is knot surgery");
  if (static_cast<int>(Xs.size()) != n || Ts.size() != Xs.size())
    throw domain_error("need one (manifold, torus) pair per link component");
  for (int j = 0; j < n; ++j) {
    const auto& X = Xs[j];
    if (X.b_plus <= 1 || !X.b_plus_specified)
      throw hypothesis_error("link surgery factors need b+ > 1");
    if (!X.simply_connected)
      throw hypothesis_error("link surgery factors must be simply connected");
    const TorusMark& m = X.torus(Ts[j]);
    if (m.nullhomologous() || !m.complement_simply_connected)
      throw hypothesis_error(
          "link surgery needs homologically essential tori with simply "
          "connected complements");
  }

  ManifoldDescriptor d;
  d.name = "X_L";
  d.b_plus = n - 1;
  for (const auto& X : Xs) {
    d.euler += X.euler;
    d.signature += X.signature;
    d.b_plus += X.b_plus;
  }
  // merged basis: the identified classes first (one per component), then
  // every factor's remaining classes
  std::set<std::string> used;
  std::vector<std::map<std::string, std::string>> renames(n);
  for (int j = 0; j < n; ++j) {
    std::string link_class = unique_name("T" + std::to_string(j + 1), used);
    used.insert(link_class);
    d.class_basis.push_back(link_class);
    renames[j][Ts[j]] = link_class;
  }
  for (int j = 0; j < n; ++j)
    for (const auto& c : Xs[j].class_basis) {
      if (c == Ts[j]) continue;
      std::string nn = unique_name(c, used);
      used.insert(nn);
      renames[j][c] = nn;
      d.class_basis.push_back(nn);
    }
  VariableSet merged = d.vars();
  LaurentPoly multi = alexander_multi(L);
  std::vector<Monomial> link_images;
  for (int j = 0; j < n; ++j)
    link_images.push_back(
        Monomial::var(merged.size(), j, 4));  // t_j -> v_j^2
  LaurentPoly sw = substitute(multi, merged, link_images);
  for (int j = 0; j < n; ++j) {
    LaurentPoly rel = relative_sw(Xs[j], Ts[j]);
    std::vector<Monomial> images;
    for (const auto& c : Xs[j].class_basis)
      images.push_back(Monomial::var(merged.size(),
                                     *merged.index_of(renames[j].at(c)), 2));
    sw = sw * substitute(rel, merged, images);
  }
  d.sw = sw;
  for (int j = 0; j < n; ++j) {
    TorusMark m;
    m.name = d.class_basis[j];
    m.class_vec.assign(d.class_basis.size(), 0);
    m.class_vec[j] = 1;
    m.c_embedded = true;
    d.tori[m.name] = m;
  }
  d.simply_connected = true;
  bool nonzero_linking = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (L.linking_number(i, j) != 0) nonzero_linking = true;
  if (nonzero_linking)
    d.warnings.push_back(
        "nonzero linking numbers: the classes [T_j] may satisfy relations "
        "determined by the linking matrix; they are recorded as "
        "independent symbols (supply an identification explicitly)");
  finalize(d);
  return d;
}

ManifoldDescriptor log_transform(const ManifoldDescriptor& Y,
                                 const std::string& torus, long p, long q,
                                 const ManifoldDescriptor& Y01,
                                 bool dual_torus_hypothesis,
                                 const std::string& tau_class) {
  if (Y.b_plus < 3 || !Y.b_plus_specified)
    throw hypothesis_error("the log transform formula needs b+ >= 3");
  const TorusMark& mark = Y.torus(torus);
  if (!mark.nullhomologous())
    throw hypothesis_error(
        "this log transform applies to nullhomologous tori");
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw domain_error("log transform multiplicities must be coprime");

  LaurentPoly y01sw = Y01.sw;
  if (!dual_torus_hypothesis) {
    // collapse the shift sum by evaluating the tau class at 1
    if (tau_class.empty())
      throw domain_error(
          "general log transform needs the tau class of Y(0/1)");
    VariableSet src = Y01.vars();
    std::vector<std::string> keep;
    for (const auto& c : Y01.class_basis)
      if (c != tau_class) keep.push_back(c);
    VariableSet tgt(keep);
    std::vector<Monomial> images;
    for (const auto& c : Y01.class_basis) {
      if (c == tau_class)
        images.push_back(Monomial::one(tgt.size()));
      else
        images.push_back(
            Monomial::var(tgt.size(), *tgt.index_of(c), 2));
    }
    (void)Y01.class_index(tau_class);  // must exist
    y01sw = substitute(y01sw, tgt, images);
  }

  // union basis by class name
  std::vector<std::string> basis = Y.class_basis;
  std::set<std::string> used(basis.begin(), basis.end());
  for (const auto& c : y01sw.vars().names())
    if (!used.count(c)) {
      used.insert(c);
      basis.push_back(c);
    }
  ManifoldDescriptor d;
  d.name = Y.name + "(" + std::to_string(p) + "/" + std::to_string(q) + ")";
  if (p != 0) {
    d.euler = Y.euler;
    d.signature = Y.signature;
    d.b_plus = Y.b_plus;
  } else {
    d.euler = Y01.euler;
    d.signature = Y01.signature;
    d.b_plus = Y01.b_plus;
  }
  d.class_basis = basis;
  VariableSet merged = d.vars();
  d.sw = Int(p) * Y.sw.extended_to(merged) +
         Int(q) * y01sw.extended_to(merged);
  for (const auto& [nm, m] : Y.tori) {
    if (nm == torus) continue;  // consumed by the transform
    TorusMark out = m;
    out.class_vec.resize(basis.size(), 0);
    d.tori[nm] = out;
  }
  d.simply_connected = Y.simply_connected;
  finalize(d);
  return d;
}

ManifoldDescriptor double_transform(const ManifoldDescriptor& X, int j,
                                    const std::vector<long>& lks) {
  const std::size_t n = X.class_basis.size();
  if (j < 0 || static_cast<std::size_t>(j) >= n)
    throw domain_error("bad class index for double_transform");
  if (lks.size() != n)
    throw domain_error("double_transform needs one linking number per "
                       "class (entry j ignored)");
  ManifoldDescriptor d = X;
  d.name = X.name + "_dbl" + std::to_string(j + 1);
  VariableSet vs = X.vars();
  std::vector<Monomial> images;
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(Monomial::var(n, i, i == static_cast<std::size_t>(j)
                                              ? 4
                                              : 2));  // t_j -> t_j^2
  Monomial w = Monomial::one(n);
  w.exp2[j] = 2;
  for (std::size_t i = 0; i < n; ++i)
    if (i != static_cast<std::size_t>(j)) w.exp2[i] = 2 * lks[i];
  LaurentPoly wfac =
      LaurentPoly::term(vs, w, 1) + LaurentPoly::term(vs, w.inverse(), 1);
  d.sw = wfac * substitute(X.sw, vs, images);
  d.canonical_class.reset();
  d.symplectic = Tri::unknown;
  finalize(d);
  return d;
}

LaurentPoly theta(const ManifoldDescriptor& XK, const ManifoldDescriptor& X) {
  if (X.sw.is_zero())
    throw domain_error("theta needs SW_X != 0");
  if (XK.class_basis == X.class_basis) return divide_exact(XK.sw, X.sw);
  // align by name
  std::vector<std::string> basis = XK.class_basis;
  std::set<std::string> used(basis.begin(), basis.end());
  for (const auto& c : X.class_basis)
    if (!used.count(c)) basis.push_back(c);
  VariableSet merged((std::vector<std::string>(basis)));
  return divide_exact(XK.sw.extended_to(merged), X.sw.extended_to(merged));
}

GromovResult gromov_knot_surgery(const ManifoldDescriptor& X,
                                 const std::string& T, const LinkDiagram& K) {
  if (X.symplectic != Tri::yes)
    throw hypothesis_error("Gromov update needs a symplectic X");
  const TorusMark& mark = X.torus(T);
  if (!mark.symplectic || !mark.c_embedded)
    throw hypothesis_error(
        "Gromov update needs a symplectic c-embedded torus");
  if (K.n_components() != 1) throw domain_error("needs a knot");
  SkeinEngine eng;
  LaurentPoly delta_s = eng.alexander(K).poly;
  if (!classify(SkeinEngine::as_t_poly(delta_s)).monic)
    throw hypothesis_error(
        "knot polynomial is not monic, contradicting fiberedness");
  const std::size_t idx = X.class_index(T);
  const long deg = alexander_t_degree(delta_s);
  VariableSet vs = X.vars();
  LaurentPoly a_k =
      substitute(delta_s, vs, {Monomial::var(vs.size(), idx, 2)}) *
      LaurentPoly::variable(vs, idx, 4 * deg);  // tau^{2d}
  GromovResult out;
  out.gr_multiplier = a_k;
  if (!X.canonical_class)
    throw hypothesis_error("canonical class of X is not recorded");
  out.canonical_class = *X.canonical_class;
  out.canonical_class[idx] += 2 * deg;
  return out;
}

SymplecticVerdict symplectic_status(const ManifoldDescriptor& X) {
  SymplecticVerdict v;
  v.standard = X.symplectic;
  if (X.neg_surface) {
    auto [g, m] = *X.neg_surface;
    if ((g > 0 && m < 2 - 2 * g) || (g == 0 && m < 0)) v.reversed = Tri::no;
  }
  return v;
}

bool realizability_check(const ManifoldDescriptor& X,
                         const std::vector<long>& multiplicities) {
  Int prod = 1;
  for (long p : multiplicities) prod *= p;
  return abs(evaluate_all_ones(X.sw)) == abs(prod);
}

bool symmetry_check(const ManifoldDescriptor& X) {
  if (X.sw.is_zero()) return true;
  if ((X.euler + X.signature) % 4 != 0)
    throw identity_error("e + sign of " + X.name +
                         " is not divisible by 4 while SW != 0");
  const long k = (X.euler + X.signature) / 4;
  const Int sign = (k % 2 == 0) ? 1 : -1;
  for (const auto& [m, c] : X.sw.terms())
    if (X.sw.coeff(m.inverse()) != sign * c) return false;
  return true;
}

ManifoldDescriptor identify_classes(const ManifoldDescriptor& X,
                                    const std::string& from_class,
                                    const std::string& to_class) {
  if (from_class == to_class)
    throw domain_error("identify_classes needs two distinct classes");
  const std::size_t from = X.class_index(from_class);
  (void)X.class_index(to_class);
  ManifoldDescriptor d = X;
  d.name = X.name + "[" + from_class + "=" + to_class + "]";
  d.class_basis.clear();
  for (std::size_t i = 0; i < X.class_basis.size(); ++i)
    if (i != from) d.class_basis.push_back(X.class_basis[i]);
  VariableSet tgt = d.vars();
  std::vector<Monomial> images;
  for (std::size_t i = 0; i < X.class_basis.size(); ++i) {
    const std::string& nm = (i == from) ? to_class : X.class_basis[i];
    images.push_back(Monomial::var(tgt.size(), *tgt.index_of(nm), 2));
  }
  d.sw = substitute(X.sw, tgt, images);
  d.tori.clear();
  for (const auto& [nm, m] : X.tori) {
    TorusMark out = m;
    out.class_vec.clear();
    for (std::size_t i = 0; i < X.class_basis.size(); ++i)
      if (i != from) out.class_vec.push_back(m.class_vec[i]);
    out.class_vec[*tgt.index_of(to_class)] += m.class_vec[from];
    d.tori[nm] = out;
  }
  d.pairing.reset();
  d.canonical_class.reset();
  d.warnings.push_back("classes " + from_class + " and " + to_class +
                       " identified by explicit request");
  finalize(d);
  return d;
}

}  // namespace swcalc

}  // namespace knotsw
