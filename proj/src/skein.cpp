#include "knotsw/skein.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace knotsw {

namespace {

// Parallel tasks are only spawned near the root; deeper nodes are cheap
// enough that task overhead dominates.
constexpr int kTaskDepth = 5;

}  // namespace

void SkeinEngine::clear_cache() {
  std::lock_guard<std::mutex> lk(mu_);
  cache_.clear();
}

std::size_t SkeinEngine::cache_size() const {
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.size();
}

LaurentPoly SkeinEngine::eval(const LinkDiagram& d, int depth, int depth_cap,
                              bool parallel, ResolutionNode* node) {
  if (depth > depth_cap)
    throw identity_error("resolution tree depth exceeded its bound; "
                         "complexity descent is broken");
  const std::string key = d.canonical_code();
  {
    std::lock_guard<std::mutex> lk(mu_);
    ++stats_.nodes;
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++stats_.cache_hits;
      if (node) node->status = "cached";
      if (node) {
        node->c = d.complexity().first;
        node->b = d.complexity().second;
      }
      return it->second;
    }
  }
  const auto [c, b] = d.complexity();
  if (node) {
    node->c = c;
    node->b = b;
    node->pd = render_pd(d);
  }
  LaurentPoly val(s_vars_);
  if (d.is_split()) {
    if (node) node->status = "base:split";
    // val stays 0
  } else if (b == 0) {
    if (node)
      node->status = d.n_components() == 1 ? "base:unknot" : "base:unlink";
    if (d.n_components() == 1) val = LaurentPoly::constant(s_vars_, 1);
    // descending with >= 2 components is an unlink: 0
  } else {
    const int k = *d.first_bad_crossing();
    const int sign = d.crossings()[k].sign();
    LinkDiagram ch = d.crossing_change(k);
    LinkDiagram re = d.resolve(k);
    // strict lexicographic descent along both tree edges
    if (!(ch.complexity() < std::make_pair(c, b)) ||
        !(re.complexity() < std::make_pair(c, b)))
      throw identity_error("complexity failed to decrease at a skein move");
    ResolutionNode *chn = nullptr, *ren = nullptr;
    if (node) {
      node->kids.push_back(std::make_unique<ResolutionNode>());
      node->kids.push_back(std::make_unique<ResolutionNode>());
      chn = node->kids[0].get();
      ren = node->kids[1].get();
      chn->move = "change@" + std::to_string(k + 1);
      ren->move = "resolve@" + std::to_string(k + 1);
    }
    LaurentPoly vch, vre;
#ifdef _OPENMP
    if (parallel && depth < kTaskDepth) {
#pragma omp task shared(vch)
      vch = eval(ch, depth + 1, depth_cap, parallel, chn);
#pragma omp task shared(vre)
      vre = eval(re, depth + 1, depth_cap, parallel, ren);
#pragma omp taskwait
    } else {
      vch = eval(ch, depth + 1, depth_cap, parallel, chn);
      vre = eval(re, depth + 1, depth_cap, parallel, ren);
    }
#else
    (void)parallel;
    vch = eval(ch, depth + 1, depth_cap, parallel, chn);
    vre = eval(re, depth + 1, depth_cap, parallel, ren);
#endif
    LaurentPoly zfac = LaurentPoly::variable(s_vars_, 0, 2) -
                       LaurentPoly::variable(s_vars_, 0, -2);
    val = (sign > 0) ? vch + zfac * vre : vch - zfac * vre;
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    cache_.emplace(key, val);
  }
  return val;
}

LaurentPoly SkeinEngine::normalize(const LinkDiagram& d,
                                   const LaurentPoly& raw) const {
  if (raw.is_zero()) return raw;
  if (d.n_components() == 1) {
    // knots: fix the sign so the leading coefficient is positive; the
    // exponent window is already symmetric about zero
    if (raw.terms().rbegin()->second < 0) return -raw;
    return raw;
  }
  return canonical_rep(raw);
}

SkeinResult SkeinEngine::alexander_serial(const LinkDiagram& d,
                                          bool keep_tree) {
  SkeinResult r;
  {
    std::lock_guard<std::mutex> lk(mu_);
    stats_ = SkeinStats{};
  }
  // depth is bounded by sum over crossing counts of (bad crossings + 1);
  // the quadratic cap only trips on a broken descent
  const int c0 = d.n_crossings();
  const int cap = (c0 + 1) * (c0 + 2) / 2 + 4;
  if (keep_tree) {
    r.tree = std::make_unique<ResolutionNode>();
    r.tree->move = "root";
  }
  r.raw = eval(d, 0, cap, /*parallel=*/false, r.tree.get());
  r.poly = normalize(d, r.raw);
  std::lock_guard<std::mutex> lk(mu_);
  r.stats = stats_;
  return r;
}

SkeinResult SkeinEngine::alexander(const LinkDiagram& d, bool keep_tree) {
#ifdef _OPENMP
  if (jobs_ > 1 && !keep_tree) {
    SkeinResult r;
    {
      std::lock_guard<std::mutex> lk(mu_);
      stats_ = SkeinStats{};
    }
    const int c0 = d.n_crossings();
    const int cap = (c0 + 1) * (c0 + 2) / 2 + 4;
    LaurentPoly raw;
#pragma omp parallel num_threads(jobs_)
#pragma omp single
    raw = eval(d, 0, cap, /*parallel=*/true, nullptr);
    r.raw = raw;
    r.poly = normalize(d, r.raw);
    std::lock_guard<std::mutex> lk(mu_);
    r.stats = stats_;
    return r;
  }
#endif
  return alexander_serial(d, keep_tree);
}

LaurentPoly SkeinEngine::raw_value(const LinkDiagram& d) {
  const int c0 = d.n_crossings();
  const int cap = (c0 + 1) * (c0 + 2) / 2 + 4;
  return eval(d, 0, cap, false, nullptr);
}

LaurentPoly SkeinEngine::conway(const LinkDiagram& d) {
  LaurentPoly p = raw_value(d);
  VariableSet zv = VariableSet::single("z");
  LaurentPoly out(zv);
  LaurentPoly z = LaurentPoly::variable(s_vars_, 0, 2) -
                  LaurentPoly::variable(s_vars_, 0, -2);
  while (!p.is_zero()) {
    auto top = *p.terms().rbegin();
    std::int64_t e2 = top.first.exp2[0];
    if (e2 < 0 || e2 % 2 != 0)
      throw identity_error(
          "skein value is not a polynomial in z = s - s^{-1}");
    unsigned m = static_cast<unsigned>(e2 / 2);  // s-exponent
    out.add_term(Monomial::var(1, 0, 2 * static_cast<std::int64_t>(m)),
                 top.second);
    p -= top.second * poly_pow(z, m);
    if (!p.is_zero() && p.terms().rbegin()->first.exp2[0] >= e2)
      throw identity_error("z-rewrite failed to reduce the degree");
  }
  return out;
}

LaurentPoly SkeinEngine::as_t_poly(const LaurentPoly& p_in_s) {
  VariableSet tv = VariableSet::single("t");
  LaurentPoly out(tv);
  for (const auto& [m, c] : p_in_s.terms()) {
    if (m.exp2[0] % 4 != 0)
      throw domain_error("polynomial has odd powers of s; not in Z[t^{±1}]");
    out.add_term(Monomial::var(1, 0, m.exp2[0] / 2), c);
  }
  return out;
}

}  // namespace knotsw
