#include "knotsw/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace knotsw {

VariableSet::VariableSet(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw domain_error("empty variable name");
    if (!seen.insert(n).second)
      throw domain_error("duplicate variable name: " + n);
  }
}

VariableSet VariableSet::single(std::string name) {
  return VariableSet(std::vector<std::string>{std::move(name)});
}

std::optional<std::size_t> VariableSet::index_of(std::string_view n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

Monomial Monomial::var(std::size_t nvars, std::size_t i, std::int64_t e2) {
  Monomial m = one(nvars);
  m.exp2.at(i) = e2;
  return m;
}

bool Monomial::is_one() const {
  return std::all_of(exp2.begin(), exp2.end(),
                     [](std::int64_t e) { return e == 0; });
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& e : m.exp2) e = -e;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (exp2.size() != o.exp2.size())
    throw domain_error("monomial arity mismatch");
  Monomial m = *this;
  for (std::size_t i = 0; i < exp2.size(); ++i) m.exp2[i] += o.exp2[i];
  return m;
}

LaurentPoly LaurentPoly::constant(const VariableSet& vs, Int c) {
  LaurentPoly p(vs);
  p.add_term(Monomial::one(vs.size()), c);
  return p;
}

LaurentPoly LaurentPoly::term(const VariableSet& vs, Monomial m, Int c) {
  if (m.exp2.size() != vs.size())
    throw domain_error("monomial arity does not match variable set");
  LaurentPoly p(vs);
  p.add_term(m, c);
  return p;
}

LaurentPoly LaurentPoly::variable(const VariableSet& vs, std::size_t i,
                                  std::int64_t e2) {
  return term(vs, Monomial::var(vs.size(), i, e2), 1);
}

Int LaurentPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Int(0) : it->second;
}

std::int64_t LaurentPoly::min_exp2(std::size_t i) const {
  if (is_zero()) throw domain_error("min_exp2 of zero polynomial");
  std::int64_t m = terms_.begin()->first.exp2.at(i);
  for (const auto& [mono, c] : terms_) m = std::min(m, mono.exp2[i]);
  return m;
}

std::int64_t LaurentPoly::max_exp2(std::size_t i) const {
  if (is_zero()) throw domain_error("max_exp2 of zero polynomial");
  std::int64_t m = terms_.begin()->first.exp2.at(i);
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.exp2[i]);
  return m;
}

void LaurentPoly::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  if (m.exp2.size() != vars_.size())
    throw domain_error("monomial arity does not match variable set");
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_same_vars(const LaurentPoly& o) const {
  if (!(vars_ == o.vars_))
    throw domain_error(
        "variable set mismatch (extend explicitly with extended_to)");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same_vars(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same_vars(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_vars(b);
  LaurentPoly r(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

LaurentPoly operator*(const Int& c, const LaurentPoly& p) {
  LaurentPoly r(p.vars_);
  if (c == 0) return r;
  for (const auto& [m, k] : p.terms_) r.terms_.emplace(m, c * k);
  return r;
}

LaurentPoly LaurentPoly::extended_to(const VariableSet& bigger) const {
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto idx = bigger.index_of(vars_.name(i));
    if (!idx)
      throw domain_error("extended_to: variable " + vars_.name(i) +
                         " missing from target set");
    where[i] = *idx;
  }
  LaurentPoly r(bigger);
  for (const auto& [m, c] : terms_) {
    Monomial big = Monomial::one(bigger.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      big.exp2[where[i]] = m.exp2[i];
    r.terms_.emplace(std::move(big), c);
  }
  return r;
}

LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw domain_error("division by zero polynomial");
  if (!(num.vars() == den.vars()))
    throw domain_error("divide_exact: variable set mismatch");
  LaurentPoly q(num.vars());
  if (num.is_zero()) return q;

  // Per-variable exponent window of any exact quotient; a quotient term
  // escaping it proves the division non-exact.
  const std::size_t nv = num.vars().size();
  std::vector<std::int64_t> lo(nv), hi(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    lo[i] = num.min_exp2(i) - den.min_exp2(i);
    hi[i] = num.max_exp2(i) - den.max_exp2(i);
    if (lo[i] > hi[i])
      throw division_error("non-exact polynomial division", render(num));
  }

  LaurentPoly r = num;
  const auto& dlt = *den.terms().rbegin();  // greatest monomial of den
  while (!r.is_zero()) {
    const auto& rlt = *r.terms().rbegin();
    Monomial m = rlt.first * dlt.first.inverse();
    for (std::size_t i = 0; i < nv; ++i)
      if (m.exp2[i] < lo[i] || m.exp2[i] > hi[i])
        throw division_error("non-exact polynomial division", render(r));
    Int c = rlt.second / dlt.second;
    if (c * dlt.second != rlt.second)
      throw division_error("non-exact polynomial division", render(r));
    LaurentPoly t = LaurentPoly::term(num.vars(), m, c);
    q += t;
    r -= t * den;
  }
  return q;
}

bool divides(const LaurentPoly& den, const LaurentPoly& num) {
  try {
    divide_exact(num, den);
    return true;
  } catch (const division_error&) {
    return false;
  }
}

LaurentPoly substitute(const LaurentPoly& p, const VariableSet& target,
                       const std::vector<Monomial>& images) {
  if (images.size() != p.vars().size())
    throw domain_error("substitute: need one image per variable");
  for (const auto& img : images)
    if (img.exp2.size() != target.size())
      throw domain_error("substitute: image over wrong variable set");

  LaurentPoly r(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial out = Monomial::one(target.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (m.exp2[i] == 0) continue;
      if (m.exp2[i] % 2 != 0) {
        for (std::int64_t e : images[i].exp2)
          if (e % 2 != 0)
            throw domain_error(
                "substitute: half-integer exponent of " + p.vars().name(i) +
                " meets a half-integer image; result leaves the lattice");
      }
      for (std::size_t t = 0; t < target.size(); ++t)
        out.exp2[t] += m.exp2[i] * images[i].exp2[t] / 2;
    }
    r.add_term(out, c);
  }
  return r;
}

Int evaluate_all_ones(const LaurentPoly& p) {
  Int s = 0;
  for (const auto& [m, c] : p.terms()) s += c;
  return s;
}

LaurentPoly canonical_rep(const LaurentPoly& p) {
  if (p.is_zero()) throw domain_error("canonical_rep of zero polynomial");
  const std::size_t nv = p.vars().size();
  Monomial shift = Monomial::one(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    // center so min+max lands in {0,1}; the floor keeps the shift a
    // half-integer and the choice shift-equivariant
    std::int64_t s = p.min_exp2(i) + p.max_exp2(i);
    shift.exp2[i] = -(s >> 1);
  }
  LaurentPoly r(p.vars());
  for (const auto& [m, c] : p.terms()) r.add_term(m * shift, c);
  if (r.terms().rbegin()->second < 0) r = -r;
  return r;
}

bool doteq(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!(a.vars() == b.vars())) return false;
  return canonical_rep(a) == canonical_rep(b);
}

PolyClass classify(const LaurentPoly& p) {
  if (p.vars().size() > 1)
    throw domain_error("classify expects a one-variable polynomial");
  PolyClass out;
  out.symmetric = true;
  for (const auto& [m, c] : p.terms())
    if (p.coeff(m.inverse()) != c) {
      out.symmetric = false;
      break;
    }
  if (!out.symmetric) return out;
  Int s = evaluate_all_ones(p);
  out.a_polynomial = (s == 1 || s == -1);
  if (out.a_polynomial) {
    Int top = p.is_zero() ? Int(0) : p.terms().rbegin()->second;
    out.monic = (top == 1 || top == -1);
  }
  return out;
}

LaurentPoly poly_pow(const LaurentPoly& p, unsigned n) {
  LaurentPoly r = LaurentPoly::constant(p.vars(), 1);
  for (unsigned i = 0; i < n; ++i) r = r * p;
  return r;
}

namespace {

void render_exp2(std::ostringstream& os, std::int64_t e2) {
  if (e2 % 2 == 0)
    os << e2 / 2;
  else
    os << e2 << "/2";
}

}  // namespace

std::string render(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // greatest monomial first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Int& c = it->second;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (it->first.is_one()) {
      os << mag.get_str();
      continue;
    }
    os << mag.get_str();
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
      if (it->first.exp2[i] == 0) continue;
      os << "*" << p.vars().name(i) << "^(";
      render_exp2(os, it->first.exp2[i]);
      os << ")";
    }
  }
  return os.str();
}

namespace {

struct PolyParser {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip_ws();
    if (i >= s.size()) throw parse_error("unexpected end of polynomial text");
    return s[i++];
  }
  void expect(char c) {
    char g = get();
    if (g != c)
      throw parse_error(std::string("expected '") + c + "' in polynomial");
  }

  std::string integer_digits() {
    skip_ws();
    std::string out;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) out += s[i++];
    std::size_t before = out.size();
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      out += s[i++];
    if (out.size() == before) throw parse_error("expected integer");
    return out;
  }

  std::string identifier() {
    skip_ws();
    std::string out;
    auto head = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto body = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
             c == '\'';
    };
    if (i >= s.size() || !head(s[i]))
      throw parse_error("expected variable name");
    out += s[i++];
    while (i < s.size() && body(s[i])) out += s[i++];
    return out;
  }

  // e or p/2, doubled on return
  std::int64_t exponent2() {
    std::int64_t num = std::stoll(integer_digits());
    skip_ws();
    if (peek() == '/') {
      get();
      std::int64_t den = std::stoll(integer_digits());
      if (den != 2) throw parse_error("only halves are allowed in exponents");
      return num;
    }
    return 2 * num;
  }

  struct RawTerm {
    Int coeff{1};
    std::vector<std::pair<std::string, std::int64_t>> factors;  // (var, exp2)
  };

  RawTerm term() {
    RawTerm t;
    skip_ws();
    bool saw_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      t.coeff = Int(integer_digits());
      saw_coeff = true;
    }
    bool expect_var = !saw_coeff;
    while (true) {
      skip_ws();
      if (expect_var ||
          (i < s.size() && s[i] == '*')) {
        if (!expect_var) get();  // consume '*'
        std::string v = identifier();
        std::int64_t e2 = 2;
        skip_ws();
        if (peek() == '^') {
          get();
          bool paren = peek() == '(';
          if (paren) get();
          e2 = exponent2();
          if (paren) expect(')');
        }
        t.factors.emplace_back(std::move(v), e2);
        expect_var = false;
        continue;
      }
      break;
    }
    return t;
  }

  std::vector<std::pair<Int, std::vector<std::pair<std::string, std::int64_t>>>>
  parse_all() {
    std::vector<
        std::pair<Int, std::vector<std::pair<std::string, std::int64_t>>>>
        out;
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      get();
      neg = true;
    } else if (peek() == '+') {
      get();
    }
    while (true) {
      RawTerm t = term();
      if (neg) t.coeff = -t.coeff;
      out.emplace_back(t.coeff, t.factors);
      if (eof()) break;
      char op = get();
      if (op == '+')
        neg = false;
      else if (op == '-')
        neg = true;
      else
        throw parse_error("expected '+' or '-' between terms");
    }
    return out;
  }
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, const VariableSet& vars) {
  PolyParser pp{text};
  if (pp.eof()) throw parse_error("empty polynomial text");
  {
    // allow a bare "0"
    std::string trimmed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "0") return LaurentPoly(vars);
  }
  auto raw = pp.parse_all();
  LaurentPoly p(vars);
  for (auto& [c, factors] : raw) {
    Monomial m = Monomial::one(vars.size());
    for (auto& [v, e2] : factors) {
      auto idx = vars.index_of(v);
      if (!idx) throw parse_error("unknown variable in polynomial: " + v);
      m.exp2[*idx] += e2;
    }
    p.add_term(m, c);
  }
  return p;
}

LaurentPoly parse_poly(std::string_view text) {
  PolyParser pp{text};
  if (pp.eof()) throw parse_error("empty polynomial text");
  {
    std::string trimmed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "0") return LaurentPoly();
  }
  auto raw = pp.parse_all();
  std::vector<std::string> names;
  for (auto& [c, factors] : raw)
    for (auto& [v, e2] : factors)
      if (std::find(names.begin(), names.end(), v) == names.end())
        names.push_back(v);
  return parse_poly(text, VariableSet(names));
}

}  // namespace knotsw
