#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "knotsw/errors.hpp"

namespace knotsw {

using Int = mpz_class;

/// Ordered set of distinct variable names. The order is significant:
/// lexicographic comparisons of monomials give the first variable the
/// highest priority.
class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names);
  static VariableSet single(std::string name);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view n) const;
  bool contains(std::string_view n) const { return index_of(n).has_value(); }

  bool operator==(const VariableSet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Exponent vector of a monomial. Exponents move in half-integer steps and
/// are stored doubled (exp2[i] = 2 * exponent of variable i) so all storage
/// stays integral.
struct Monomial {
  std::vector<std::int64_t> exp2;

  Monomial() = default;
  explicit Monomial(std::vector<std::int64_t> e) : exp2(std::move(e)) {}
  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<std::int64_t>(nvars, 0));
  }
  /// v_i^(e2/2) in an nvars-variable set.
  static Monomial var(std::size_t nvars, std::size_t i, std::int64_t e2 = 2);

  bool is_one() const;
  Monomial inverse() const;
  Monomial operator*(const Monomial& o) const;

  auto operator<=>(const Monomial&) const = default;
};

/// Exact multivariable Laurent polynomial over the integers with
/// half-integer exponents: an element of Z[v_1^{±1/2}, ..., v_n^{±1/2}].
/// Terms map monomials to nonzero coefficients; the zero polynomial stores
/// no terms. Values are immutable in spirit: all operations return new
/// polynomials and never mutate shared state.
class LaurentPoly {
 public:
  LaurentPoly() = default;  // zero over the empty variable set
  explicit LaurentPoly(VariableSet vs) : vars_(std::move(vs)) {}

  static LaurentPoly constant(const VariableSet& vs, Int c);
  static LaurentPoly term(const VariableSet& vs, Monomial m, Int c);
  /// v_i^(e2/2) as a polynomial.
  static LaurentPoly variable(const VariableSet& vs, std::size_t i,
                              std::int64_t e2 = 2);

  const VariableSet& vars() const { return vars_; }
  const std::map<Monomial, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Int coeff(const Monomial& m) const;

  /// Min / max exponent (doubled) of variable i over the support.
  /// Requires a nonzero polynomial.
  std::int64_t min_exp2(std::size_t i) const;
  std::int64_t max_exp2(std::size_t i) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Int& c, const LaurentPoly& p);

  bool operator==(const LaurentPoly&) const = default;

  /// Embeds into a larger variable set by name. Extension is always
  /// explicit; arithmetic on mismatched sets throws.
  LaurentPoly extended_to(const VariableSet& bigger) const;

  void add_term(const Monomial& m, const Int& c);

 private:
  VariableSet vars_;
  std::map<Monomial, Int> terms_;

  void check_same_vars(const LaurentPoly& o) const;
};

/// Exact quotient num/den; throws division_error (carrying the remainder)
/// if den does not divide num in the Laurent ring.
LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den);

bool divides(const LaurentPoly& den, const LaurentPoly& num);

/// Ring homomorphism sending variable i to images[i] (a monomial over
/// `target`). A variable occurring with half-integer exponents must map to
/// a monomial with integer exponents, otherwise the result would leave the
/// half-integer lattice and the call throws.
LaurentPoly substitute(const LaurentPoly& p, const VariableSet& target,
                       const std::vector<Monomial>& images);

/// Sum of all coefficients (the evaluation at v_i = 1 for all i).
Int evaluate_all_ones(const LaurentPoly& p);

/// Canonical representative of the ≐ class of p (equality up to -1 and
/// monomial multiples): shift each variable so min+max exponent is centered
/// at 0, then fix the sign so the lexicographically greatest monomial has a
/// positive coefficient. Idempotent; throws on zero input.
LaurentPoly canonical_rep(const LaurentPoly& p);

/// ≐ comparison; tolerates zero on both sides.
bool doteq(const LaurentPoly& a, const LaurentPoly& b);

struct PolyClass {
  bool symmetric = false;
  bool a_polynomial = false;
  bool monic = false;
};

/// One-variable classification: symmetric (coeff of v^j equals coeff of
/// v^{-j}), A-polynomial (symmetric with coefficient sum ±1), monic
/// A-polynomial (top coefficient ±1).
PolyClass classify(const LaurentPoly& p);

LaurentPoly poly_pow(const LaurentPoly& p, unsigned n);

/// Text form: terms as `c*v^(e)` with e an integer or half-integer `p/2`,
/// e.g. `1*t^(1/2) - 1*t^(-1/2)`; bare coefficient for the constant term.
std::string render(const LaurentPoly& p);

/// Parses the render() format over a known variable set.
LaurentPoly parse_poly(std::string_view text, const VariableSet& vars);
/// Variable set inferred from the text in order of first appearance.
LaurentPoly parse_poly(std::string_view text);

}  // namespace knotsw
