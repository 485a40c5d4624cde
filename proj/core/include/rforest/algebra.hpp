#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rforest {

// Exact integer/rational scalars. Everything downstream computes in this
// ring, so all comparisons in the library are literal equality.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) with the convention C(n, k) = 0 for k > n.
BigInt binomial(unsigned n, unsigned k);

BigInt factorial(unsigned n);

BigInt ipow(const BigInt& base, unsigned exp);

/// A power product of formal variables, stored as sorted (variable index,
/// exponent) pairs with no zero exponents.
class Monomial {
 public:
  using Factor = std::pair<unsigned, unsigned>;

  Monomial() = default;  // the empty product, i.e. 1

  static Monomial variable(unsigned index, unsigned exp = 1);

  /// Builds from an arbitrary (possibly unsorted) factor list; zero
  /// exponents are dropped, repeated variables merged.
  static Monomial from_factors(std::vector<Factor> factors);

  unsigned degree() const;
  unsigned exponent_of(unsigned variable_index) const;
  unsigned max_variable() const;  // 0 when constant; check is_constant first
  bool is_constant() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

  const std::vector<Factor>& factors() const { return factors_; }

  /// "x0^2*x1" with the default names, or e.g. "lambda^2*a" when names are
  /// supplied. The constant monomial renders as "1".
  std::string str(std::span<const std::string> names = {}) const;

  /// +1 / 0 / -1 comparing exponent vectors lexicographically (variable 0
  /// first).
  static int lex_compare(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

// Orders terms by total degree descending, ties broken lexicographically
// descending. This is the canonical term order used for iteration and
// printing everywhere.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with BigInt coefficients. Zero
/// coefficients are never stored, so structural equality equals semantic
/// equality.
class MPoly {
 public:
  using TermMap = std::map<Monomial, BigInt, GrlexDescending>;

  MPoly() = default;  // zero
  explicit MPoly(BigInt constant);
  static MPoly variable(unsigned index);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  unsigned total_degree() const;  // 0 for the zero polynomial
  bool is_homogeneous(unsigned degree) const;

  const TermMap& terms() const { return terms_; }
  BigInt coefficient(const Monomial& mono) const;

  /// Adds coeff * mono, erasing the term if the result cancels to zero.
  void add_term(const Monomial& mono, const BigInt& coeff);

  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly operator+(const MPoly& other) const;
  MPoly operator-(const MPoly& other) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& other) const;
  MPoly& operator*=(const MPoly& other);
  MPoly& operator*=(const BigInt& scalar);
  MPoly pow(unsigned exp) const;  // pow(anything, 0) == 1

  bool operator==(const MPoly& other) const = default;

  /// Exact evaluation. point.size() must cover every variable that occurs.
  Rational eval(std::span<const Rational> point) const;
  BigInt eval_int(std::span<const BigInt> point) const;

  /// Canonical text: terms in descending graded-lex order, e.g.
  /// "x0^2 + 2*x0*x1 + x1^2". The zero polynomial renders as "0".
  std::string str(std::span<const std::string> names = {}) const;

  /// (monomial text, coefficient decimal) pairs in canonical term order.
  std::vector<std::pair<std::string, std::string>> term_strings(
      std::span<const std::string> names = {}) const;

 private:
  TermMap terms_;
};

MPoly operator*(const BigInt& scalar, const MPoly& poly);
MPoly operator*(const MPoly& poly, const BigInt& scalar);

}  // namespace rforest
