#include "rforest/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rforest {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact at every step along a Pascal row
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp > 0) b *= b;
  }
  return result;
}

Monomial Monomial::variable(unsigned index, unsigned exp) {
  Monomial mono;
  if (exp > 0) mono.factors_.push_back({index, exp});
  return mono;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial mono;
  for (const auto& [var, exp] : factors) {
    if (exp == 0) continue;
    if (!mono.factors_.empty() && mono.factors_.back().first == var) {
      mono.factors_.back().second += exp;
    } else {
      mono.factors_.push_back({var, exp});
    }
  }
  return mono;
}

unsigned Monomial::degree() const {
  unsigned total = 0;
  for (const auto& [var, exp] : factors_) total += exp;
  return total;
}

unsigned Monomial::exponent_of(unsigned variable_index) const {
  for (const auto& [var, exp] : factors_) {
    if (var == variable_index) return exp;
    if (var > variable_index) break;
  }
  return 0;
}

unsigned Monomial::max_variable() const {
  return factors_.empty() ? 0 : factors_.back().first;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial result;
  result.factors_.reserve(factors_.size() + other.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < other.factors_.size()) {
    if (j == other.factors_.size() ||
        (i < factors_.size() && factors_[i].first < other.factors_[j].first)) {
      result.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() ||
               other.factors_[j].first < factors_[i].first) {
      result.factors_.push_back(other.factors_[j++]);
    } else {
      result.factors_.push_back(
          {factors_[i].first, factors_[i].second + other.factors_[j].second});
      ++i;
      ++j;
    }
  }
  return result;
}

int Monomial::lex_compare(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() || j < b.factors_.size()) {
    const unsigned va =
        i < a.factors_.size() ? a.factors_[i].first : ~0u;
    const unsigned vb =
        j < b.factors_.size() ? b.factors_[j].first : ~0u;
    if (va < vb) return 1;   // a has a positive exponent at an earlier variable
    if (vb < va) return -1;
    if (a.factors_[i].second != b.factors_[j].second) {
      return a.factors_[i].second > b.factors_[j].second ? 1 : -1;
    }
    ++i;
    ++j;
  }
  return 0;
}

std::string Monomial::str(std::span<const std::string> names) const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [var, exp] : factors_) {
    if (!first) out << '*';
    first = false;
    if (var < names.size()) {
      out << names[var];
    } else {
      out << 'x' << var;
    }
    if (exp > 1) out << '^' << exp;
  }
  return out.str();
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  return Monomial::lex_compare(a, b) > 0;
}

MPoly::MPoly(BigInt constant) {
  if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

MPoly MPoly::variable(unsigned index) {
  MPoly poly;
  poly.terms_.emplace(Monomial::variable(index), 1);
  return poly;
}

unsigned MPoly::total_degree() const {
  // Terms iterate in descending graded order, so the first term is maximal.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

bool MPoly::is_homogeneous(unsigned degree) const {
  for (const auto& [mono, coeff] : terms_) {
    if (mono.degree() != degree) return false;
  }
  return true;
}

BigInt MPoly::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void MPoly::add_term(const Monomial& mono, const BigInt& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
  return *this;
}

MPoly MPoly::operator+(const MPoly& other) const {
  MPoly result = *this;
  result += other;
  return result;
}

MPoly MPoly::operator-(const MPoly& other) const {
  MPoly result = *this;
  result -= other;
  return result;
}

MPoly MPoly::operator-() const {
  MPoly result;
  for (const auto& [mono, coeff] : terms_) result.terms_.emplace(mono, -coeff);
  return result;
}

MPoly MPoly::operator*(const MPoly& other) const {
  MPoly result;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      result.add_term(ma * mb, ca * cb);
    }
  }
  return result;
}

MPoly& MPoly::operator*=(const MPoly& other) {
  *this = *this * other;
  return *this;
}

MPoly& MPoly::operator*=(const BigInt& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= scalar;
  return *this;
}

MPoly MPoly::pow(unsigned exp) const {
  MPoly result{BigInt(1)};
  MPoly base = *this;
  while (exp > 0) {
    if (exp & 1u) result *= base;
    exp >>= 1u;
    if (exp > 0) base *= base;
  }
  return result;
}

namespace {

template <typename Scalar>
Scalar eval_impl(const MPoly::TermMap& terms, std::span<const Scalar> point) {
  Scalar total = 0;
  for (const auto& [mono, coeff] : terms) {
    if (!mono.is_constant() && mono.max_variable() >= point.size()) {
      throw std::invalid_argument(
          "MPoly::eval: point does not cover variable x" +
          std::to_string(mono.max_variable()));
    }
    Scalar term = coeff;
    for (const auto& [var, exp] : mono.factors()) {
      for (unsigned e = 0; e < exp; ++e) term *= point[var];
    }
    total += term;
  }
  return total;
}

}  // namespace

Rational MPoly::eval(std::span<const Rational> point) const {
  return eval_impl<Rational>(terms_, point);
}

BigInt MPoly::eval_int(std::span<const BigInt> point) const {
  return eval_impl<BigInt>(terms_, point);
}

std::string MPoly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    const bool negative = coeff < 0;
    BigInt mag = negative ? BigInt(-coeff) : coeff;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.is_constant()) {
      out << mag.str();
    } else if (mag == 1) {
      out << mono.str(names);
    } else {
      out << mag.str() << '*' << mono.str(names);
    }
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> MPoly::term_strings(
    std::span<const std::string> names) const {
  std::vector<std::pair<std::string, std::string>> result;
  result.reserve(terms_.size());
  for (const auto& [mono, coeff] : terms_) {
    result.emplace_back(mono.str(names), coeff.str());
  }
  return result;
}

MPoly operator*(const BigInt& scalar, const MPoly& poly) {
  MPoly result = poly;
  result *= scalar;
  return result;
}

MPoly operator*(const MPoly& poly, const BigInt& scalar) {
  MPoly result = poly;
  result *= scalar;
  return result;
}

}  // namespace rforest
