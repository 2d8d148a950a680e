#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gradecalc {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);
Rational make_rational(long long num, long long den = 1);
std::string to_string(const Rational& q);

// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  std::size_t num_vars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial derivative(std::size_t var) const;
  // Replace variable i by values[i]; all values share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& values) const;
  // Embed into a larger variable set: variable i becomes variable map[i].
  Polynomial remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  bool depends_on(std::size_t var) const;
  // Weighted degree of each monomial; empty polynomial has no degrees.
  std::vector<long> weighted_degrees(std::span<const int> weights) const;
  bool is_weighted_homogeneous(std::span<const int> weights, long degree) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

// Double-precision evaluation form of a Polynomial.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  double operator()(const double* x) const;
  std::size_t num_vars() const { return nvars_; }
  bool is_zero() const { return coef_.empty(); }

  // Fix variables first .. first+values.size()-1 and fold them into the coefficients.
  CompiledPolynomial partial(std::span<const double> values, std::size_t first) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coef_;
  std::vector<unsigned> exps_;  // row-major, nvars_ per term
};

}  // namespace gradecalc
