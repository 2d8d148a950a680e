#pragma once

#include "gradecalc/algebra.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecalc {

// X_j f = sum_k a_{jk}(x) d_k f.
struct LeftInvariantField {
  int index = 0;
  std::vector<Polynomial> coefficients;  // a_{jk}, k = 0..n-1, in n variables
};

std::vector<LeftInvariantField> left_invariant_fields(const GroupLaw& law);

// Linear differential operator sum_beta c_beta(x) d^beta with polynomial coefficients.
class PolyDiffOp {
 public:
  using MultiIndex = std::vector<unsigned>;

  PolyDiffOp() = default;
  explicit PolyDiffOp(std::size_t nvars) : nvars_(nvars) {}
  static PolyDiffOp identity(std::size_t nvars);
  static PolyDiffOp from_field(const LeftInvariantField& f);

  std::size_t num_vars() const { return nvars_; }
  const std::map<MultiIndex, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const MultiIndex& beta, const Polynomial& c);

  PolyDiffOp& operator+=(const PolyDiffOp& o);
  PolyDiffOp& operator*=(const Rational& c);
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b);
  // Composition (a*b) f = a(b f).
  friend PolyDiffOp operator*(const PolyDiffOp& a, const PolyDiffOp& b);
  bool operator==(const PolyDiffOp& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial apply(const Polynomial& f) const;
  unsigned max_order(std::size_t axis) const;
  unsigned order() const;
  // True if x_axis occurs in any coefficient.
  bool coefficient_depends_on(std::size_t axis) const;
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_ = 0;
  std::map<MultiIndex, Polynomial> terms_;
};

// Formal sum of coefficient * X_{w_1} ... X_{w_m}.
class DiffOpExpr {
 public:
  struct Term {
    Rational coefficient;
    std::vector<int> word;
  };

  DiffOpExpr() = default;
  explicit DiffOpExpr(std::size_t n) : n_(n) {}
  static DiffOpExpr field(std::size_t n, int j);
  static DiffOpExpr scalar(std::size_t n, const Rational& c);

  std::size_t num_fields() const { return n_; }
  // Normalized: identical words combined, zero terms removed, words ordered.
  std::vector<Term> terms() const;
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Rational& c, const std::vector<int>& word);

  DiffOpExpr& operator+=(const DiffOpExpr& o);
  DiffOpExpr& operator-=(const DiffOpExpr& o);
  DiffOpExpr& operator*=(const Rational& c);
  friend DiffOpExpr operator+(DiffOpExpr a, const DiffOpExpr& b) { return a += b; }
  friend DiffOpExpr operator-(DiffOpExpr a, const DiffOpExpr& b) { return a -= b; }
  friend DiffOpExpr operator*(DiffOpExpr a, const Rational& c) { return a *= c; }
  friend DiffOpExpr operator*(const Rational& c, DiffOpExpr a) { return a *= c; }
  friend DiffOpExpr operator*(const DiffOpExpr& a, const DiffOpExpr& b);
  bool operator==(const DiffOpExpr& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& labels) const;

 private:
  std::size_t n_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

DiffOpExpr power(const DiffOpExpr& e, int k);
DiffOpExpr transpose(const DiffOpExpr& e);
DiffOpExpr commutator(const DiffOpExpr& a, const DiffOpExpr& b);

struct DegreeInfo {
  std::set<long> degrees;
  bool homogeneous() const { return degrees.size() == 1; }
  long degree() const;  // throws if not homogeneous
};
DegreeInfo homogeneous_degree(const DiffOpExpr& e, std::span<const int> weights);

// Exact expansion into sum c_beta(x) d^beta.
PolyDiffOp normal_form(const DiffOpExpr& e, const std::vector<LeftInvariantField>& fields);

class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(const std::string& msg, std::size_t position, const std::string& input);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: sum of [coef] factor ... with factor = LABEL['^'k] | '(' expr ')'['^'k];
// coefficients are integers, fractions a/b, or decimals.
DiffOpExpr parse_expr(const std::string& text, const std::vector<std::string>& labels);

enum class Provenance { SublaplacianNegative, Power, Example2Nu0, Custom };
std::string to_string(Provenance p);

struct RocklandSpec {
  DiffOpExpr expr;
  int degree = 0;
  Provenance provenance = Provenance::Custom;
};

class StratificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

RocklandSpec build_rockland_example(const GradedLieAlgebra& alg, int nu0, const std::vector<double>& c = {});
RocklandSpec sublaplacian(const GradedLieAlgebra& alg);
RocklandSpec power(const RocklandSpec& spec, int k);
// Requires a homogeneous expression; positivity is only probed numerically downstream.
RocklandSpec custom_operator(const GradedLieAlgebra& alg, const DiffOpExpr& e);
RocklandSpec custom_operator(const GradedLieAlgebra& alg, const std::string& text);

}  // namespace gradecalc
