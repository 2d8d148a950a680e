#pragma once

#include "gradecalc/polynomial.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecalc {

using Point = std::vector<double>;
using RationalPoint = std::vector<Rational>;

// [X_j, X_k] = coefficient * X_l, indices 0-based.
struct BracketEntry {
  int j = 0, k = 0, l = 0;
  Rational coefficient;
};

class GradedLieAlgebra {
 public:
  GradedLieAlgebra(std::vector<int> weights, std::vector<BracketEntry> brackets,
                   std::vector<std::string> labels = {});

  std::size_t dim() const { return weights_.size(); }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Entries exactly as supplied.
  const std::vector<BracketEntry>& entries() const { return entries_; }
  // c_{jk}^l after antisymmetric completion of entries given for one ordering only.
  const Rational& structure_constant(int j, int k, int l) const;

  // Bracket of two coordinate vectors.
  std::vector<Rational> bracket(std::span<const Rational> a, std::span<const Rational> b) const;
  std::vector<Polynomial> bracket(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) const;

  int homogeneous_dimension() const;
  int step() const;  // nilpotency step from the lower central series
  bool is_abelian() const;
  bool is_stratified() const;
  int label_index(const std::string& label) const;  // -1 if absent

 private:
  std::vector<int> weights_;
  std::vector<BracketEntry> entries_;
  std::vector<std::string> labels_;
  std::vector<Rational> c_;  // n^3 dense table, index (j*n + k)*n + l
  bool inconsistent_ = false;
};

struct Violation {
  std::string kind;  // "antisymmetry", "jacobi", "grading", "weights", "labels", "diagonal"
  int j = -1, k = -1, l = -1;  // 0-based offending triple where meaningful
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_algebra(const GradedLieAlgebra& alg);

class UnsupportedStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxBchStep = 6;

// Group law in exponential coordinates: m_l(x, y) in variables (x_1..x_n, y_1..y_n).
class GroupLaw {
 public:
  GroupLaw(std::shared_ptr<const GradedLieAlgebra> alg, std::vector<Polynomial> coords);

  const GradedLieAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const GradedLieAlgebra> algebra_ptr() const { return alg_; }
  std::size_t dim() const { return alg_->dim(); }
  const std::vector<Polynomial>& coordinates() const { return coords_; }
  const std::vector<CompiledPolynomial>& compiled() const { return compiled_; }

  Point multiply(std::span<const double> x, std::span<const double> y) const;
  RationalPoint multiply(std::span<const Rational> x, std::span<const Rational> y) const;
  Point invert(std::span<const double> x) const;
  RationalPoint invert(std::span<const Rational> x) const;

 private:
  std::shared_ptr<const GradedLieAlgebra> alg_;
  std::vector<Polynomial> coords_;
  std::vector<CompiledPolynomial> compiled_;
};

struct LawCheck {
  bool identity = false;
  bool associativity = false;
  bool homogeneity = false;
  bool inverse = false;
  bool ok() const { return identity && associativity && homogeneity && inverse; }
};

// Symbolic verification of the group-law invariants.
LawCheck check_group_law(const GroupLaw& law);

// Truncated Baker-Campbell-Hausdorff series in Dynkin form. Throws std::invalid_argument
// for an invalid algebra and UnsupportedStep when step > kMaxBchStep.
GroupLaw bch_group_law(const GradedLieAlgebra& alg);
GroupLaw bch_group_law(std::shared_ptr<const GradedLieAlgebra> alg);

// One Dynkin word: coefficient of the right-nested bracket [w_1,[w_2,...,w_m]] where
// false = X and true = Y.
struct BchWord {
  std::vector<bool> letters;
  Rational coefficient;
};
// All words of length <= degree with nonzero total coefficient, in a fixed order.
const std::vector<BchWord>& bch_terms(int degree);

int homogeneous_dimension(const GradedLieAlgebra& alg);

}  // namespace gradecalc
