#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecalc {

inline constexpr std::size_t kDefaultPointBudget = 20000;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anisotropic box grid centred at 0 with an odd number of nodes per axis.
class Grid {
 public:
  Grid() = default;
  Grid(std::vector<double> half_widths, std::vector<int> counts);
  // Half-widths R^{w_j}.
  static Grid dilation_adapted(std::span<const int> weights, double scale, std::vector<int> counts);

  std::size_t dim() const { return half_.size(); }
  std::size_t size() const { return size_; }
  int count(std::size_t axis) const { return counts_[axis]; }
  const std::vector<int>& counts() const { return counts_; }
  double half_width(std::size_t axis) const { return half_[axis]; }
  const std::vector<double>& half_widths() const { return half_; }
  double spacing(std::size_t axis) const { return spacing_[axis]; }
  const std::vector<double>& spacings() const { return spacing_; }
  double max_spacing() const;
  double cell_volume() const { return cell_volume_; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  double coordinate(std::size_t axis, int i) const { return -half_[axis] + i * spacing_[axis]; }
  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const int> idx) const;
  std::vector<double> node(std::size_t flat) const;
  void node(std::size_t flat, double* out) const;
  std::size_t origin_index() const;
  bool contains(std::span<const double> x) const;

  // The image D_r G: half-widths and spacings scaled by r^{w_j}.
  Grid dilated(std::span<const int> weights, double r) const;
  void check_budget(std::size_t budget = kDefaultPointBudget) const;

  bool operator==(const Grid& o) const { return half_ == o.half_ && counts_ == o.counts_; }

 private:
  std::vector<double> half_;
  std::vector<int> counts_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;  // last axis fastest
  std::size_t size_ = 0;
  double cell_volume_ = 0;
};

template <class T>
class BasicGridFunction {
 public:
  BasicGridFunction() = default;
  explicit BasicGridFunction(Grid g) : grid_(std::move(g)), values_(grid_.size(), T{}) {}
  BasicGridFunction(Grid g, std::vector<T> v) : grid_(std::move(g)), values_(std::move(v)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("value count does not match grid");
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<std::complex<double>>;

GridFunction sample(const Grid& g, const std::function<double(std::span<const double>)>& f);

// Nodes at least `margin` steps away from every face.
std::vector<char> interior_mask(const Grid& g, int margin);
std::vector<char> ball_mask(const Grid& g, const std::vector<double>& lower, const std::vector<double>& upper);

double haar_integrate(const GridFunction& f);
double haar_integrate(const GridFunction& f, const std::vector<char>& mask);
// p = infinity is allowed; NaN entries are never skipped silently (they propagate).
double lp_norm(const GridFunction& f, double p);
double lp_norm(const GridFunction& f, double p, const std::vector<char>& mask);
double lp_distance(const GridFunction& f, const GridFunction& g, double p);
double lp_distance(const GridFunction& f, const GridFunction& g, double p, const std::vector<char>& mask);
double inner_product(const GridFunction& f, const GridFunction& g);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& a);
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);
// g~(x) = g(-x); exact on symmetric grids.
GridFunction reflect(const GridFunction& g);

// Tensor Lagrange interpolation of order 1 (multilinear) or 3 (cubic); 0 outside the box.
double interpolate(const GridFunction& f, std::span<const double> x, int order = 1);

// One row per node: coordinates, optional extra columns, then the value.
void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_name = "value");
// Stacked family with a parameter column (heat time t, potential order a, ...).
void write_csv_family(std::ostream& os, const std::vector<GridFunction>& fs, const std::vector<double>& params,
                      const std::string& param_name = "t");

}  // namespace gradecalc
