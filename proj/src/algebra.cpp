#include "gradecalc/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace gradecalc {

namespace {

using RVec = std::vector<Rational>;

// Row-reduced basis of the span of vecs.
std::vector<RVec> row_basis(std::vector<RVec> rows) {
  std::vector<RVec> basis;
  if (rows.empty()) return basis;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = 1 / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (std::size_t c = 0; c < n; ++c) rows[i][c] -= f * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

RVec unit(std::size_t n, std::size_t i) {
  RVec v(n, Rational(0));
  v[i] = 1;
  return v;
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

GradedLieAlgebra::GradedLieAlgebra(std::vector<int> weights, std::vector<BracketEntry> brackets,
                                   std::vector<std::string> labels)
    : weights_(std::move(weights)), entries_(std::move(brackets)), labels_(std::move(labels)) {
  const int n = static_cast<int>(weights_.size());
  if (n < 1) throw std::invalid_argument("algebra dimension must be positive");
  if (labels_.empty())
    for (int i = 0; i < n; ++i) labels_.push_back("X" + std::to_string(i + 1));
  c_.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
  std::vector<char> given(c_.size(), 0);
  auto idx = [n](int j, int k, int l) { return (static_cast<std::size_t>(j) * n + k) * n + l; };
  for (const auto& e : entries_) {
    if (e.j < 0 || e.k < 0 || e.l < 0 || e.j >= n || e.k >= n || e.l >= n)
      throw std::invalid_argument("bracket index out of range");
    if (given[idx(e.j, e.k, e.l)]) throw std::invalid_argument("duplicate bracket entry");
    given[idx(e.j, e.k, e.l)] = 1;
    c_[idx(e.j, e.k, e.l)] = e.coefficient;
  }
  for (const auto& e : entries_)
    if (!given[idx(e.k, e.j, e.l)] && e.j != e.k) c_[idx(e.k, e.j, e.l)] = -e.coefficient;
}

const Rational& GradedLieAlgebra::structure_constant(int j, int k, int l) const {
  const std::size_t n = dim();
  return c_[(static_cast<std::size_t>(j) * n + k) * n + l];
}

std::vector<Rational> GradedLieAlgebra::bracket(std::span<const Rational> a, std::span<const Rational> b) const {
  const std::size_t n = dim();
  RVec r(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (b[k] == 0) continue;
      for (std::size_t l = 0; l < n; ++l) {
        const Rational& c = structure_constant(j, k, l);
        if (c != 0) r[l] += c * a[j] * b[k];
      }
    }
  }
  return r;
}

std::vector<Polynomial> GradedLieAlgebra::bracket(const std::vector<Polynomial>& a,
                                                  const std::vector<Polynomial>& b) const {
  const std::size_t n = dim();
  const std::size_t m = a.empty() ? 0 : a[0].num_vars();
  std::vector<Polynomial> r(n, Polynomial(m));
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (b[k].is_zero()) continue;
      Polynomial ab;
      bool have = false;
      for (std::size_t l = 0; l < n; ++l) {
        const Rational& c = structure_constant(j, k, l);
        if (c == 0) continue;
        if (!have) {
          ab = a[j] * b[k];
          have = true;
        }
        r[l] += ab * c;
      }
    }
  }
  return r;
}

int GradedLieAlgebra::homogeneous_dimension() const {
  int q = 0;
  for (int w : weights_) q += w;
  return q;
}

int homogeneous_dimension(const GradedLieAlgebra& alg) { return alg.homogeneous_dimension(); }

int GradedLieAlgebra::step() const {
  const std::size_t n = dim();
  std::vector<RVec> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(unit(n, i));
  int s = 0;
  while (!current.empty() && s <= static_cast<int>(n) + 1) {
    ++s;
    std::vector<RVec> next;
    for (std::size_t a = 0; a < n; ++a) {
      RVec ea = unit(n, a);
      for (const auto& v : current) {
        RVec b = bracket(ea, v);
        if (std::any_of(b.begin(), b.end(), [](const Rational& q) { return q != 0; })) next.push_back(b);
      }
    }
    current = row_basis(std::move(next));
  }
  return s;
}

bool GradedLieAlgebra::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool GradedLieAlgebra::is_stratified() const {
  const std::size_t n = dim();
  const int top = *std::max_element(weights_.begin(), weights_.end());
  std::vector<RVec> first;
  for (std::size_t i = 0; i < n; ++i)
    if (weights_[i] == 1) first.push_back(unit(n, i));
  if (first.empty()) return false;
  std::vector<RVec> layer = first;
  for (int w = 1; w <= top; ++w) {
    const auto expected = std::count(weights_.begin(), weights_.end(), w);
    if (static_cast<long>(layer.size()) != expected) return false;
    std::vector<RVec> next;
    for (const auto& a : first)
      for (const auto& b : layer) next.push_back(bracket(a, b));
    layer = row_basis(std::move(next));
  }
  return layer.empty();
}

int GradedLieAlgebra::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

ValidationReport validate_algebra(const GradedLieAlgebra& alg) {
  ValidationReport rep;
  const int n = static_cast<int>(alg.dim());
  const auto& w = alg.weights();
  for (int i = 0; i < n; ++i) {
    if (w[i] < 1) rep.violations.push_back({"weights", i, -1, -1, "weight must be a positive integer"});
    if (i > 0 && w[i] < w[i - 1])
      rep.violations.push_back({"weights", i - 1, i, -1, "weights must be sorted ascending"});
  }
  if (static_cast<int>(alg.labels().size()) != n)
    rep.violations.push_back({"labels", -1, -1, -1, "label count differs from dimension"});
  else {
    std::set<std::string> seen(alg.labels().begin(), alg.labels().end());
    if (static_cast<int>(seen.size()) != n) rep.violations.push_back({"labels", -1, -1, -1, "duplicate labels"});
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const Rational& c = alg.structure_constant(j, k, l);
        if (j == k && c != 0) rep.violations.push_back({"diagonal", j, k, l, "[X_j, X_j] must vanish"});
        if (j < k && c != -alg.structure_constant(k, j, l)) {
          std::ostringstream os;
          os << "c_{jk}^l = " << c << " but c_{kj}^l = " << alg.structure_constant(k, j, l);
          rep.violations.push_back({"antisymmetry", j, k, l, os.str()});
        }
        if (j < k && c != 0 && w[l] != w[j] + w[k]) {
          std::ostringstream os;
          os << "weight " << w[l] << " != " << w[j] << " + " << w[k];
          rep.violations.push_back({"grading", j, k, l, os.str()});
        }
      }
  // Jacobi on basis triples.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        RVec ea = unit(n, a), eb = unit(n, b), ec = unit(n, c);
        RVec t1 = alg.bracket(alg.bracket(ea, eb), ec);
        RVec t2 = alg.bracket(alg.bracket(eb, ec), ea);
        RVec t3 = alg.bracket(alg.bracket(ec, ea), eb);
        for (int l = 0; l < n; ++l) {
          Rational s = t1[l] + t2[l] + t3[l];
          if (s != 0) {
            std::ostringstream os;
            os << "component " << l + 1 << " of the cyclic sum is " << s;
            rep.violations.push_back({"jacobi", a, b, c, os.str()});
            break;
          }
        }
      }
  return rep;
}

const std::vector<BchWord>& bch_terms(int degree) {
  static std::mutex mu;
  static std::map<int, std::vector<BchWord>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  std::map<std::vector<bool>, Rational> acc;
  // Sequences (r_1,s_1,...,r_k,s_k), r_i+s_i >= 1, sum <= degree.
  std::vector<std::pair<int, int>> seq;
  auto emit = [&]() {
    const int k = static_cast<int>(seq.size());
    int m = 0;
    Rational denom = 1;
    std::vector<bool> word;
    for (auto [r, s] : seq) {
      m += r + s;
      denom *= factorial(r) * factorial(s);
      word.insert(word.end(), r, false);
      word.insert(word.end(), s, true);
    }
    if (word.size() >= 2 && word[word.size() - 1] == word[word.size() - 2]) return;
    Rational coef = Rational((k % 2 == 1) ? 1 : -1) / (Rational(k) * Rational(m) * denom);
    acc[word] += coef;
  };
  auto rec = [&](auto&& self, int remaining) -> void {
    for (int r = 0; r <= remaining; ++r)
      for (int s = 0; r + s <= remaining; ++s) {
        if (r + s == 0) continue;
        seq.emplace_back(r, s);
        emit();
        self(self, remaining - r - s);
        seq.pop_back();
      }
  };
  rec(rec, degree);
  std::vector<BchWord> out;
  for (auto& [word, c] : acc)
    if (c != 0) out.push_back({word, c});
  std::stable_sort(out.begin(), out.end(),
                   [](const BchWord& a, const BchWord& b) { return a.letters.size() < b.letters.size(); });
  return cache.emplace(degree, std::move(out)).first->second;
}

GroupLaw::GroupLaw(std::shared_ptr<const GradedLieAlgebra> alg, std::vector<Polynomial> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {
  if (coords_.size() != alg_->dim()) throw std::invalid_argument("group law arity mismatch");
  for (const auto& p : coords_) compiled_.emplace_back(p);
}

Point GroupLaw::multiply(std::span<const double> x, std::span<const double> y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("point dimension mismatch");
  std::vector<double> xy(2 * n);
  std::copy(x.begin(), x.end(), xy.begin());
  std::copy(y.begin(), y.end(), xy.begin() + n);
  Point r(n);
  for (std::size_t l = 0; l < n; ++l) r[l] = compiled_[l](xy.data());
  return r;
}

RationalPoint GroupLaw::multiply(std::span<const Rational> x, std::span<const Rational> y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("point dimension mismatch");
  RationalPoint xy(x.begin(), x.end());
  xy.insert(xy.end(), y.begin(), y.end());
  RationalPoint r(n);
  for (std::size_t l = 0; l < n; ++l) r[l] = coords_[l].evaluate(xy);
  return r;
}

Point GroupLaw::invert(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  Point r(x.begin(), x.end());
  for (auto& v : r) v = -v;
  return r;
}

RationalPoint GroupLaw::invert(std::span<const Rational> x) const {
  if (x.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  RationalPoint r(x.begin(), x.end());
  for (auto& v : r) v = -v;
  return r;
}

LawCheck check_group_law(const GroupLaw& law) {
  LawCheck out;
  const std::size_t n = law.dim();
  const auto& m = law.coordinates();
  const auto& w = law.algebra().weights();

  std::vector<Polynomial> xs, zeros(n, Polynomial(n)), neg;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(Polynomial::variable(n, i));
    neg.push_back(-Polynomial::variable(n, i));
  }
  auto concat = [](std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  out.identity = true;
  out.inverse = true;
  for (std::size_t l = 0; l < n; ++l) {
    out.identity = out.identity && m[l].substitute(concat(xs, zeros)) == xs[l] &&
                   m[l].substitute(concat(zeros, xs)) == xs[l];
    out.inverse = out.inverse && m[l].substitute(concat(xs, neg)).is_zero() &&
                  m[l].substitute(concat(neg, xs)).is_zero();
  }

  std::vector<int> w2(w.begin(), w.end());
  w2.insert(w2.end(), w.begin(), w.end());
  out.homogeneity = true;
  for (std::size_t l = 0; l < n; ++l) out.homogeneity = out.homogeneity && m[l].is_weighted_homogeneous(w2, w[l]);

  // Associativity in 3n variables.
  const std::size_t n3 = 3 * n;
  std::vector<Polynomial> X, Y, Z;
  for (std::size_t i = 0; i < n; ++i) {
    X.push_back(Polynomial::variable(n3, i));
    Y.push_back(Polynomial::variable(n3, n + i));
    Z.push_back(Polynomial::variable(n3, 2 * n + i));
  }
  std::vector<Polynomial> xy, yz;
  for (std::size_t l = 0; l < n; ++l) {
    xy.push_back(m[l].substitute(concat(X, Y)));
    yz.push_back(m[l].substitute(concat(Y, Z)));
  }
  out.associativity = true;
  for (std::size_t l = 0; l < n && out.associativity; ++l)
    out.associativity = m[l].substitute(concat(xy, Z)) == m[l].substitute(concat(X, yz));
  return out;
}

GroupLaw bch_group_law(const GradedLieAlgebra& alg) {
  return bch_group_law(std::make_shared<const GradedLieAlgebra>(alg));
}

GroupLaw bch_group_law(std::shared_ptr<const GradedLieAlgebra> alg) {
  auto rep = validate_algebra(*alg);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw std::invalid_argument("invalid graded Lie algebra: " + v.kind + " (" + v.detail + ")");
  }
  const int step = alg->step();
  if (step > kMaxBchStep)
    throw UnsupportedStep("nilpotency step " + std::to_string(step) + " exceeds the BCH table depth " +
                          std::to_string(kMaxBchStep));
  const std::size_t n = alg->dim();
  const std::size_t m = 2 * n;
  std::vector<Polynomial> X, Y;
  for (std::size_t i = 0; i < n; ++i) {
    X.push_back(Polynomial::variable(m, i));
    Y.push_back(Polynomial::variable(m, n + i));
  }
  std::map<std::vector<bool>, std::vector<Polynomial>> memo;
  auto nested = [&](auto&& self, const std::vector<bool>& word, std::size_t from) -> std::vector<Polynomial> {
    std::vector<bool> suffix(word.begin() + from, word.end());
    auto it = memo.find(suffix);
    if (it != memo.end()) return it->second;
    std::vector<Polynomial> v;
    const auto& head = word[from] ? Y : X;
    if (from + 1 == word.size()) v = head;
    else v = alg->bracket(head, self(self, word, from + 1));
    memo.emplace(std::move(suffix), v);
    return v;
  };
  std::vector<Polynomial> coords(n, Polynomial(m));
  for (const auto& term : bch_terms(step)) {
    auto v = nested(nested, term.letters, 0);
    for (std::size_t l = 0; l < n; ++l)
      if (!v[l].is_zero()) coords[l] += v[l] * term.coefficient;
  }
  GroupLaw law(alg, std::move(coords));
  if (!check_group_law(law).ok()) throw std::logic_error("BCH group law failed its symbolic invariants");
  return law;
}

}  // namespace gradecalc
