#include "gradecalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gradecalc {

std::vector<LeftInvariantField> left_invariant_fields(const GroupLaw& law) {
  const std::size_t n = law.dim();
  // a_{jk}(x) = d m_k(x, y) / d y_j at y = 0.
  std::vector<Polynomial> subst;
  for (std::size_t i = 0; i < n; ++i) subst.push_back(Polynomial::variable(n, i));
  for (std::size_t i = 0; i < n; ++i) subst.push_back(Polynomial(n));
  std::vector<LeftInvariantField> fields;
  for (std::size_t j = 0; j < n; ++j) {
    LeftInvariantField f{static_cast<int>(j), {}};
    for (std::size_t k = 0; k < n; ++k)
      f.coefficients.push_back(law.coordinates()[k].derivative(n + j).substitute(subst));
    fields.push_back(std::move(f));
  }
  return fields;
}

PolyDiffOp PolyDiffOp::identity(std::size_t nvars) {
  PolyDiffOp op(nvars);
  op.add_term(MultiIndex(nvars, 0), Polynomial::constant(nvars, 1));
  return op;
}

PolyDiffOp PolyDiffOp::from_field(const LeftInvariantField& f) {
  const std::size_t n = f.coefficients.size();
  PolyDiffOp op(n);
  for (std::size_t k = 0; k < n; ++k) {
    MultiIndex b(n, 0);
    b[k] = 1;
    op.add_term(b, f.coefficients[k]);
  }
  return op;
}

void PolyDiffOp::add_term(const MultiIndex& beta, const Polynomial& c) {
  if (beta.size() != nvars_ || c.num_vars() != nvars_) throw std::invalid_argument("operator arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    terms_.emplace(beta, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o) {
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, p] : terms_) p *= c;
  return *this;
}

PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) {
  for (const auto& [beta, c] : b.terms_) a.add_term(beta, -c);
  return a;
}

namespace {

Rational binomial(unsigned n, unsigned k) {
  Rational r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Polynomial derivative_multi(Polynomial p, const PolyDiffOp::MultiIndex& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (unsigned k = 0; k < d[i]; ++k) {
      if (p.is_zero()) return p;
      p = p.derivative(i);
    }
  return p;
}

}  // namespace

PolyDiffOp operator*(const PolyDiffOp& a, const PolyDiffOp& b) {
  const std::size_t n = a.nvars_;
  if (b.nvars_ != n) throw std::invalid_argument("operator arity mismatch");
  PolyDiffOp r(n);
  for (const auto& [beta, c] : a.terms_) {
    for (const auto& [gamma, d] : b.terms_) {
      // Enumerate delta <= beta.
      PolyDiffOp::MultiIndex delta(n, 0);
      while (true) {
        Rational coef = 1;
        for (std::size_t i = 0; i < n; ++i) coef *= binomial(beta[i], delta[i]);
        Polynomial dd = derivative_multi(d, delta);
        if (!dd.is_zero()) {
          PolyDiffOp::MultiIndex out(n);
          for (std::size_t i = 0; i < n; ++i) out[i] = beta[i] - delta[i] + gamma[i];
          r.add_term(out, c * dd * coef);
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
          if (delta[i] < beta[i]) {
            ++delta[i];
            break;
          }
          delta[i] = 0;
        }
        if (i == n) break;
      }
    }
  }
  return r;
}

Polynomial PolyDiffOp::apply(const Polynomial& f) const {
  Polynomial r(nvars_);
  for (const auto& [beta, c] : terms_) r += c * derivative_multi(f, beta);
  return r;
}

unsigned PolyDiffOp::max_order(std::size_t axis) const {
  unsigned m = 0;
  for (const auto& [beta, c] : terms_) m = std::max(m, beta[axis]);
  return m;
}

unsigned PolyDiffOp::order() const {
  unsigned m = 0;
  for (const auto& [beta, c] : terms_) m = std::max(m, std::accumulate(beta.begin(), beta.end(), 0u));
  return m;
}

bool PolyDiffOp::coefficient_depends_on(std::size_t axis) const {
  for (const auto& [beta, c] : terms_)
    if (c.depends_on(axis)) return true;
  return false;
}

std::string PolyDiffOp::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [beta, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string(names) << ")";
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (!beta[i]) continue;
      os << "*d" << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (beta[i] > 1) os << "^" << beta[i];
    }
  }
  return os.str();
}

DiffOpExpr DiffOpExpr::field(std::size_t n, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= n) throw std::out_of_range("field index");
  DiffOpExpr e(n);
  e.add_term(1, {j});
  return e;
}

DiffOpExpr DiffOpExpr::scalar(std::size_t n, const Rational& c) {
  DiffOpExpr e(n);
  e.add_term(c, {});
  return e;
}

std::vector<DiffOpExpr::Term> DiffOpExpr::terms() const {
  std::vector<Term> out;
  for (const auto& [w, c] : terms_) out.push_back({c, w});
  return out;
}

void DiffOpExpr::add_term(const Rational& c, const std::vector<int>& word) {
  for (int j : word)
    if (j < 0 || static_cast<std::size_t>(j) >= n_) throw std::out_of_range("field index in word");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(word, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffOpExpr& DiffOpExpr::operator+=(const DiffOpExpr& o) {
  if (o.n_ != n_) throw std::invalid_argument("expression arity mismatch");
  for (const auto& [w, c] : o.terms_) add_term(c, w);
  return *this;
}

DiffOpExpr& DiffOpExpr::operator-=(const DiffOpExpr& o) {
  if (o.n_ != n_) throw std::invalid_argument("expression arity mismatch");
  for (const auto& [w, c] : o.terms_) add_term(-c, w);
  return *this;
}

DiffOpExpr& DiffOpExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

DiffOpExpr operator*(const DiffOpExpr& a, const DiffOpExpr& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("expression arity mismatch");
  DiffOpExpr r(a.n_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      std::vector<int> w(wa);
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(ca * cb, w);
    }
  return r;
}

std::string DiffOpExpr::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  // Higher-degree words first reads more naturally.
  std::vector<std::pair<std::vector<int>, Rational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c0] : items) {
    Rational c = c0;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    first = false;
    bool printed = false;
    if (c != 1 || w.empty()) {
      os << c;
      printed = true;
    }
    for (std::size_t i = 0; i < w.size();) {
      std::size_t k = i;
      while (k < w.size() && w[k] == w[i]) ++k;
      if (printed) os << " ";
      os << (static_cast<std::size_t>(w[i]) < labels.size() ? labels[w[i]] : "X" + std::to_string(w[i] + 1));
      if (k - i > 1) os << "^" << (k - i);
      printed = true;
      i = k;
    }
  }
  return os.str();
}

DiffOpExpr power(const DiffOpExpr& e, int k) {
  if (k < 0) throw std::invalid_argument("power exponent must be nonnegative");
  DiffOpExpr r = DiffOpExpr::scalar(e.num_fields(), 1);
  for (int i = 0; i < k; ++i) r = r * e;
  return r;
}

DiffOpExpr transpose(const DiffOpExpr& e) {
  DiffOpExpr r(e.num_fields());
  for (const auto& t : e.terms()) {
    std::vector<int> w(t.word.rbegin(), t.word.rend());
    r.add_term(w.size() % 2 ? -t.coefficient : t.coefficient, w);
  }
  return r;
}

DiffOpExpr commutator(const DiffOpExpr& a, const DiffOpExpr& b) { return a * b - b * a; }

long DegreeInfo::degree() const {
  if (!homogeneous()) throw std::logic_error("expression is not homogeneous");
  return *degrees.begin();
}

DegreeInfo homogeneous_degree(const DiffOpExpr& e, std::span<const int> weights) {
  DegreeInfo info;
  for (const auto& t : e.terms()) {
    long d = 0;
    for (int j : t.word) d += weights[j];
    info.degrees.insert(d);
  }
  return info;
}

PolyDiffOp normal_form(const DiffOpExpr& e, const std::vector<LeftInvariantField>& fields) {
  const std::size_t n = fields.size();
  if (e.num_fields() != n) throw std::invalid_argument("expression arity differs from field count");
  std::vector<PolyDiffOp> base;
  for (const auto& f : fields) base.push_back(PolyDiffOp::from_field(f));
  std::map<std::vector<int>, PolyDiffOp> cache;
  // Build words right to left so shared suffixes are reused.
  auto word_op = [&](const std::vector<int>& w) {
    PolyDiffOp acc = PolyDiffOp::identity(n);
    std::vector<int> suffix;
    for (std::size_t i = w.size(); i-- > 0;) {
      suffix.insert(suffix.begin(), w[i]);
      auto it = cache.find(suffix);
      if (it != cache.end()) {
        acc = it->second;
        continue;
      }
      acc = base[w[i]] * acc;
      cache.emplace(suffix, acc);
    }
    return acc;
  };
  PolyDiffOp r(n);
  for (const auto& t : e.terms()) {
    PolyDiffOp op = word_op(t.word);
    op *= t.coefficient;
    r += op;
  }
  return r;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::SublaplacianNegative: return "sublaplacian-negative";
    case Provenance::Power: return "power";
    case Provenance::Example2Nu0: return "example-2nu0";
    case Provenance::Custom: return "custom";
  }
  return "custom";
}

RocklandSpec build_rockland_example(const GradedLieAlgebra& alg, int nu0, const std::vector<double>& c) {
  const auto& w = alg.weights();
  const std::size_t n = alg.dim();
  if (nu0 < 1) throw std::invalid_argument("nu0 must be positive");
  for (int wj : w)
    if (nu0 % wj != 0)
      throw std::invalid_argument("nu0 = " + std::to_string(nu0) + " is not a common multiple of the weights");
  if (!c.empty() && c.size() != n) throw std::invalid_argument("need one coefficient per basis vector");
  DiffOpExpr e(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = c.empty() ? 1.0 : c[j];
    if (!(cj > 0)) throw std::invalid_argument("coefficients must be positive");
    const int q = nu0 / w[j];
    Rational coef(cj);  // exact binary value
    if (q % 2) coef = -coef;
    e.add_term(coef, std::vector<int>(2 * q, static_cast<int>(j)));
  }
  return {e, 2 * nu0, Provenance::Example2Nu0};
}

RocklandSpec sublaplacian(const GradedLieAlgebra& alg) {
  if (!alg.is_stratified())
    throw StratificationError("algebra is not stratified: the weight-1 layer does not generate it");
  DiffOpExpr e(alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j)
    if (alg.weights()[j] == 1) e.add_term(-1, {static_cast<int>(j), static_cast<int>(j)});
  return {e, 2, Provenance::SublaplacianNegative};
}

RocklandSpec power(const RocklandSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("power must be a positive integer");
  return {power(spec.expr, k), spec.degree * k, Provenance::Power};
}

RocklandSpec custom_operator(const GradedLieAlgebra& alg, const DiffOpExpr& e) {
  auto info = homogeneous_degree(e, alg.weights());
  if (e.is_zero()) throw std::invalid_argument("operator is zero");
  if (!info.homogeneous()) {
    std::ostringstream os;
    os << "operator is not homogeneous; word degrees {";
    bool first = true;
    for (long d : info.degrees) {
      os << (first ? "" : ",") << d;
      first = false;
    }
    os << "}";
    throw std::invalid_argument(os.str());
  }
  return {e, static_cast<int>(info.degree()), Provenance::Custom};
}

RocklandSpec custom_operator(const GradedLieAlgebra& alg, const std::string& text) {
  return custom_operator(alg, parse_expr(text, alg.labels()));
}

}  // namespace gradecalc
