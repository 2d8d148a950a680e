#include "gradecalc/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gradecalc {

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num) / Rational(den);
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("polynomial variable index");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(e, Rational(1));
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (unsigned k : e)
      if (k) return false;
  return true;
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial r(a.nvars_);
  Polynomial::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("polynomial variable index");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& values) const {
  if (values.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
  std::size_t m = values.empty() ? 0 : values[0].num_vars();
  for (const auto& v : values)
    if (v.num_vars() != m) throw std::invalid_argument("substitution values disagree in arity");
  Polynomial result(m);
  // Cache powers per variable.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Polynomial::constant(m, 1));
    while (pw.size() <= k) pw.push_back(pw.back() * values[i]);
    return pw[k];
  };
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) term = term * power(i, e[i]);
    result += term;
  }
  return result;
}

Polynomial Polynomial::remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
  if (map.size() != nvars_) throw std::invalid_argument("remap arity mismatch");
  Polynomial r(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents d(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (map[i] >= new_nvars) throw std::out_of_range("remap target");
      d[map[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= std::pow(x[i], static_cast<int>(e[i]));
    s += t;
  }
  return s;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& [e, c] : terms_)
    if (e[var]) return true;
  return false;
}

std::vector<long> Polynomial::weighted_degrees(std::span<const int> weights) const {
  if (weights.size() != nvars_) throw std::invalid_argument("weight arity mismatch");
  std::vector<long> out;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += static_cast<long>(e[i]) * weights[i];
    out.push_back(d);
  }
  return out;
}

bool Polynomial::is_weighted_homogeneous(std::span<const int> weights, long degree) const {
  for (long d : weighted_degrees(weights))
    if (d != degree) return false;
  return true;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    if (a < 0) a = -a;
    bool is_unit = true;
    for (unsigned k : e) is_unit = is_unit && k == 0;
    bool printed = false;
    if (a != 1 || is_unit) {
      os << a;
      printed = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (printed) os << "*";
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
    first = false;
  }
  return os.str();
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.num_vars()) {
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(to_double(c));
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::operator()(const double* x) const {
  double s = 0;
  const unsigned* e = exps_.data();
  for (double c : coef_) {
    double t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
    e += nvars_;
  }
  return s;
}

CompiledPolynomial CompiledPolynomial::partial(std::span<const double> values, std::size_t first) const {
  const std::size_t k = values.size();
  if (first + k > nvars_) throw std::out_of_range("partial evaluation range");
  CompiledPolynomial r;
  r.nvars_ = nvars_ - k;
  std::map<std::vector<unsigned>, double> acc;
  const unsigned* e = exps_.data();
  for (double c : coef_) {
    double t = c;
    std::vector<unsigned> rest;
    rest.reserve(r.nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (i >= first && i < first + k) {
        for (unsigned j = 0; j < e[i]; ++j) t *= values[i - first];
      } else {
        rest.push_back(e[i]);
      }
    }
    acc[rest] += t;
    e += nvars_;
  }
  for (const auto& [ex, c] : acc) {
    if (c == 0.0) continue;
    r.coef_.push_back(c);
    r.exps_.insert(r.exps_.end(), ex.begin(), ex.end());
  }
  return r;
}

}  // namespace gradecalc
