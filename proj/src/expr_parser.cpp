#include "gradecalc/calculus.hpp"

#include <algorithm>
#include <cctype>

namespace gradecalc {

ExprParseError::ExprParseError(const std::string& msg, std::size_t position, const std::string& input)
    : std::runtime_error(msg + " at position " + std::to_string(position + 1) + "\n  " + input + "\n  " +
                         std::string(position, ' ') + "^"),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& labels) : s_(text), labels_(labels) {
    // Longest labels first so "X12" wins over "X1".
    for (std::size_t i = 0; i < labels_.size(); ++i) order_.push_back(i);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return labels_[a].size() > labels_[b].size(); });
  }

  DiffOpExpr parse() {
    DiffOpExpr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ExprParseError(msg, pos_, s_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  DiffOpExpr expression() {
    skip();
    int sign = 1;
    if (peek('+')) ++pos_;
    else if (peek('-')) {
      sign = -1;
      ++pos_;
    }
    DiffOpExpr e = term() * Rational(sign);
    while (true) {
      if (peek('+')) {
        ++pos_;
        e += term();
      } else if (peek('-')) {
        ++pos_;
        e -= term();
      } else {
        break;
      }
    }
    return e;
  }

  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    if (s_[pos_] == '(') return true;
    return match_label() >= 0;
  }

  int match_label() {
    for (std::size_t i : order_) {
      const auto& l = labels_[i];
      if (!l.empty() && s_.compare(pos_, l.size(), l) == 0) return static_cast<int>(i);
    }
    return -1;
  }

  DiffOpExpr term() {
    skip();
    const std::size_t n = labels_.size();
    Rational coef = 1;
    bool have_coef = false;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      coef = number();
      have_coef = true;
      if (peek('*')) ++pos_;
    }
    DiffOpExpr e = DiffOpExpr::scalar(n, coef);
    bool any_factor = false;
    while (at_factor_start()) {
      e = e * factor();
      any_factor = true;
      if (peek('*')) {
        ++pos_;
        if (!at_factor_start()) fail("expected a field label or '(' after '*'");
      }
    }
    if (!any_factor && !have_coef) fail("expected a coefficient, field label or '('");
    return e;
  }

  DiffOpExpr factor() {
    skip();
    DiffOpExpr base;
    if (s_[pos_] == '(') {
      ++pos_;
      base = expression();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
    } else {
      int j = match_label();
      if (j < 0) fail("unknown field label");
      pos_ += labels_[j].size();
      base = DiffOpExpr::field(labels_.size(), j);
    }
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      int k = std::stoi(s_.substr(start, pos_ - start));
      return power(base, k);
    }
    return base;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Rational value = 0;
    if (pos_ > start) value = Rational(boost::multiprecision::cpp_int(s_.substr(start, pos_ - start)));
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (fs == pos_ && start + 1 == fs) fail("malformed decimal");
      Rational scale = 1;
      for (std::size_t i = fs; i < pos_; ++i) {
        scale /= 10;
        value += scale * (s_[i] - '0');
      }
      return value;
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) fail("expected a denominator");
      boost::multiprecision::cpp_int den(s_.substr(ds, pos_ - ds));
      if (den == 0) fail("zero denominator");
      value /= Rational(den);
    }
    return value;
  }

  const std::string& s_;
  const std::vector<std::string>& labels_;
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffOpExpr parse_expr(const std::string& text, const std::vector<std::string>& labels) {
  return Parser(text, labels).parse();
}

}  // namespace gradecalc
