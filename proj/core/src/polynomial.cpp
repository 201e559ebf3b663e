#include "hvf/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hvf/error.hpp"

namespace hvf {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "polynomial parse error at column " << pos_ + 1 << ": " << what << " in \"" << s_
       << "\"";
    throw PreconditionError(os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+'))
        p = p + term();
      else if (accept('-'))
        p = p - term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        const Polynomial d = unary();
        if (!d.is_constant()) fail("division by a non-constant");
        const double c = d.is_zero() ? 0.0 : d.terms().begin()->second;
        if (c == 0.0) fail("division by zero");
        p = p * (1.0 / c);
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return unary() * -1.0;
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      return base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return Polynomial::constant(vars_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) return Polynomial::variable(vars_, static_cast<int>(k));
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::parse(const std::string& text, std::vector<std::string> variables) {
  return Parser(text, variables).parse();
}

Polynomial Polynomial::constant(std::vector<std::string> variables, double c) {
  Polynomial p(std::move(variables));
  p.add_term(Exponents(p.variables_.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, int index) {
  Polynomial p(std::move(variables));
  Exponents e(p.variables_.size(), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

bool Polynomial::is_constant() const { return degree() <= 0; }

int Polynomial::degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

double Polynomial::operator()(const double* x) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int j = 0; j < e[k]; ++j) t *= x[k];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(variables_);
  const auto k = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents f = e;
    --f[k];
    out.add_term(f, c * e[k]);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  if (out.variables_.empty()) out.variables_ = o.variables_;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out(variables_.empty() ? o.variables_ : variables_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e = e1;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
      out.add_term(e, c1 * c2);
    }
  return out;
}

Polynomial Polynomial::operator*(double c) const {
  Polynomial out(variables_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial out = constant(variables_, 1.0);
  for (int j = 0; j < k; ++j) out = out * *this;
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) {
        os << '*' << variables_[k];
        if (e[k] > 1) os << '^' << e[k];
      }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

PolynomialFunction::PolynomialFunction(Polynomial p, std::vector<Variable> vars)
    : p_(std::move(p)), vars_(std::move(vars)) {
  if (p_.num_vars() != static_cast<int>(vars_.size()))
    throw PreconditionError("PolynomialFunction: variable count mismatch");
  const int m = p_.num_vars();
  for (int j = 0; j < m; ++j) {
    d1_.push_back(p_.derivative(j));
    d2_.emplace_back();
    for (int l = 0; l < m; ++l) d2_.back().push_back(d1_.back().derivative(l));
  }
}

std::shared_ptr<PolynomialFunction> PolynomialFunction::ambient(const std::string& text,
                                                                int ambient_dim) {
  std::vector<std::string> names;
  std::vector<Variable> vars;
  for (int k = 0; k < ambient_dim; ++k) {
    names.push_back("x" + std::to_string(k + 1));
    vars.push_back({Feature::Identity, k, 0.0});
  }
  return std::make_shared<PolynomialFunction>(Polynomial::parse(text, names), vars);
}

std::shared_ptr<PolynomialFunction> PolynomialFunction::torus_trig(
    const std::string& text, const std::vector<double>& periods) {
  std::vector<std::string> names;
  std::vector<Variable> vars;
  const int n = static_cast<int>(periods.size());
  for (int k = 0; k < n; ++k) {
    names.push_back("c" + std::to_string(k + 1));
    vars.push_back({Feature::Cos, k, 2.0 * std::numbers::pi / periods[static_cast<std::size_t>(k)]});
  }
  for (int k = 0; k < n; ++k) {
    names.push_back("s" + std::to_string(k + 1));
    vars.push_back({Feature::Sin, k, 2.0 * std::numbers::pi / periods[static_cast<std::size_t>(k)]});
  }
  return std::make_shared<PolynomialFunction>(Polynomial::parse(text, names), vars);
}

// y_j, dy_j/dx_{coord_j}, d2y_j/dx_{coord_j}^2
void PolynomialFunction::features(const Vec& q, std::vector<double>& y, std::vector<double>& dy,
                                  std::vector<double>& ddy) const {
  const std::size_t m = vars_.size();
  y.resize(m);
  dy.resize(m);
  ddy.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& v = vars_[j];
    const double x = q(v.coord);
    switch (v.feature) {
      case Feature::Identity:
        y[j] = x; dy[j] = 1.0; ddy[j] = 0.0;
        break;
      case Feature::Cos:
        y[j] = std::cos(v.omega * x);
        dy[j] = -v.omega * std::sin(v.omega * x);
        ddy[j] = -v.omega * v.omega * y[j];
        break;
      case Feature::Sin:
        y[j] = std::sin(v.omega * x);
        dy[j] = v.omega * std::cos(v.omega * x);
        ddy[j] = -v.omega * v.omega * y[j];
        break;
    }
  }
}

double PolynomialFunction::value(const Vec& q) const {
  std::vector<double> y, dy, ddy;
  features(q, y, dy, ddy);
  return p_(y);
}

Vec PolynomialFunction::gradient(const Vec& q) const {
  std::vector<double> y, dy, ddy;
  features(q, y, dy, ddy);
  Vec g = Vec::Zero(q.size());
  for (std::size_t j = 0; j < vars_.size(); ++j) g(vars_[j].coord) += d1_[j](y) * dy[j];
  return g;
}

double PolynomialFunction::hessian(const Vec& q, const Vec& d1, const Vec& d2) const {
  std::vector<double> y, dy, ddy;
  features(q, y, dy, ddy);
  double h = 0.0;
  const std::size_t m = vars_.size();
  for (std::size_t j = 0; j < m; ++j) {
    const double a = dy[j] * d1(vars_[j].coord);
    if (a != 0.0)
      for (std::size_t l = 0; l < m; ++l) {
        const double b = dy[l] * d2(vars_[l].coord);
        if (b != 0.0) h += d2_[j][l](y) * a * b;
      }
    h += d1_[j](y) * ddy[j] * d1(vars_[j].coord) * d2(vars_[j].coord);
  }
  return h;
}

}  // namespace hvf
