#pragma once

#include <map>
#include <string>
#include <vector>

#include "hvf/field.hpp"

namespace hvf {

/// Sparse real polynomial in a fixed list of named variables.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);

  /// Parses +, -, *, ^ (non-negative integer powers), parentheses, decimal
  /// literals and division by a constant subexpression, so rational
  /// coefficients such as 1/2 or (3/4)*V1 are exact up to rounding.
  static Polynomial parse(const std::string& text, std::vector<std::string> variables);
  static Polynomial constant(std::vector<std::string> variables, double c);
  static Polynomial variable(std::vector<std::string> variables, int index);

  int num_vars() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Constant value if the polynomial has degree <= 0.
  bool is_constant() const;
  int degree() const;

  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }
  Polynomial derivative(int var) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double c) const;
  Polynomial pow(int k) const;

  std::string to_string() const;
  /// Adds c * x^e; exponents must have num_vars() entries.
  void add_term(const Exponents& e, double c);

 private:
  std::vector<std::string> variables_;
  std::map<Exponents, double> terms_;
};

/// A polynomial evaluated on features of the ambient point: each variable is
/// either an ambient coordinate x_k or cos/sin(2 pi x_k / L_k).
class PolynomialFunction final : public ScalarFunction {
 public:
  enum class Feature { Identity, Cos, Sin };
  struct Variable {
    Feature feature;
    int coord;
    double omega;  // 2 pi / L for trigonometric features
  };

  PolynomialFunction(Polynomial p, std::vector<Variable> vars);

  /// Variables x1..xm.
  static std::shared_ptr<PolynomialFunction> ambient(const std::string& text, int ambient_dim);
  /// Variables c1..cn, s1..sn (cos and sin of 2 pi x_k / L_k).
  static std::shared_ptr<PolynomialFunction> torus_trig(const std::string& text,
                                                        const std::vector<double>& periods);

  double value(const Vec& q) const override;
  Vec gradient(const Vec& q) const override;
  double hessian(const Vec& q, const Vec& d1, const Vec& d2) const override;

  const Polynomial& polynomial() const { return p_; }

 private:
  void features(const Vec& q, std::vector<double>& y, std::vector<double>& dy,
                std::vector<double>& ddy) const;

  Polynomial p_;
  std::vector<Variable> vars_;
  std::vector<Polynomial> d1_;
  std::vector<std::vector<Polynomial>> d2_;
};

}  // namespace hvf
