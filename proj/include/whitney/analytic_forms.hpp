#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney {

/// Multivariate polynomial in up to three variables, used for test forms and
/// exact differentiation.
class Polynomial {
 public:
  struct Term {
    double coeff;
    std::array<int, 3> exponents;
  };

  Polynomial() = default;
  explicit Polynomial(double c) {
    if (c != 0.0) terms_.push_back({c, {0, 0, 0}});
  }
  static Polynomial variable(int i) {
    Polynomial p;
    std::array<int, 3> e{0, 0, 0};
    e[i] = 1;
    p.terms_.push_back({1.0, e});
    return p;
  }

  double operator()(const Point& x) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial derivative(int i) const;
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  void combine();
  std::vector<Term> terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

/// Smooth k-form given by one coefficient callable per increasing coordinate
/// index tuple, with a polynomial degree bound that downstream quadrature
/// uses to stay exact. May carry its exterior codifferential.
class AnalyticForm {
 public:
  using Coefficient = std::function<double(const Point&)>;

  AnalyticForm() = default;
  AnalyticForm(int dim, int degree, int poly_degree, std::vector<Coefficient> components);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int poly_degree() const { return poly_degree_; }
  int num_components() const { return static_cast<int>(components_.size()); }

  double component(int j, const Point& x) const { return components_[j](x); }
  void evaluate(const Point& x, double* out) const {
    for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j](x);
  }

  bool has_codifferential() const { return codifferential_ != nullptr; }
  const AnalyticForm& codifferential() const { return *codifferential_; }
  void set_codifferential(AnalyticForm d_star);

 private:
  int dim_ = 0;
  int degree_ = 0;
  int poly_degree_ = 0;
  std::vector<Coefficient> components_;
  std::shared_ptr<const AnalyticForm> codifferential_;
};

/// Polynomial differential form; supports exact exterior derivative. The
/// component order matches the lexicographic increasing index tuples.
struct PolyForm {
  int dim = 0;
  int degree = 0;
  std::vector<Polynomial> components;

  PolyForm() = default;
  PolyForm(int n, int k);

  PolyForm exterior_derivative() const;
  int poly_degree() const;
  AnalyticForm to_analytic() const;
};

/// Test forms with known codifferential:
///   square1form: (1-x^2)dx on (-1,1)^2, d* = 2x
///   cube1form:   (1-x^2)dx on (-1,1)^3, d* = 2x
///   cube2form:   (1-x^2)(1-y^2)dx^dy on (-1,1)^3,
///                d* = -2(1-x^2)y dx + 2x(1-y^2) dy
AnalyticForm builtin(const std::string& name);

/// Top-degree 2D test form (1-x^2)(1-y^2)dx^dy with its codifferential.
AnalyticForm square_top_form();

/// The potential p(x,y) = x - x^3/3 as a 0-form (u = dp for the 1-form cases).
AnalyticForm potential_p(int dim);

}  // namespace whitney
