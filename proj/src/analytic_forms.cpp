#include "whitney/analytic_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitney {

double Polynomial::operator()(const Point& x) const {
  double v = 0.0;
  for (const Term& t : terms_) {
    double m = t.coeff;
    for (int i = 0; i < 3; ++i)
      for (int e = 0; e < t.exponents[i]; ++e) m *= x[i];
    v += m;
  }
  return v;
}

void Polynomial::combine() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (!out.empty() && out.back().exponents == t.exponents)
      out.back().coeff += t.coeff;
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.coeff == 0.0; }),
            out.end());
  terms_ = std::move(out);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.combine();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      for (int i = 0; i < 3; ++i) t.exponents[i] = a.exponents[i] + b.exponents[i];
      r.terms_.push_back(t);
    }
  }
  r.combine();
  return r;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coeff *= s;
  r.combine();
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial r;
  for (const Term& t : terms_) {
    if (t.exponents[i] == 0) continue;
    Term d = t;
    d.coeff *= t.exponents[i];
    --d.exponents[i];
    r.terms_.push_back(d);
  }
  r.combine();
  return r;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const Term& t : terms_)
    d = std::max(d, t.exponents[0] + t.exponents[1] + t.exponents[2]);
  return d;
}

AnalyticForm::AnalyticForm(int dim, int degree, int poly_degree,
                           std::vector<Coefficient> components)
    : dim_(dim), degree_(degree), poly_degree_(poly_degree), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != binomial(dim, degree))
    throw std::invalid_argument("AnalyticForm: wrong component count");
}

void AnalyticForm::set_codifferential(AnalyticForm d_star) {
  if (d_star.degree() != degree_ - 1 || d_star.dim() != dim_)
    throw std::invalid_argument("AnalyticForm: codifferential degree mismatch");
  codifferential_ = std::make_shared<const AnalyticForm>(std::move(d_star));
}

PolyForm::PolyForm(int n, int k) : dim(n), degree(k) {
  components.resize(binomial(n, k));
}

PolyForm PolyForm::exterior_derivative() const {
  PolyForm d(dim, degree + 1);
  auto source = combinations(dim, degree);
  auto target = combinations(dim, degree + 1);
  for (std::size_t t = 0; t < target.size(); ++t) {
    Polynomial sum;
    for (int pos = 0; pos <= degree; ++pos) {
      int axis = target[t][pos];
      Simplex rest{-1, -1, -1, -1};
      int w = 0;
      for (int j = 0; j <= degree; ++j)
        if (j != pos) rest[w++] = target[t][j];
      auto it = std::find(source.begin(), source.end(), rest);
      int src = static_cast<int>(it - source.begin());
      Polynomial term = components[src].derivative(axis);
      sum = (pos % 2 == 0) ? sum + term : sum - term;
    }
    d.components[t] = sum;
  }
  return d;
}

int PolyForm::poly_degree() const {
  int d = 0;
  for (const Polynomial& p : components) d = std::max(d, p.total_degree());
  return d;
}

AnalyticForm PolyForm::to_analytic() const {
  std::vector<AnalyticForm::Coefficient> comps;
  comps.reserve(components.size());
  for (const Polynomial& p : components)
    comps.push_back([p](const Point& x) { return p(x); });
  return AnalyticForm(dim, degree, poly_degree(), std::move(comps));
}

namespace {

const Polynomial kX = Polynomial::variable(0);
const Polynomial kY = Polynomial::variable(1);
const Polynomial kOne = Polynomial(1.0);

AnalyticForm one_form_1mx2_dx(int n) {
  PolyForm u(n, 1);
  u.components[0] = kOne - kX * kX;  // dx component; dy (and dz) vanish
  AnalyticForm form = u.to_analytic();
  PolyForm dstar(n, 0);
  dstar.components[0] = 2.0 * kX;
  form.set_codifferential(dstar.to_analytic());
  return form;
}

}  // namespace

AnalyticForm builtin(const std::string& name) {
  if (name == "square1form") return one_form_1mx2_dx(2);
  if (name == "cube1form") return one_form_1mx2_dx(3);
  if (name == "cube2form") {
    PolyForm u(3, 2);
    // components ordered (dx^dy, dx^dz, dy^dz)
    u.components[0] = (kOne - kX * kX) * (kOne - kY * kY);
    AnalyticForm form = u.to_analytic();
    PolyForm dstar(3, 1);
    dstar.components[0] = -2.0 * ((kOne - kX * kX) * kY);
    dstar.components[1] = 2.0 * (kX * (kOne - kY * kY));
    dstar.components[2] = Polynomial();
    form.set_codifferential(dstar.to_analytic());
    return form;
  }
  throw std::invalid_argument("builtin: unknown form name '" + name + "'");
}

AnalyticForm square_top_form() {
  PolyForm u(2, 2);
  u.components[0] = (kOne - kX * kX) * (kOne - kY * kY);
  AnalyticForm form = u.to_analytic();
  PolyForm dstar(2, 1);
  dstar.components[0] = (kOne - kX * kX) * (-2.0 * kY);
  dstar.components[1] = (2.0 * kX) * (kOne - kY * kY);
  form.set_codifferential(dstar.to_analytic());
  return form;
}

AnalyticForm potential_p(int dim) {
  PolyForm p(dim, 0);
  p.components[0] = kX - kX * kX * kX * (1.0 / 3.0);
  return p.to_analytic();
}

}  // namespace whitney
