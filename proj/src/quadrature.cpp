#include "defspec/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "defspec/error.hpp"

namespace defspec {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, int pieces) {
  if (!(b >= a) || pieces < 1) fail(ErrorKind::Input, "integrate: need a <= b and pieces >= 1");
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  constexpr unsigned kMaxDepth = 18;
  const double h = (b - a) / pieces;
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + h * i;
    const double hi = (i + 1 == pieces) ? b : lo + h;
    sum += Rule::integrate(f, lo, hi, kMaxDepth, rel_tol);
  }
  return sum;
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b, double rel_tol,
                          int pieces) {
  const double re = integrate([&](double x) { return f(x).real(); }, a, b, rel_tol, pieces);
  const double im = integrate([&](double x) { return f(x).imag(); }, a, b, rel_tol, pieces);
  return {re, im};
}

}  // namespace defspec
