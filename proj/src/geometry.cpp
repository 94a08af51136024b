#include "hyperdimer/geometry.hpp"

#include <cmath>

namespace hyperdimer {

double principal_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double turn_angle(const Cplx& a, const Cplx& b, const Cplx& c) {
  return principal_angle(std::arg(c - b) - std::arg(b - a));
}

double winding_angle(const std::vector<Cplx>& poly, const Cplx& p) {
  double total = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    Cplx u = poly[i] - p;
    Cplx v = poly[(i + 1) % n] - p;
    total += principal_angle(std::arg(v) - std::arg(u));
  }
  return total;
}

int winding_number(const std::vector<Cplx>& poly, const Cplx& p) {
  return static_cast<int>(std::lround(winding_angle(poly, p) / (2.0 * kPi)));
}

Circle circumcircle(const Cplx& z1, const Cplx& z2, const Cplx& z3) {
  // Translate z1 to the origin; solve for the center from the two chord
  // perpendicular-bisector conditions.
  Cplx b = z2 - z1, c = z3 - z1;
  double d = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
  double bx = std::norm(b), cx = std::norm(c);
  Cplx center((c.imag() * bx - b.imag() * cx) / d,
              (b.real() * cx - c.real() * bx) / d);
  return Circle{center + z1, std::abs(center)};
}

Cplx incenter(const Cplx& z1, const Cplx& z2, const Cplx& z3) {
  double a = std::abs(z2 - z3);
  double b = std::abs(z3 - z1);
  double c = std::abs(z1 - z2);
  return (a * z1 + b * z2 + c * z3) / (a + b + c);
}

Cplx DiscAutomorphism::operator()(const Cplx& z) const {
  return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z);
}

Cplx DiscAutomorphism::inverse(const Cplx& w) const {
  Cplx e = std::polar(1.0, theta);
  return (w + e * a) / (e + std::conj(a) * w);
}

double DiscAutomorphism::arg_deriv(const Cplx& z) const {
  return theta - 2.0 * std::arg(1.0 - std::conj(a) * z);
}

DiscAutomorphism DiscAutomorphism::to_origin(const Cplx& p) {
  return DiscAutomorphism{p, 0.0};
}

DiscAutomorphism DiscAutomorphism::rotation(double theta) {
  return DiscAutomorphism{Cplx(0.0, 0.0), theta};
}

Circle map_circle(const DiscAutomorphism& phi, const Circle& c) {
  Cplx p1 = phi(c.center + c.radius);
  Cplx p2 = phi(c.center + Cplx(0.0, c.radius));
  Cplx p3 = phi(c.center - c.radius);
  return circumcircle(p1, p2, p3);
}

}  // namespace hyperdimer
