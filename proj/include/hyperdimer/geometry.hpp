#pragma once

#include <complex>
#include <vector>

namespace hyperdimer {

using Cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

// Normalize an angle to (-pi, pi].
double principal_angle(double a);

// Signed turn at b along the path a -> b -> c, in (-pi, pi].
double turn_angle(const Cplx& a, const Cplx& b, const Cplx& c);

// Total winding angle of the closed polygon `poly` around `p` (multiple of 2*pi
// up to numerical error).  winding_number rounds to the nearest integer.
double winding_angle(const std::vector<Cplx>& poly, const Cplx& p);
int winding_number(const std::vector<Cplx>& poly, const Cplx& p);

struct Circle {
  Cplx center;
  double radius = 0.0;
};

// Circumcircle through three non-collinear points.
Circle circumcircle(const Cplx& z1, const Cplx& z2, const Cplx& z3);

// Incenter of the triangle z1 z2 z3.
Cplx incenter(const Cplx& z1, const Cplx& z2, const Cplx& z3);

// Automorphism of the unit disc: z -> e^{i theta} (z - a) / (1 - conj(a) z).
struct DiscAutomorphism {
  Cplx a{0.0, 0.0};
  double theta = 0.0;

  Cplx operator()(const Cplx& z) const;
  Cplx inverse(const Cplx& w) const;
  // Continuous branch of arg(phi'(z)) on the closed disc:
  // arg(phi') = theta - 2 * Arg(1 - conj(a) z), where Re(1 - conj(a) z) > 0.
  double arg_deriv(const Cplx& z) const;

  static DiscAutomorphism to_origin(const Cplx& p);           // p -> 0
  static DiscAutomorphism rotation(double theta);
};

// Image of a circle contained in the closed disc under a disc automorphism,
// recovered from three image points (automorphisms map circles to circles).
Circle map_circle(const DiscAutomorphism& phi, const Circle& c);

}  // namespace hyperdimer
