#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pil/leibniz.hpp"

namespace pil::catalog {

/// One worked integral with everything the engine needs to check it.
///
/// Ids, in registry order:
///   gauss      int_0^inf exp(-a x^2) dx                         = sqrt(pi/a)/2
///   ex1        int_0^inf ln(1 + a x^2)/x^2 dx                    = pi sqrt(a)
///   ex2        int_0^pi ln(1 - 2a cos x + a^2) dx,  a >= 1       = 2 pi ln a
///   ex3_beta   int_0^inf exp(-x^2) sin(b x^2)/x^2 dx             = sqrt(pi/2) sqrt(sqrt(1+b^2) - 1)
///   ex3_alpha  int_0^inf exp(-a x^2) sin(x^2)/x^2 dx             = sqrt(pi/2) sqrt(sqrt(a^2+1) - a)
///   ex4        int_{-pi/2}^{pi/2} ln(1 + a sin p) dp,  0<=a<=1   = pi ln((1 + sqrt(1-a^2))/2)
///
/// ex4 is the reduced form of int_{-a}^{a} ln(1+x)/sqrt(a^2-x^2) dx after
/// x = a sin p, with the product parameter a*b taken at b = 1.
struct CatalogEntry {
  std::string id;
  std::string title;
  leibniz::ParametricIntegral parametric;
  std::vector<double> verification_grid;
  // Grid points next to singular or oscillatory behaviour, verified at a looser tolerance.
  std::vector<double> loose_points;
  std::string singular_notes;

  bool is_loose(double alpha) const;
};

/// All six entries in registry order. Built once; immutable afterwards.
const std::vector<CatalogEntry>& entries();

/// Throws UnknownEntryError naming the valid ids.
const CatalogEntry& find(std::string_view id);

std::vector<std::string> ids();

/// The closed-form solution I(alpha) of entry `id`.
double closed_form(std::string_view id, double alpha);

/// The closed-form dI/dalpha; defined for ex1, ex2, ex3_beta and ex4.
double rhs_closed_form(std::string_view id, double alpha);

/// Quadrature of 1/(1 + a sin p) over [-pi/2, pi/2]; equals pi/sqrt(1-a^2).
/// Requires 0 <= a < 1.
double reciprocal_sine_integral(double alpha);

/// Quadrature over [0, pi] of Re[e^{-ix}/(a - e^{-ix})] = (a cos x - 1)/(a^2 - 2a cos x + 1).
/// Vanishes for a > 1: the complex integral is purely imaginary.
double conjugate_real_part(double alpha);

/// The matching imaginary-part integral, -ln((a+1)/(a-1)) for a > 1.
double conjugate_imag_part(double alpha);

}  // namespace pil::catalog
