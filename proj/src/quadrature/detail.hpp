#pragma once

#include <functional>

#include "pil/quadrature.hpp"

namespace pil::quad::detail {

QuadResult gauss_kronrod(const Integrand& f, double a, double b, const QuadConfig& cfg);

/// Quadrature node on [a, b] with both endpoint distances carried separately,
/// so the one nearer the endpoint keeps full relative precision.
struct Node {
  double x;
  double from_lower;
  double from_upper;
};

using NodeIntegrand = std::function<double(const Node&)>;

/// What the outermost nodes on one side of a tanh-sinh sum looked like.
struct SideReport {
  double distance = 0.0;  // distance of the outermost used node to the endpoint
  double value = 0.0;     // integrand at that node
  double weight = 0.0;    // its quadrature weight (before the step factor)
  double exponent = 0.0;  // fitted local power |f| ~ distance^exponent
  double exponent_drift = 0.0;  // change of the fitted exponent one step further in
  bool exponent_known = false;
};

struct TanhSinhOptions {
  // Nodes failing this predicate are skipped (e.g. they round onto the endpoint).
  std::function<bool(const Node&)> usable;
  // Throw NonIntegrableSingularityError when the fitted exponent is <= -1.
  bool probe_lower = true;
  bool probe_upper = true;
  double lower_label = 0.0;
  double upper_label = 0.0;
  // Add the truncated power-law remainder  d*f/(1+p)  beyond the outermost node.
  bool correct_lower = true;
  bool correct_upper = true;
  // Node abscissae are rounded to doubles; near an endpoint that can move the
  // node by a large fraction of its distance. When set, f(x_rounded) is
  // rescaled by (d / d_rounded)^p with the fitted exponent p.
  bool rescale_rounded = false;
};

struct TanhSinhResult {
  QuadResult result;
  SideReport lower;
  SideReport upper;
};

TanhSinhResult tanh_sinh(const NodeIntegrand& g, double a, double b, const QuadConfig& cfg,
                         const TanhSinhOptions& options);

}  // namespace pil::quad::detail
