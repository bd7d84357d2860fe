#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pil/catalog.hpp"
#include "pil/errors.hpp"
#include "pil/leibniz.hpp"

namespace {

using namespace pil::leibniz;
using pil::catalog::find;
using std::numbers::pi;

const ParametricIntegral& entry(std::string_view id) { return find(id).parametric; }

// exp(-a x) on [0, inf), I = 1/a, no analytic derivative so central differences are used.
ParametricIntegral exponential_without_derivative() {
  ParametricIntegral p;
  p.integrand = [](double x, double a) { return std::exp(-a * x); };
  p.domain = [](double) { return DomainSpec::half_line(0.0); };
  p.param_domain = {0.5, 4.0, true, true};
  p.anchor = Anchor{1.0, 1.0};
  p.solution_closed = [](double a) { return 1.0 / a; };
  return p;
}

TEST(ParamIntervalTest, OpenAndClosedEnds) {
  const ParamInterval d{0.0, 1.0, true, false};
  EXPECT_TRUE(d.contains(0.0));
  EXPECT_FALSE(d.contains(1.0));
  EXPECT_TRUE(d.in_closure(1.0));
  EXPECT_FALSE(d.interior(0.0));
  EXPECT_TRUE(d.interior(0.5));
  EXPECT_FALSE(d.contains(NAN));
  const ParamInterval half{0.0, INFINITY, false, false};
  EXPECT_TRUE(half.contains(1e300));
  EXPECT_FALSE(half.contains(INFINITY));
}

TEST(EvalDirectTest, CatalogValues) {
  EXPECT_NEAR(eval_direct(entry("ex2"), 1.0).value, 0.0, 1e-9);
  EXPECT_NEAR(eval_direct(entry("ex1"), 1.0).value, pi, 1e-10);
  EXPECT_NEAR(eval_direct(entry("ex3_beta"), 1.0).value,
              std::sqrt(pi / 2) * std::sqrt(std::sqrt(2.0) - 1.0), 1e-10);
}

TEST(EvalDirectTest, OutsideParameterDomain) {
  EXPECT_THROW(eval_direct(entry("ex2"), 0.5), pil::ParameterDomainError);
  EXPECT_THROW(eval_direct(entry("ex4"), 1.5), pil::ParameterDomainError);
  EXPECT_THROW(eval_direct(entry("ex1"), -1.0), pil::ParameterDomainError);
  EXPECT_THROW(eval_direct(entry("gauss"), 0.0), pil::ParameterDomainError);
}

TEST(DerivUnderIntegralTest, AnalyticDerivatives) {
  EXPECT_NEAR(deriv_under_integral(entry("ex1"), 1.0).value, pi / 2, 1e-10);
  EXPECT_NEAR(deriv_under_integral(entry("ex2"), 2.0).value, pi, 1e-10);
  EXPECT_NEAR(deriv_under_integral(entry("ex3_beta"), 0.0).value, std::sqrt(pi) / 2, 1e-10);
}

TEST(DerivUnderIntegralTest, CentralDifferenceFallback) {
  const ParametricIntegral p = exponential_without_derivative();
  EXPECT_NEAR(deriv_under_integral(p, 2.0).value, -0.25, 1e-8);
}

TEST(DerivUnderIntegralTest, BoundaryWithoutAnalyticRuleThrows) {
  const ParametricIntegral p = exponential_without_derivative();
  EXPECT_THROW(deriv_under_integral(p, 0.5), pil::OneSidedDifferenceUnsupportedError);
  EXPECT_THROW(deriv_under_integral(p, 4.0), pil::OneSidedDifferenceUnsupportedError);
}

TEST(InterchangeCheckTest, Examples) {
  const InterchangeReport ex1 = interchange_check(entry("ex1"), 1.0, 1e-4, 1e-5);
  EXPECT_TRUE(ex1.pass);
  EXPECT_LT(ex1.discrepancy, 1e-5);
  EXPECT_NEAR(ex1.rhs, pi / 2, 1e-9);

  const InterchangeReport ex4 = interchange_check(entry("ex4"), 0.5, 1e-4, 1e-5);
  EXPECT_TRUE(ex4.pass);
  const double s = std::sqrt(0.75);
  EXPECT_NEAR(ex4.rhs, (pi / 0.5) * (1.0 - 1.0 / s), 1e-9);

  const InterchangeReport ex2 = interchange_check(entry("ex2"), 1.5, 1e-4, 1e-5);
  EXPECT_TRUE(ex2.pass);
  EXPECT_NEAR(ex2.lhs, 2 * pi / 1.5, 1e-6);
  EXPECT_NEAR(ex2.rhs, 2 * pi / 1.5, 1e-9);
}

TEST(InterchangeCheckTest, ReportInvariants) {
  const InterchangeReport r = interchange_check(entry("ex3_beta"), 1.0, 1e-4, 1e-5);
  EXPECT_EQ(r.discrepancy, std::abs(r.lhs - r.rhs));
  EXPECT_EQ(r.pass, r.discrepancy <= r.tolerance);
  EXPECT_GE(r.tolerance, 1e-5);
}

TEST(InterchangeCheckTest, DetectsAWrongDerivative) {
  ParametricIntegral p = entry("ex1");
  p.d_alpha = [](double x, double a) { return 2.0 / (1.0 + a * x * x); };
  EXPECT_FALSE(interchange_check(p, 1.0, 1e-4, 1e-5).pass);
}

TEST(InterchangeCheckTest, NearTheBranchPointTheStepBiasDominates) {
  // At 0.99 the central difference of the exact solution is already off by ~2.8e-4
  // with h = 1e-4, more than tol + h^2 |I''|. A smaller step removes the bias.
  const ParametricIntegral& p = entry("ex4");
  const double exact = p.rhs_closed(0.99);
  const InterchangeReport coarse = interchange_check(p, 0.99, 1e-4, 1e-5);
  EXPECT_FALSE(coarse.pass);
  EXPECT_NEAR(coarse.rhs, exact, 1e-8);
  const double closed_fd =
      (p.solution_closed(0.99 + 1e-4) - p.solution_closed(0.99 - 1e-4)) / 2e-4;
  EXPECT_NEAR(coarse.lhs, closed_fd, 1e-6);
  EXPECT_TRUE(interchange_check(p, 0.99, 1e-6, 1e-5).pass);
}

TEST(InterchangeCheckTest, StepLeavingDomainThrows) {
  EXPECT_THROW(interchange_check(entry("ex4"), 0.99995, 1e-4, 1e-5), pil::ParameterDomainError);
  EXPECT_THROW(interchange_check(entry("ex1"), 1.0, 0.0, 1e-5), pil::InvalidArgumentError);
}

TEST(DominationScanTest, Examples) {
  const DominationReport a = domination_scan(entry("ex1"), {0.5, 2.0}, 9);
  EXPECT_EQ(a.verdict, Verdict::dominated);
  ASSERT_TRUE(a.envelope_integral);
  // Envelope is 1/(1 + 0.5 x^2), whose integral over (0, inf) is pi/sqrt(2).
  EXPECT_NEAR(*a.envelope_integral, pi / std::sqrt(2.0), 0.05);

  const DominationReport b = domination_scan(entry("ex1"), {0.0, 1.0}, 9);
  EXPECT_EQ(b.verdict, Verdict::suspect_divergent);
  EXPECT_FALSE(b.envelope_integral);

  const DominationReport c = domination_scan(entry("ex3_beta"), {0.0, 2.0}, 9);
  EXPECT_EQ(c.verdict, Verdict::dominated);
  // |cos(b x^2)| e^{-x^2} <= e^{-x^2}.
  EXPECT_LE(*c.envelope_integral, std::sqrt(pi) / 2 + 1e-3);
}

TEST(DominationScanTest, EnvelopeBoundsEverySampledPair) {
  const ParametricIntegral& p = entry("ex4");
  const DominationReport r = domination_scan(p, {0.0, 0.9}, 7);
  EXPECT_EQ(r.verdict, Verdict::dominated);
  for (const EnvelopeSample& s : r.envelope) {
    for (int i = 0; i < 7; ++i) {
      const double a = 0.9 * i / 6.0;
      EXPECT_GE(s.bound, std::abs(p.d_alpha(s.x, a)));
    }
  }
}

TEST(DominationScanTest, DegenerateWindows) {
  EXPECT_THROW(domination_scan(entry("ex1"), {1.0, 1.0}, 5), pil::DegenerateWindowError);
  EXPECT_THROW(domination_scan(entry("ex2"), {1.0, 2.0}, 5), pil::DegenerateWindowError);
  EXPECT_THROW(domination_scan(entry("ex4"), {0.5, 1.0}, 5), pil::DegenerateWindowError);
  EXPECT_THROW(domination_scan(entry("ex1"), {0.5, 2.0}, 2), pil::InvalidArgumentError);
  EXPECT_THROW(domination_scan(entry("ex4"), {0.5, 1.5}, 5), pil::ParameterDomainError);
}

TEST(ReconstructTest, Examples) {
  EXPECT_NEAR(reconstruct(entry("ex1"), 1.0).value, pi, 1e-9);
  EXPECT_NEAR(reconstruct(entry("ex2"), 3.0).value, 2 * pi * std::log(3.0), 1e-9);
  EXPECT_NEAR(reconstruct(entry("ex4"), 1.0).value, -pi * std::log(2.0), 1e-7);
}

TEST(ReconstructTest, AtTheAnchorReturnsTheAnchorValue) {
  const QuadResult r = reconstruct(entry("ex3_alpha"), 1.0);
  EXPECT_EQ(r.value, find("ex3_alpha").parametric.anchor->value0);
  EXPECT_EQ(r.abs_err_est, 0.0);
}

TEST(ReconstructTest, NumericRightHandSideBackwardsFromTheAnchor) {
  // ex3_alpha has no closed-form dI/dalpha; the path runs from 1 down to 0.5.
  const QuadResult r = reconstruct(entry("ex3_alpha"), 0.5);
  EXPECT_NEAR(r.value, find("ex3_alpha").parametric.solution_closed(0.5), 1e-8);
}

TEST(ReconstructTest, CentralDifferenceRoute) {
  const ParametricIntegral p = exponential_without_derivative();
  EXPECT_NEAR(reconstruct(p, 3.0).value, 1.0 / 3.0, 1e-7);
}

TEST(ReconstructTest, Errors) {
  EXPECT_THROW(reconstruct(entry("gauss"), 1.0), pil::ParameterDomainError);
  EXPECT_THROW(reconstruct(entry("ex4"), 1.2), pil::ParameterDomainError);
  EXPECT_THROW(reconstruct(entry("ex2"), 0.5), pil::ParameterDomainError);
}

TEST(VerifyTest, RecordsFailuresInsteadOfThrowing) {
  const VerificationReport r = verify(entry("ex1"), {1.0, -1.0, 4.0}, 1e-7, 1e-6);
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_EQ(r.points[0].alpha, 1.0);
  EXPECT_EQ(r.points[1].alpha, -1.0);
  EXPECT_EQ(r.points[2].alpha, 4.0);
  EXPECT_TRUE(r.points[0].pass);
  EXPECT_FALSE(r.points[1].pass);
  EXPECT_FALSE(r.points[1].failure.empty());
  EXPECT_TRUE(r.points[2].pass);
  EXPECT_FALSE(r.pass);
}

TEST(VerifyTest, SuiteExamples) {
  EXPECT_TRUE(verify(entry("ex1"), {0.25, 1.0, 4.0}, 1e-7, 1e-6).pass);
  EXPECT_TRUE(verify(entry("ex4"), {0.2, 0.5, 0.9}, 1e-6, 1e-6).pass);
  const VerificationReport r = verify(entry("ex3_alpha"), {0.0, 1.0}, 1e-6, 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.points[1].direct->value, eval_direct(entry("ex3_beta"), 1.0).value, 1e-9);
}

TEST(VerifyTest, ReferenceEntryWithoutAnchorSkipsReconstruction) {
  const VerificationReport r = verify(entry("gauss"), {0.5, 1.0, 2.0}, 1e-7, 1e-6);
  EXPECT_TRUE(r.pass);
  for (const PointVerification& pt : r.points) {
    EXPECT_FALSE(pt.reconstructed);
    EXPECT_FALSE(pt.disc_recon_direct);
  }
}

TEST(VerifyTest, EmptyGridThrows) {
  EXPECT_THROW(verify(entry("ex1"), {}, 1e-7, 1e-6), pil::InvalidArgumentError);
}

}  // namespace
