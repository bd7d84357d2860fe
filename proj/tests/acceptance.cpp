// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "pil/catalog.hpp"
#include "pil/leibniz.hpp"
#include "pil/quadrature.hpp"

namespace {

using namespace pil;
using quad::DomainSpec;
using quad::QuadResult;
using std::numbers::pi;

struct Honesty {
  int checked = 0;
  std::vector<std::string> violations;
};

Honesty g_honesty;

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  // |got - want| <= tol; converged results also feed the honesty criterion.
  void near(const std::string& what, double got, double want, double tol,
            const QuadResult* r = nullptr) {
    const double err = std::abs(got - want);
    if (!(err <= tol)) {
      fail(what + ": |" + num(got) + " - " + num(want) + "| = " + num(err) + " > " + num(tol));
    }
    if (r != nullptr && r->converged()) {
      ++g_honesty.checked;
      if (!(err <= 10.0 * r->abs_err_est)) {
        g_honesty.violations.push_back(title_ + " / " + what + ": error " + num(err) +
                                       " > 10 x estimate " + num(r->abs_err_est));
      }
    }
  }

  void expect(const std::string& what, bool ok) {
    if (!ok) {
      fail(what);
    }
  }

  template <typename Fn>
  void guarded(Fn fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      fail(std::string("threw: ") + e.what());
    }
  }

  bool report(double seconds, double budget) {
    if (seconds > budget) {
      fail("took " + num(seconds) + " s, budget " + num(budget) + " s");
    }
    std::cout << (failures_.empty() ? "PASS" : "FAIL") << "  " << title_ << "  (" << num(seconds)
              << " s)\n";
    for (const std::string& f : failures_) {
      std::cout << "        " << f << '\n';
    }
    return failures_.empty();
  }

  static std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  }

 private:
  void fail(std::string msg) { failures_.push_back(std::move(msg)); }

  std::string title_;
  std::vector<std::string> failures_;
};

const leibniz::ParametricIntegral& entry(std::string_view id) {
  return catalog::find(id).parametric;
}

void gauss_reference(Criterion& c) {
  for (double a : {0.5, 1.0, 2.0}) {
    const QuadResult r = quad::integrate_improper([a](double x) { return std::exp(-a * x * x); },
                                                  DomainSpec::half_line(0.0));
    c.near("alpha " + Criterion::num(a), r.value, 0.5 * std::sqrt(pi / a), 1e-9, &r);
  }
}

void log_ratio(Criterion& c) {
  const QuadResult direct = quad::integrate_improper(
      [](double x) { return x < 1e-100 ? 1.0 : std::log1p(x * x) / (x * x); },
      DomainSpec::half_line(0.0));
  c.near("direct", direct.value, pi, 1e-7, &direct);
  const QuadResult rec = leibniz::reconstruct(entry("ex1"), 1.0);
  c.near("reconstructed from (0, 0)", rec.value, pi, 1e-6, &rec);
}

void log_cosine(Criterion& c) {
  const auto& p = entry("ex2");
  for (double a : {1.5, 2.0, 5.0}) {
    const QuadResult r = leibniz::eval_direct(p, a);
    c.near("direct alpha " + Criterion::num(a), r.value, 2 * pi * std::log(a), 1e-7, &r);
    const QuadResult d = leibniz::deriv_under_integral(p, a);
    c.near("derivative alpha " + Criterion::num(a), d.value, 2 * pi / a, 1e-8, &d);
  }
  const QuadResult at_one = leibniz::eval_direct(p, 1.0);
  c.near("direct alpha 1", at_one.value, 0.0, 1e-5, &at_one);
  for (double a : {1.1, 2.0, 10.0}) {
    c.near("real part alpha " + Criterion::num(a), catalog::conjugate_real_part(a), 0.0, 1e-10);
  }
}

void gaussian_sine(Criterion& c) {
  auto beta_closed = [](double b) {
    return std::sqrt(pi / 2) * std::sqrt(std::sqrt(1 + b * b) - 1);
  };
  for (double b : {0.5, 1.0, 2.0}) {
    const QuadResult r = quad::integrate_improper(
        [b](double x) { return x < 1e-100 ? b : std::exp(-x * x) * std::sin(b * x * x) / (x * x); },
        DomainSpec::half_line(0.0));
    c.near("beta " + Criterion::num(b), r.value, beta_closed(b), 1e-7, &r);
  }
  const QuadResult one = leibniz::eval_direct(entry("ex3_beta"), 1.0);
  c.near("beta 1 radical", one.value, std::sqrt(pi / 2) * std::sqrt(std::sqrt(2.0) - 1), 1e-7,
         &one);
  for (double a : {0.5, 1.0, 2.0}) {
    const QuadResult r = leibniz::eval_direct(entry("ex3_alpha"), a);
    c.near("alpha variant " + Criterion::num(a), r.value,
           std::sqrt(pi / 2) * std::sqrt(std::sqrt(a * a + 1) - a), 1e-7, &r);
  }
}

void oscillatory_limit(Criterion& c) {
  const QuadResult r = quad::integrate_oscillatory_improper(
      [](double x) { return x < 1e-100 ? 1.0 : std::sin(x * x) / (x * x); },
      DomainSpec::oscillatory(0.0, [](std::size_t k) { return std::sqrt((k + 1.0) * pi); }));
  c.near("sin(x^2)/x^2", r.value, std::sqrt(2 * pi) / 2, 1e-6, &r);
}

void log_over_arcsine(Criterion& c) {
  auto closed = [](double a) { return pi * std::log((1 + std::sqrt(1 - a * a)) / 2); };
  const std::vector<std::pair<double, double>> cases = {
      {0.2, 1e-7}, {0.5, 1e-7}, {0.9, 1e-7}, {0.99, 1e-6}, {1.0, 1e-5}};
  for (const auto& [a, tol] : cases) {
    const DomainSpec d = DomainSpec::singular(-a, a);
    const QuadResult x_form = quad::integrate_singular(
        [a](double x) { return std::log1p(x) / std::sqrt((a - x) * (a + x)); }, d);
    c.near("x form a " + Criterion::num(a), x_form.value, closed(a), tol, &x_form);
    const QuadResult angle_form = leibniz::eval_direct(entry("ex4"), a);
    c.near("angle form a " + Criterion::num(a), angle_form.value, closed(a), tol, &angle_form);
  }
  c.near("a 1 equals -pi ln 2", closed(1.0), -pi * std::log(2.0), 1e-15);
  for (double a : {0.0, 0.6, 0.99}) {
    c.near("reciprocal sine alpha " + Criterion::num(a), catalog::reciprocal_sine_integral(a),
           pi / std::sqrt(1 - a * a), 1e-9);
  }
}

void interchange(Criterion& c) {
  for (const catalog::CatalogEntry& e : catalog::entries()) {
    for (double a : e.verification_grid) {
      if (!e.parametric.param_domain.interior(a)) {
        continue;
      }
      const leibniz::InterchangeReport r = leibniz::interchange_check(e.parametric, a, 1e-4, 1e-5);
      c.expect(e.id + " alpha " + Criterion::num(a) + ": discrepancy " +
                   Criterion::num(r.discrepancy) + " > allowance " + Criterion::num(r.tolerance),
               r.pass);
    }
  }
}

void reconstruction(Criterion& c) {
  for (const catalog::CatalogEntry& e : catalog::entries()) {
    if (!e.parametric.anchor) {
      continue;  // reference entry, nothing to reconstruct from
    }
    for (double a : e.verification_grid) {
      const QuadResult direct = leibniz::eval_direct(e.parametric, a);
      const QuadResult rec = leibniz::reconstruct(e.parametric, a);
      c.near(e.id + " alpha " + Criterion::num(a), rec.value, direct.value, 1e-6);
      if (e.parametric.solution_closed) {
        c.near(e.id + " closed alpha " + Criterion::num(a), direct.value,
               e.parametric.solution_closed(a), e.is_loose(a) ? 1e-5 : 1e-7, &direct);
      }
    }
  }
  for (double a : {0.2, 0.5}) {
    const QuadResult rec = leibniz::reconstruct(entry("ex4"), a);
    c.near("ex4 integration constant alpha " + Criterion::num(a),
           rec.value - pi * std::log(1 + std::sqrt(1 - a * a)), -pi * std::log(2.0), 1e-6);
  }
}

void domination(Criterion& c) {
  struct Case {
    const char* id;
    double lo, hi;
    leibniz::Verdict want;
  };
  const std::array<Case, 4> cases = {{
      {"ex1", 0.5, 2.0, leibniz::Verdict::dominated},
      {"ex3_beta", 0.0, 2.0, leibniz::Verdict::dominated},
      {"ex4", 0.0, 0.9, leibniz::Verdict::dominated},
      {"ex1", 0.0, 1.0, leibniz::Verdict::suspect_divergent},
  }};
  for (const Case& k : cases) {
    const auto r = leibniz::domination_scan(entry(k.id), {k.lo, k.hi, true, true}, 9);
    c.expect(std::string(k.id) + " [" + Criterion::num(k.lo) + ", " + Criterion::num(k.hi) +
                 "]: got " + std::string(leibniz::to_string(r.verdict)),
             r.verdict == k.want);
  }
}

struct Process {
  int code;
  std::string out;
};

Process spawn(const std::string& args) {
  const std::string cmd = std::string(PIL_EXECUTABLE) + " " + args + " 2>/dev/null";
  Process p{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return p;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    p.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

void cli_contract(Criterion& c) {
  const Process all = spawn("verify all");
  c.expect("verify all exit code " + std::to_string(all.code), all.code == 0);
  const Process bad = spawn("eval ex2 --alpha 0.5");
  c.expect("out-of-domain exit code " + std::to_string(bad.code), bad.code == 3);
  for (const std::string args :
       {"sweep ex4 --from 0 --to 1 --steps 11 --format csv", "verify all --format csv",
        "verify all --format json", "eval ex1 --alpha 1 --format json"}) {
    const Process first = spawn(args);
    const Process second = spawn(args);
    c.expect("'" + args + "' differs between runs", first.out == second.out && !first.out.empty());
  }
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  struct Item {
    const char* title;
    std::function<void(Criterion&)> body;
    double budget;
  };
  const std::vector<Item> items = {
      {"1  Gaussian reference integral", gauss_reference, 2.0},
      {"2  log(1 + x^2)/x^2 direct and reconstructed", log_ratio, 2.0},
      {"3  log(1 - 2a cos x + a^2) and its derivative", log_cosine, 2.0},
      {"4  Gaussian-damped sine, both parameterizations", gaussian_sine, 2.0},
      {"5  oscillatory sin(x^2)/x^2 limit", oscillatory_limit, 5.0},
      {"6  log(1 + x)/sqrt(a^2 - x^2) singular quadrature", log_over_arcsine, 2.0},
      {"7  interchange check on every interior grid point", interchange, 2.0},
      {"8  reconstruction agrees with direct quadrature", reconstruction, 2.0},
      {"9  domination scans", domination, 2.0},
  };

  bool all_pass = true;
  for (const Item& item : items) {
    Criterion c(item.title);
    const auto t0 = Clock::now();
    c.guarded([&] { item.body(c); });
    all_pass = c.report(std::chrono::duration<double>(Clock::now() - t0).count(), item.budget) &&
               all_pass;
  }

  {
    Criterion c("10 error estimates are honest (converged results)");
    c.expect("no converged results were compared", g_honesty.checked > 0);
    for (const std::string& v : g_honesty.violations) {
      c.expect(v, false);
    }
    std::cout << "        " << g_honesty.checked << " converged comparisons checked\n";
    all_pass = c.report(0.0, 1.0) && all_pass;
  }
  {
    Criterion c("11 command-line contract");
    const auto t0 = Clock::now();
    c.guarded([&] { cli_contract(c); });
    all_pass = c.report(std::chrono::duration<double>(Clock::now() - t0).count(), 10.0) && all_pass;
  }

  std::cout << (all_pass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return all_pass ? 0 : 1;
}
