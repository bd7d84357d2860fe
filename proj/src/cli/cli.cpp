#include "pil/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pil/catalog.hpp"
#include "pil/errors.hpp"
#include "pil/leibniz.hpp"
#include "pil/report.hpp"

namespace pil::cli {

namespace {

using nlohmann::ordered_json;
using report::ReportEnvelope;
using report::ResultRecord;

constexpr double kTolDirect = 1e-7;
constexpr double kTolLoose = 1e-5;
constexpr double kTolRecon = 1e-6;

struct Request {
  std::string command;
  std::string id;
  double alpha = 0.0;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::optional<double> tol_direct;
  std::optional<double> tol_recon;
  std::string format = "text";
  std::string out_path;
};

// A failure at one parameter value; carries the value into the diagnostic.
struct PointError {
  double alpha;
  std::string what;
};

double direct_tolerance(const Request& req, const catalog::CatalogEntry& e, double alpha) {
  if (req.tol_direct) {
    return *req.tol_direct;
  }
  return e.is_loose(alpha) ? kTolLoose : kTolDirect;
}

double recon_tolerance(const Request& req) { return req.tol_recon.value_or(kTolRecon); }

ordered_json echo_inputs(const Request& req) {
  ordered_json in;
  in["command"] = req.command;
  if (!req.id.empty()) {
    in["id"] = req.id;
  }
  if (req.command == "eval" || req.command == "reconstruct") {
    in["alpha"] = req.alpha;
  }
  if (req.command == "sweep") {
    in["from"] = req.from;
    in["to"] = req.to;
    in["steps"] = req.steps;
  }
  if (req.tol_direct) {
    in["tol_direct"] = *req.tol_direct;
  }
  if (req.tol_recon) {
    in["tol_recon"] = *req.tol_recon;
  }
  in["format"] = req.format;
  return in;
}

ResultRecord direct_record(const Request& req, const catalog::CatalogEntry& e, double alpha) {
  const leibniz::ParametricIntegral& p = e.parametric;
  ResultRecord r;
  r.alpha = alpha;
  const quad::QuadResult direct = leibniz::eval_direct(p, alpha);
  r.direct = direct.value;
  r.direct_err_est = direct.abs_err_est;
  if (p.solution_closed) {
    r.closed_form = p.solution_closed(alpha);
    r.disc_direct_closed = std::abs(direct.value - *r.closed_form);
    r.pass = *r.disc_direct_closed <= direct_tolerance(req, e, alpha);
  } else {
    r.pass = direct.converged();
  }
  return r;
}

ResultRecord reconstruct_record(const Request& req, const catalog::CatalogEntry& e, double alpha) {
  ResultRecord r = direct_record(req, e, alpha);
  const quad::QuadResult rec = leibniz::reconstruct(e.parametric, alpha);
  r.reconstructed = rec.value;
  r.disc_recon_direct = std::abs(rec.value - *r.direct);
  r.pass = r.pass && *r.disc_recon_direct <= recon_tolerance(req);
  return r;
}

struct EntryOutcome {
  ReportEnvelope env;
  std::vector<PointError> errors;
};

EntryOutcome verify_entry(const Request& req, const catalog::CatalogEntry& e) {
  EntryOutcome o;
  o.env.tool_version = std::string(kToolVersion);
  o.env.entry_id = e.id;
  o.env.inputs = echo_inputs(req);
  o.env.inputs["id"] = e.id;
  o.env.inputs["tol_direct"] = req.tol_direct.value_or(kTolDirect);
  o.env.inputs["tol_loose"] = req.tol_direct.value_or(kTolLoose);
  o.env.inputs["tol_recon"] = recon_tolerance(req);

  // Tolerances are applied per point below; the engine's own pass flags are ignored.
  const leibniz::VerificationReport rep =
      leibniz::verify(e.parametric, e.verification_grid, kTolDirect, recon_tolerance(req));
  for (const leibniz::PointVerification& pt : rep.points) {
    ResultRecord r;
    r.alpha = pt.alpha;
    if (pt.direct) {
      r.direct = pt.direct->value;
      r.direct_err_est = pt.direct->abs_err_est;
    }
    if (pt.reconstructed) {
      r.reconstructed = pt.reconstructed->value;
    }
    r.closed_form = pt.closed_form;
    r.disc_direct_closed = pt.disc_direct_closed;
    r.disc_recon_direct = pt.disc_recon_direct;
    r.pass = pt.failure.empty() &&
             (!r.disc_direct_closed ||
              *r.disc_direct_closed <= direct_tolerance(req, e, pt.alpha)) &&
             (!r.disc_recon_direct || *r.disc_recon_direct <= recon_tolerance(req));
    if (!pt.failure.empty()) {
      o.errors.push_back({pt.alpha, pt.failure});
    }
    o.env.results.push_back(r);
  }
  report::finalize(o.env);
  return o;
}

void emit(std::ostream& os, const Request& req, const ReportEnvelope& env) {
  if (req.format == "json") {
    os << report::to_json(env).dump(2) << '\n';
  } else if (req.format == "csv") {
    report::write_csv_header(os, false);
    report::write_csv_rows(os, env.results);
  } else {
    report::write_text(os, env);
  }
}

void emit_list(std::ostream& os, const Request& req) {
  if (req.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const catalog::CatalogEntry& e : catalog::entries()) {
      const leibniz::ParamInterval& d = e.parametric.param_domain;
      ordered_json j;
      j["id"] = e.id;
      j["title"] = e.title;
      // JSON has no infinity; an unbounded end is null.
      j["param_domain"] = {{"lo", d.lo},
                           {"hi", std::isfinite(d.hi) ? ordered_json(d.hi) : ordered_json()},
                           {"lo_closed", d.lo_closed},
                           {"hi_closed", d.hi_closed}};
      if (e.parametric.anchor) {
        j["anchor"] = {{"alpha0", e.parametric.anchor->alpha0},
                       {"value0", e.parametric.anchor->value0}};
      } else {
        j["anchor"] = nullptr;
      }
      j["verification_grid"] = e.verification_grid;
      j["singular_notes"] = e.singular_notes;
      arr.push_back(j);
    }
    ordered_json top;
    top["tool_version"] = std::string(kToolVersion);
    top["entries"] = arr;
    os << top.dump(2) << '\n';
    return;
  }
  for (const catalog::CatalogEntry& e : catalog::entries()) {
    const leibniz::ParamInterval& d = e.parametric.param_domain;
    os << std::left << std::setw(10) << e.id << ' ' << (d.lo_closed ? '[' : '(')
       << report::format_number(d.lo) << ", " << report::format_number(d.hi)
       << (d.hi_closed ? ']' : ')') << "  anchor ";
    if (e.parametric.anchor) {
      os << '(' << report::format_number(e.parametric.anchor->alpha0) << ", "
         << report::format_number(e.parametric.anchor->value0) << ')';
    } else {
      os << "none";
    }
    os << "\n           " << e.title << '\n';
  }
}

void report_errors(std::ostream& err, std::string_view id, const std::vector<PointError>& errors) {
  for (const PointError& pe : errors) {
    err << "error: " << id << " at alpha = " << report::format_number(pe.alpha) << ": " << pe.what
        << '\n';
  }
}

// Evaluates `fn` at every alpha concurrently; results and errors keep input order.
template <typename Fn>
std::vector<ResultRecord> fan_out(const std::vector<double>& alphas, Fn fn,
                                  std::vector<PointError>& errors) {
  std::vector<std::future<ResultRecord>> pending;
  pending.reserve(alphas.size());
  for (double a : alphas) {
    pending.push_back(std::async(std::launch::async, fn, a));
  }
  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    try {
      out.push_back(pending[i].get());
    } catch (const Error& e) {
      errors.push_back({alphas[i], e.what()});
    }
  }
  return out;
}

int execute(const Request& req, std::ostream& os, std::ostream& err) {
  if (req.command == "list") {
    if (req.format == "csv") {
      err << "error: list supports --format text or json\n";
      return kUsage;
    }
    emit_list(os, req);
    return kOk;
  }

  if (req.command == "verify" && req.id == "all") {
    std::vector<EntryOutcome> outcomes;
    for (const catalog::CatalogEntry& e : catalog::entries()) {
      outcomes.push_back(verify_entry(req, e));
    }
    bool pass = true;
    bool numeric = false;
    for (const EntryOutcome& o : outcomes) {
      pass = pass && o.env.overall_pass;
      numeric = numeric || !o.errors.empty();
      report_errors(err, o.env.entry_id, o.errors);
    }
    if (req.format == "json") {
      ordered_json top;
      top["tool_version"] = std::string(kToolVersion);
      top["entry_id"] = "all";
      top["inputs"] = echo_inputs(req);
      top["reports"] = ordered_json::array();
      for (const EntryOutcome& o : outcomes) {
        top["reports"].push_back(report::to_json(o.env));
      }
      top["overall_pass"] = pass;
      os << top.dump(2) << '\n';
    } else if (req.format == "csv") {
      report::write_csv_header(os, true);
      for (const EntryOutcome& o : outcomes) {
        report::write_csv_rows(os, o.env.results, o.env.entry_id);
      }
    } else {
      for (const EntryOutcome& o : outcomes) {
        report::write_text(os, o.env);
      }
      os << (pass ? "all entries pass" : "verification FAILED") << '\n';
    }
    return numeric ? kNumeric : (pass ? kOk : kVerificationFailed);
  }

  const catalog::CatalogEntry& entry = catalog::find(req.id);
  ReportEnvelope env;
  env.tool_version = std::string(kToolVersion);
  env.entry_id = entry.id;
  env.inputs = echo_inputs(req);
  std::vector<PointError> errors;

  if (req.command == "verify") {
    EntryOutcome o = verify_entry(req, entry);
    report_errors(err, entry.id, o.errors);
    emit(os, req, o.env);
    if (!o.errors.empty()) {
      return kNumeric;
    }
    return o.env.overall_pass ? kOk : kVerificationFailed;
  }

  if (req.command == "eval" || req.command == "reconstruct") {
    const bool rec = req.command == "reconstruct";
    env.results = fan_out(
        {req.alpha},
        [&](double a) { return rec ? reconstruct_record(req, entry, a) : direct_record(req, entry, a); },
        errors);
  } else {
    std::vector<double> alphas(static_cast<std::size_t>(req.steps));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      alphas[i] = req.from + (req.to - req.from) * static_cast<double>(i) /
                                 static_cast<double>(alphas.size() - 1);
    }
    alphas.back() = req.to;
    env.results = fan_out(alphas, [&](double a) { return direct_record(req, entry, a); }, errors);
  }

  if (!errors.empty()) {
    report_errors(err, entry.id, errors);
    return kNumeric;
  }
  report::finalize(env);
  emit(os, req, env);
  return env.overall_pass ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentiation under the integral sign: evaluate, reconstruct and verify",
               "pil"};
  app.require_subcommand(1);
  Request req;

  auto common = [&req](CLI::App* sub) {
    sub->add_option("--format", req.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", req.out_path, "write the report to this file");
  };
  auto tolerances = [&req](CLI::App* sub) {
    sub->add_option("--tol-direct", req.tol_direct, "direct vs closed-form tolerance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-recon", req.tol_recon, "reconstructed vs direct tolerance")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* list = app.add_subcommand("list", "list catalog entries");
  common(list);

  CLI::App* eval = app.add_subcommand("eval", "direct quadrature at one alpha");
  eval->add_option("id", req.id, "catalog id")->required();
  eval->add_option("--alpha", req.alpha)->required();
  common(eval);
  tolerances(eval);

  CLI::App* sweep = app.add_subcommand("sweep", "direct and closed form over a uniform grid");
  sweep->add_option("id", req.id, "catalog id")->required();
  sweep->add_option("--from", req.from)->required();
  sweep->add_option("--to", req.to)->required();
  sweep->add_option("--steps", req.steps)->required();
  common(sweep);
  tolerances(sweep);

  CLI::App* rec = app.add_subcommand("reconstruct", "integrate dI/dalpha from the anchor");
  rec->add_option("id", req.id, "catalog id")->required();
  rec->add_option("--alpha", req.alpha)->required();
  common(rec);
  tolerances(rec);

  CLI::App* ver = app.add_subcommand("verify", "check an entry's grid, or every entry with 'all'");
  ver->add_option("id", req.id, "catalog id or all")->required();
  common(ver);
  tolerances(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  req.command = app.get_subcommands().front()->get_name();

  if (req.command == "sweep") {
    if (req.steps < 2) {
      err << "error: --steps must be at least 2\n";
      return kUsage;
    }
    if (!(req.from < req.to)) {
      err << "error: --from must be less than --to\n";
      return kUsage;
    }
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    code = execute(req, buffer, err);
  } catch (const UnknownEntryError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }

  if (req.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(req.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << req.out_path << '\n';
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace pil::cli
