#ifndef GFS_CLI_HPP
#define GFS_CLI_HPP

// Command dispatch for the gfs tool. `run` never writes to the process
// streams itself; it returns the exit code and the text destined for
// standard output and standard error, which keeps it testable.
//
// Exit codes: 0 success, 2 validation failure or failed hypothesis,
// 1 input, parse, unsupported-class or solver errors.

#include "gfs/gfs.hpp"
#include "gfs/io.hpp"
#include "gfs/selftest/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gfs::cli {

using io::Json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {
      "validate",   "convolve",  "inorm", "modular",       "represent",         "cstar-norm",        "pd-check",
      "coeff",      "bnorm",     "schur-norm", "duality-check", "decompose-measure", "intertwiner-check", "selftest"};
  return list;
}

struct JobSpec {
  std::string command;
  std::optional<std::string> groupoid;
  std::optional<std::string> measure;
  std::optional<std::string> measure2;
  std::optional<std::string> phi;
  std::optional<std::string> f;
  std::optional<std::string> f2;
  std::optional<std::string> rep;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "json";
  std::optional<std::size_t> samples;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace detail {

// Raised to finish with exit code 2 while still printing a result body.
struct ValidationFailure {
  Json body;
  std::string message;
};

inline std::string require_path(const std::optional<std::string>& p, const char* flag, const std::string& command) {
  if (!p) throw std::invalid_argument(command + " requires " + flag);
  return *p;
}

struct Context {
  const JobSpec& job;
  io::LoadedGroupoid data;

  const FiniteGroupoid& g() const { return data.groupoid; }
  const HaarSystem& h() const { return data.haar; }

  UnitMeasure measure() const {
    if (!job.measure) return uniform_measure(g().unit_count());
    return io::parse_measure(io::read_json_file(*job.measure), g());
  }
  UnitMeasure measure2() const {
    return io::parse_measure(io::read_json_file(require_path(job.measure2, "--measure2", job.command)), g());
  }
  GroupoidFunction function(const std::optional<std::string>& path, const char* flag) const {
    return io::parse_function(io::read_json_file(require_path(path, flag, job.command)), g());
  }
  io::LoadedRepresentation representation(const UnitMeasure& mu, std::size_t max_dim = 2) const {
    if (job.rep) return io::parse_representation(io::read_json_file(*job.rep), g(), mu);
    io::LoadedRepresentation out;
    out.triple = random_representation_triple(g(), h(), mu, max_dim, job.seed);
    return out;
  }
};

inline void require_valid(const Context& ctx) {
  const auto rep = validate_groupoid(ctx.g());
  const auto haar = validate_haar(ctx.g(), ctx.h());
  if (!rep.ok() || !haar.ok()) {
    Json body;
    body["ok"] = false;
    body["violations"] = io::report_to_json(rep);
    body["haarViolations"] = io::report_to_json(haar);
    throw ValidationFailure{body, "groupoid or Haar system fails validation"};
  }
}

inline void require_valid_action(const Context& ctx, const RepresentationTriple& rep) {
  const auto report = validate_action(ctx.g(), rep.bundle, rep.action);
  if (!report.ok()) {
    Json body;
    body["ok"] = false;
    body["actionViolations"] = io::report_to_json(report);
    throw ValidationFailure{body, "representation fails validation"};
  }
}

inline Json sdp_to_json(const SdpSolution& s) {
  Json j;
  j["t"] = s.t;
  j["lowerBound"] = s.lower_bound;
  j["certificate"] = s.certificate;
  j["gap"] = s.gap;
  j["bracket"] = Json::array({s.bracket_lo, s.bracket_hi});
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  return j;
}

inline SdpOptions sdp_options(const JobSpec& job) {
  SdpOptions o;
  if (job.tol) o.tol = *job.tol;
  return o;
}

inline Json cmd_validate(const Context& ctx) {
  const auto rep = validate_groupoid(ctx.g());
  const auto haar = validate_haar(ctx.g(), ctx.h());
  Json body;
  body["ok"] = rep.ok() && haar.ok();
  body["units"] = ctx.g().unit_count();
  body["arrows"] = ctx.g().arrow_count();
  body["class"] = rep.ok() ? to_string(classify(ctx.g()).kind) : "invalid";
  body["violations"] = io::report_to_json(rep);
  body["haarViolations"] = io::report_to_json(haar);
  if (!body["ok"].get<bool>()) throw ValidationFailure{body, "groupoid or Haar system fails validation"};
  return body;
}

inline Json cmd_convolve(const Context& ctx) {
  require_valid(ctx);
  const auto f = ctx.function(ctx.job.f, "--f");
  const auto f2 = ctx.function(ctx.job.f2, "--f2");
  Json body;
  body["result"] = io::function_to_json(convolve(f, f2, ctx.g(), ctx.h()), ctx.g())["function"];
  body["involution"] = io::function_to_json(involution(f, ctx.g()), ctx.g())["function"];
  return body;
}

inline Json cmd_inorm(const Context& ctx) {
  require_valid(ctx);
  const auto f = ctx.function(ctx.job.f, "--f");
  return Json{{"iNorm", i_norm(f, ctx.g(), ctx.h())}};
}

inline Json cmd_modular(const Context& ctx) {
  require_valid(ctx);
  const auto mu = ctx.measure();
  require_nonnegative(mu, ctx.g().unit_count(), "modular");
  const auto& g = ctx.g();
  const auto nu = induced_measure(g, ctx.h(), mu);
  const auto nui = inverse_measure(g, nu);
  const auto qi = is_quasi_invariant(g, ctx.h(), mu);
  Json body;
  body["quasiInvariant"] = qi.holds;
  body["witness"] = qi.witness ? Json(g.arrow_label(*qi.witness)) : Json(nullptr);
  Json arrows = Json::array();
  std::optional<ModularFunction> delta;
  std::optional<ArrowMeasure> nu0;
  if (qi.holds) {
    delta = modular_function(g, ctx.h(), mu);
    nu0 = symmetrized_measure(g, nu);
  }
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    Json row{{"arrow", g.arrow_label(a)}, {"nu", nu[a]}, {"nuInverse", nui[a]}};
    if (delta) {
      row["delta"] = (*delta)[a];
      row["nu0"] = (*nu0)[a];
    }
    arrows.push_back(std::move(row));
  }
  body["arrows"] = std::move(arrows);
  if (!qi.holds) throw ValidationFailure{body, "measure is not quasi-invariant (witness " + g.arrow_label(*qi.witness) + ")"};
  return body;
}

inline Json cmd_represent(const Context& ctx) {
  require_valid(ctx);
  const auto mu = ctx.measure();
  const auto loaded = ctx.representation(mu);
  require_valid_action(ctx, loaded.triple);
  Json body;
  body["seedUsed"] = !ctx.job.rep.has_value();
  body["representation"] = io::representation_to_json(loaded.triple, ctx.g());
  if (ctx.job.f) {
    const auto f = ctx.function(ctx.job.f, "--f");
    const auto op = integrated_form(f, loaded.triple, ctx.g(), ctx.h());
    body["integratedForm"] = io::to_json(op.matrix);
    body["metric"] = std::vector<double>(op.metric.data(), op.metric.data() + op.metric.size());
    body["operatorNorm"] = op.norm();
    body["iNorm"] = i_norm(f, ctx.g(), ctx.h());
  }
  return body;
}

inline Json cmd_cstar_norm(const Context& ctx) {
  require_valid(ctx);
  const auto f = ctx.function(ctx.job.f, "--f");
  const auto mu = ctx.measure();
  Json body;
  body["value"] = cstar_norm(f, ctx.g(), ctx.h(), mu);
  body["class"] = to_string(classify(ctx.g()).kind);
  return body;
}

inline Json cmd_pd_check(const Context& ctx) {
  require_valid(ctx);
  const auto phi = ctx.function(ctx.job.phi, "--phi");
  const auto mu = ctx.measure();
  const auto rep = is_positive_definite(phi, ctx.g(), ctx.h(), mu, ctx.job.tol.value_or(kPdTolerance));
  Json body;
  body["isPD"] = rep.is_pd;
  body["minEigenvalue"] = rep.min_eigenvalue;
  body["worstUnit"] = rep.worst_unit ? Json(ctx.g().unit_label(*rep.worst_unit)) : Json(nullptr);
  body["borderline"] = rep.borderline;
  return body;
}

inline Json cmd_coeff(const Context& ctx) {
  require_valid(ctx);
  const auto mu = ctx.measure();
  const auto loaded = ctx.representation(mu);
  require_valid_action(ctx, loaded.triple);
  if (!loaded.alpha || !loaded.beta) throw std::invalid_argument("coeff requires 'alpha' and 'beta' in the --rep file");
  const auto phi = coefficient_function(*loaded.alpha, *loaded.beta, loaded.triple, ctx.g());
  Json body;
  body["function"] = io::function_to_json(phi, ctx.g())["function"];
  body["alphaSup"] = sup_norm(*loaded.alpha, loaded.triple.mu);
  body["betaSup"] = sup_norm(*loaded.beta, loaded.triple.mu);
  body["isPD"] = is_positive_definite(phi, ctx.g(), ctx.h(), loaded.triple.mu).is_pd;
  return body;
}

inline Json cmd_bnorm(const Context& ctx) {
  require_valid(ctx);
  const auto phi = ctx.function(ctx.job.phi, "--phi");
  const auto mu = ctx.measure();
  const auto res = b_norm(phi, ctx.g(), ctx.h(), mu, sdp_options(ctx.job));
  Json body;
  body["value"] = res.value;
  body["method"] = res.method;
  body["validated"] = res.validated;
  if (res.witness) {
    Json w;
    w["representation"] = io::representation_to_json(res.witness->rep, ctx.g());
    w["alpha"] = io::section_to_json(res.witness->alpha, ctx.g());
    w["beta"] = io::section_to_json(res.witness->beta, ctx.g());
    const auto realized = coefficient_function(res.witness->alpha, res.witness->beta, res.witness->rep, ctx.g());
    w["maxDeviation"] = max_abs_difference(realized, phi);
    w["alphaSup"] = sup_norm(res.witness->alpha, mu);
    w["betaSup"] = sup_norm(res.witness->beta, mu);
    body["witness"] = std::move(w);
  }
  if (res.sdp) body["sdp"] = sdp_to_json(*res.sdp);
  return body;
}

inline Json cmd_schur_norm(const JobSpec& job) {
  const auto a = io::parse_matrix(io::read_json_file(require_path(job.phi, "--phi", job.command)));
  const auto sol = schur_cb_norm_sdp(SdpProblem(a), sdp_options(job));
  Json body = sdp_to_json(sol);
  body["cbLowerBound"] = cb_lower_bound(a, job.samples.value_or(1000), job.seed);
  if (sol.converged) {
    const auto fac = extract_factorization(sol, a);
    Json xi = Json::array(), eta = Json::array();
    for (const auto& v : fac.xi) xi.push_back(io::to_json(v));
    for (const auto& v : fac.eta) eta.push_back(io::to_json(v));
    body["xi"] = std::move(xi);
    body["eta"] = std::move(eta);
    body["reconstructionError"] = (fac.gram() - a).cwiseAbs().maxCoeff();
  }
  return body;
}

inline Json cmd_duality_check(const Context& ctx) {
  require_valid(ctx);
  const auto mu = ctx.measure();
  auto loaded = ctx.representation(mu);
  require_valid_action(ctx, loaded.triple);
  Rng rng(ctx.job.seed);
  if (!loaded.alpha || !loaded.beta) {
    if (ctx.job.rep) throw std::invalid_argument("duality-check requires 'alpha' and 'beta' in the --rep file");
    loaded.alpha = BundleSection::zero(loaded.triple.bundle);
    loaded.beta = BundleSection::zero(loaded.triple.bundle);
    for (auto& b : loaded.alpha->blocks) b = rng.gaussian_vector(b.size());
    for (auto& b : loaded.beta->blocks) b = rng.gaussian_vector(b.size());
  }
  const auto phi = ctx.job.phi ? ctx.function(ctx.job.phi, "--phi")
                               : coefficient_function(*loaded.alpha, *loaded.beta, loaded.triple, ctx.g());
  const auto f = ctx.function(ctx.job.f, "--f");
  const auto a = loaded.a.value_or(std::vector<Complex>(ctx.g().unit_count(), 1.0));
  const auto b = loaded.b.value_or(std::vector<Complex>(ctx.g().unit_count(), 1.0));
  const auto p = duality_pairing(phi, f, a, b, loaded.triple, *loaded.alpha, *loaded.beta, ctx.g(), ctx.h());
  Json body;
  body["direct"] = io::to_json(p.direct);
  body["representation"] = io::to_json(p.representation);
  body["difference"] = p.difference;
  return body;
}

inline Json cmd_decompose_measure(const Context& ctx) {
  const auto mu = ctx.measure();
  const auto mu_prime = ctx.measure2();
  const auto dec = lebesgue_decompose(mu_prime, mu);
  Json body;
  body["singular"] = io::measure_to_json(dec.singular, ctx.g())["measure"];
  body["absContinuous"] = io::measure_to_json(dec.abs_continuous, ctx.g())["measure"];
  const bool valid = validate_groupoid(ctx.g()).ok();
  if (valid) {
    body["singularQuasiInvariant"] = is_quasi_invariant(ctx.g(), ctx.h(), dec.singular).holds;
    body["absContinuousQuasiInvariant"] = is_quasi_invariant(ctx.g(), ctx.h(), dec.abs_continuous).holds;
  }
  return body;
}

inline Json cmd_intertwiner_check(const Context& ctx) {
  require_valid(ctx);
  const auto mu = ctx.measure();
  const auto loaded = ctx.representation(mu);
  require_valid_action(ctx, loaded.triple);
  const auto mu_prime = ctx.measure2();
  const auto f = ctx.function(ctx.job.f, "--f");
  Json body;
  body["deviation"] = intertwiner_check(loaded.triple, ctx.g(), ctx.h(), mu_prime, f);
  return body;
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace detail

/// Aligned two-column rendering of a JSON result.
inline std::string render_table(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream os;
  for (const auto& r : rows) os << std::left << std::setw(static_cast<int>(width)) << r.first << "  " << r.second << '\n';
  return os.str();
}

inline std::string render(const Json& body, const std::string& format) {
  if (format == "table") return render_table(body);
  return body.dump(2) + "\n";
}

inline RunResult run_selftest(const JobSpec& job) {
  std::ostringstream progress;
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = selftest::run_all(&progress);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = total <= selftest::kSuiteBudgetSeconds;
  for (const auto& r : results) all = all && r.passed;
  RunResult out;
  if (job.format == "json") {
    Json body;
    body["seed"] = job.seed;
    Json arr = Json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                     {"budgetSeconds", r.budget_seconds}, {"detail", r.detail}});
    body["criteria"] = std::move(arr);
    body["totalSeconds"] = total;
    body["passed"] = all;
    out.out = progress.str() + body.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << progress.str() << (all ? "PASS" : "FAIL") << "  all criteria  [" << std::fixed << std::setprecision(2) << total
       << " s / " << std::setprecision(0) << selftest::kSuiteBudgetSeconds << " s]\n";
    out.out = os.str();
  }
  out.exit_code = all ? 0 : 2;
  return out;
}

inline RunResult run(const JobSpec& job) {
  RunResult out;
  try {
    if (job.format != "json" && job.format != "table") throw std::invalid_argument("--format must be json or table");
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
      throw std::invalid_argument("unknown command '" + job.command + "'");
    if (job.tol && !(*job.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (job.command == "selftest") return run_selftest(job);

    Json body;
    body["command"] = job.command;
    body["seed"] = job.seed;
    Json result;
    if (job.command == "schur-norm") {
      result = detail::cmd_schur_norm(job);
    } else {
      const detail::Context ctx{job, io::parse_groupoid(io::read_json_file(
                                         detail::require_path(job.groupoid, "--groupoid", job.command)))};
      if (job.command == "validate") result = detail::cmd_validate(ctx);
      else if (job.command == "convolve") result = detail::cmd_convolve(ctx);
      else if (job.command == "inorm") result = detail::cmd_inorm(ctx);
      else if (job.command == "modular") result = detail::cmd_modular(ctx);
      else if (job.command == "represent") result = detail::cmd_represent(ctx);
      else if (job.command == "cstar-norm") result = detail::cmd_cstar_norm(ctx);
      else if (job.command == "pd-check") result = detail::cmd_pd_check(ctx);
      else if (job.command == "coeff") result = detail::cmd_coeff(ctx);
      else if (job.command == "bnorm") result = detail::cmd_bnorm(ctx);
      else if (job.command == "duality-check") result = detail::cmd_duality_check(ctx);
      else if (job.command == "decompose-measure") result = detail::cmd_decompose_measure(ctx);
      else result = detail::cmd_intertwiner_check(ctx);
    }
    for (auto it = result.begin(); it != result.end(); ++it) body[it.key()] = it.value();
    out.out = render(body, job.format);
  } catch (const detail::ValidationFailure& v) {
    Json body;
    body["command"] = job.command;
    body["seed"] = job.seed;
    for (auto it = v.body.begin(); it != v.body.end(); ++it) body[it.key()] = it.value();
    out.exit_code = 2;
    out.out = render(body, job.format);
    out.err = "error: " + v.message + "\n";
  } catch (const std::domain_error& e) {
    out.exit_code = 2;
    out.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.err = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace gfs::cli

#endif  // GFS_CLI_HPP
