#include "dirac/report.hpp"

#include "dirac/riesz.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#ifndef DIRAC_VERSION
#define DIRAC_VERSION "0.0.0"
#endif

namespace dirac {

namespace {

using ordered = nlohmann::ordered_json;

// Pulled-back fields are expanded symbolically per trial; a handful already pins
// the two routes against each other at 1e-10.
constexpr int kRouteTrials = 4;

constexpr int kMaxVerifyN = 4;
constexpr int kMaxIdentityN = 4;

const char* format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "text";
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<int> k_range(const RunConfig& c, int n) {
  if (c.k) return {*c.k};
  std::vector<int> ks;
  for (int k = 1; k <= std::min(kMaxKernelOrder, std::max(3, n)); ++k) ks.push_back(k);
  return ks;
}

bool breakdown(int n, int k) { return n % 2 == 0 && k >= n; }

ordered tolerances_json(const Tolerances& t) {
  ordered j;
  j["sphere_lower"] = t.sphere_lower;
  j["sphere_extremal"] = t.sphere_extremal;
  j["euclid_lower"] = t.euclid_lower;
  j["euclid_extremal"] = t.euclid_extremal;
  j["route"] = t.route;
  j["kernel"] = t.kernel_check;
  j["identity"] = t.identity;
  return j;
}

ordered config_json(const RunConfig& c) {
  ordered j;
  j["command"] = c.command;
  j["n"] = c.n ? ordered(*c.n) : ordered(nullptr);
  j["k"] = c.k ? ordered(*c.k) : ordered(nullptr);
  if (c.command == "spectrum") {
    j["mmax"] = c.m_max ? ordered(*c.m_max) : ordered(nullptr);
  } else {
    j["band"] = c.band_limit;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
  }
  if (c.command == "verify") j["suite"] = c.suite;
  if (c.command == "identities") {
    j["identity"] = c.identity;
    j["map"] = c.map;
  }
  if (c.command != "spectrum") j["tolerances"] = tolerances_json(c.tol);
  j["format"] = format_name(c.format);
  j["out"] = c.out;
  return j;
}

ordered header(const RunConfig& c) {
  ordered j;
  j["schema"] = kReportSchema;
  j["tool"] = "dirac_sharp";
  j["version"] = tool_version();
  j["config"] = config_json(c);
  return j;
}

ordered row_json(const ReportRow& r) {
  ordered j;
  j["id"] = r.id;
  j["n"] = r.n;
  j["k"] = r.k;
  j["source"] = r.source;
  j["constant"] = r.constant;
  j["ratio_min"] = r.ratio_min;
  j["ratio_extremal"] = r.ratio_extremal;
  j["ratio_max"] = r.ratio_max;
  j["quadrature_error"] = r.quadrature_error;
  j["trials"] = r.trials;
  j["trivial"] = r.trivial;
  j["pass"] = r.recompute_pass();
  ordered checks = ordered::array();
  for (const Check& ch : r.checks)
    checks.push_back({{"name", ch.name}, {"value", ch.value}, {"relation", ch.upper ? "<=" : ">="},
                      {"limit", ch.limit}, {"holds", ch.holds()}});
  j["checks"] = std::move(checks);
  j["note"] = r.note;
  return j;
}

std::string failed_checks(const ReportRow& r) {
  std::string s;
  for (const Check& ch : r.checks)
    if (!ch.holds()) s += (s.empty() ? "" : "; ") + ch.name;
  return s;
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw ConfigError("unknown format '" + s + "'");
}

std::string tool_version() { return DIRAC_VERSION; }

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  if (c.command == "spectrum") {
    need(c.n.has_value() && c.k.has_value(), "spectrum needs --n and --k");
    need(*c.n >= 1 && *c.n <= 7, "spectrum supports 1 <= n <= 7");
    need(*c.k >= 1 && *c.k <= 12, "spectrum supports 1 <= k <= 12");
    need(!c.m_max || (*c.m_max >= 0 && *c.m_max <= 64), "--mmax must lie in [0, 64]");
    return;
  }
  need(c.trials >= 0, "--trials must be >= 0");
  need(c.band_limit >= 0 && c.band_limit <= 6, "--band must lie in [0, 6]");
  need(!c.k || (*c.k >= 1 && *c.k <= kMaxKernelOrder), "--k must lie in [1, 6]");
  const auto positive = {c.tol.sphere_lower, c.tol.sphere_extremal, c.tol.euclid_lower, c.tol.euclid_extremal,
                         c.tol.route,        c.tol.kernel_check,    c.tol.identity};
  need(std::all_of(positive.begin(), positive.end(), [](double t) { return t >= 0 && std::isfinite(t); }),
       "tolerances must be finite and >= 0");
  if (c.command == "verify") {
    need(c.suite == "sphere" || c.suite == "euclidean" || c.suite == "kernels" || c.suite == "all",
         "unknown suite '" + c.suite + "'");
    need(!c.n || (*c.n >= 1 && *c.n <= kMaxVerifyN), "verify supports 1 <= n <= 4");
    if (c.suite == "euclidean" || c.suite == "kernels") need(!c.n || *c.n >= 2, "the " + c.suite + " suite needs n >= 2");
    return;
  }
  if (c.command == "identities") {
    const auto& names = identity_names();
    need(c.identity == "all" || std::find(names.begin(), names.end(), c.identity) != names.end(),
         "unknown identity '" + c.identity + "'");
    need(c.map == "cayley" || c.map == "identity" || c.map == "translation", "unknown map '" + c.map + "'");
    need(!c.n || (*c.n >= 2 && *c.n <= kMaxIdentityN), "identities support 2 <= n <= 4");
    return;
  }
  throw ConfigError("unknown command '" + c.command + "'");
}

std::vector<RowJob> plan_verify(const RunConfig& c) {
  validate(c);
  const bool sphere = c.suite == "sphere" || c.suite == "all";
  const bool euclid = c.suite == "euclidean" || c.suite == "all";
  const bool kernels = c.suite == "kernels" || c.suite == "all";
  const std::vector<int> ns = c.n ? std::vector<int>{*c.n} : std::vector<int>{2, 3};
  const Tolerances tol = c.tol;
  const std::uint64_t seed = c.seed;
  const int trials = c.trials, band = c.band_limit;
  std::vector<RowJob> jobs;
  for (int n : ns) {
    for (int k : k_range(c, n)) {
      if (sphere) {
        jobs.push_back([=] { return verify_sphere_inequality(k, n, trials, band, seed, tol); });
        if (k == 1 && (n == 2 || n == 3)) jobs.push_back([=] { return verify_c1_kernel(n, band, seed); });
      }
      if (n < 2) continue;
      if (euclid) {
        for (EuclidSource s : {EuclidSource::pullback_extremal, EuclidSource::pullback_random, EuclidSource::random_rational})
          jobs.push_back([=] { return verify_euclidean_inequality(k, n, trials, s, seed, tol); });
        const int route_trials = std::min(trials, kRouteTrials);
        jobs.push_back([=] { return verify_route_equivalence(k, n, route_trials, seed, tol); });
      }
      if ((euclid || kernels) && breakdown(n, k)) jobs.push_back([=] { return verify_breakdown(n, k); });
      if (kernels && (n == 2 || n == 3) && k <= max_kernel_order(n)) {
        jobs.push_back([=] { return verify_kernel_inequality(k, n, trials, seed, 50.0, tol); });
        jobs.push_back([=] { return verify_kernel_conformal(k, n, tol); });
      }
    }
    if (kernels && n >= 2) jobs.push_back([=] { return verify_kernel_recursion(n, seed); });
  }
  return jobs;
}

std::vector<RowJob> plan_identities(const RunConfig& c) {
  validate(c);
  const std::vector<int> ns = c.n ? std::vector<int>{*c.n} : std::vector<int>{2, 3};
  const std::vector<int> ks = c.k ? std::vector<int>{*c.k} : std::vector<int>{1, 2, 3};
  const Tolerances tol = c.tol;
  const std::uint64_t seed = c.seed;
  const std::string map = c.map;
  std::vector<RowJob> jobs;
  for (int n : ns)
    for (const std::string& name : identity_names()) {
      if (c.identity != "all" && c.identity != name) continue;
      if (name == "eq1") {
        for (int k : ks) jobs.push_back([=] { return run_identity(name, n, k, seed, map, tol); });
      } else {
        jobs.push_back([=] { return run_identity(name, n, 0, seed, map, tol); });
      }
    }
  return jobs;
}

bool VerificationReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.recompute_pass(); });
}

VerificationReport run_report(const RunConfig& c) {
  VerificationReport r;
  r.config = c;
  const std::vector<RowJob> jobs = c.command == "identities" ? plan_identities(c) : plan_verify(c);
  r.rows = parallel_rows(static_cast<int>(jobs.size()), [&](int i) { return jobs[static_cast<std::size_t>(i)](); });
  for (ReportRow& row : r.rows) row.finalize();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string render_report(const VerificationReport& r) {
  const RunConfig& c = r.config;
  std::ostringstream out;
  switch (c.format) {
    case Format::json: {
      ordered j = header(c);
      j["pass"] = r.pass();
      ordered rows = ordered::array();
      ordered timing = ordered::array();
      double total = 0;
      for (const ReportRow& row : r.rows) {
        rows.push_back(row_json(row));
        timing.push_back({{"id", row.id}, {"n", row.n}, {"k", row.k}, {"seconds", row.seconds}});
        total += row.seconds;
      }
      j["rows"] = std::move(rows);
      j["timing"] = {{"row_seconds_total", total}, {"rows", std::move(timing)}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      out << "id,n,k,source,constant,ratio_min,ratio_extremal,ratio_max,quadrature_error,trials,trivial,pass,"
             "failed_checks,note\r\n";
      for (const ReportRow& row : r.rows)
        out << csv_field(row.id) << ',' << row.n << ',' << row.k << ',' << csv_field(row.source) << ','
            << num(row.constant) << ',' << num(row.ratio_min) << ',' << num(row.ratio_extremal) << ','
            << num(row.ratio_max) << ',' << num(row.quadrature_error) << ',' << row.trials << ','
            << (row.trivial ? "true" : "false") << ',' << (row.recompute_pass() ? "true" : "false") << ','
            << csv_field(failed_checks(row)) << ',' << csv_field(row.note) << "\r\n";
      break;
    }
    case Format::text: {
      int failed = 0;
      for (const ReportRow& row : r.rows) {
        const bool ok = row.recompute_pass();
        failed += ok ? 0 : 1;
        out << (row.trivial ? "TRIVIAL" : ok ? "PASS   " : "FAIL   ") << ' ' << row.id << " n=" << row.n
            << " k=" << row.k;
        if (!row.source.empty()) out << " [" << row.source << ']';
        if (row.constant != 0 || row.trivial) out << " constant=" << num(row.constant);
        if (row.constant != 0 && row.trials > 0) out << " min=" << num(row.ratio_min);
        if (row.constant != 0) out << " extremal=" << num(row.ratio_extremal);
        if (row.ratio_max != 0) out << " max=" << num(row.ratio_max);
        if (row.quadrature_error != 0) out << " qerr=" << num(row.quadrature_error);
        out << '\n';
        for (const Check& ch : row.checks)
          out << "    " << (ch.holds() ? "ok  " : "FAIL") << ' ' << ch.name << ": " << num(ch.value)
              << (ch.upper ? " <= " : " >= ") << num(ch.limit) << '\n';
        if (!row.note.empty()) out << "    " << row.note << '\n';
      }
      out << (failed == 0 ? "pass" : "FAIL") << ": " << r.rows.size() - static_cast<std::size_t>(failed) << '/'
          << r.rows.size() << " rows\n";
      break;
    }
  }
  return out.str();
}

std::string render_spectrum(const RunConfig& c, const SpectrumTable& t) {
  double min_abs = std::numeric_limits<double>::infinity();
  for (const SpectrumRow& row : t.rows)
    min_abs = std::min({min_abs, std::abs(row.lambda_plus), std::abs(row.lambda_minus)});
  std::ostringstream out;
  switch (c.format) {
    case Format::json: {
      ordered j = header(c);
      ordered rows = ordered::array();
      for (const SpectrumRow& row : t.rows)
        rows.push_back({{"m", row.m},
                        {"lambda_plus", row.lambda_plus},
                        {"lambda_minus", row.lambda_minus},
                        {"multiplicity", row.multiplicity}});
      j["n"] = t.n;
      j["k"] = t.k;
      j["min_abs_eigenvalue"] = min_abs;
      j["rows"] = std::move(rows);
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv: out << t.to_csv(); break;
    case Format::text: {
      out << "D_S^(" << t.k << ") on S^" << t.n << '\n';
      out << std::setw(4) << "m" << std::setw(26) << "lambda+" << std::setw(26) << "lambda-" << std::setw(14)
          << "multiplicity" << '\n';
      for (const SpectrumRow& row : t.rows)
        out << std::setw(4) << row.m << std::setw(26) << num(row.lambda_plus) << std::setw(26)
            << num(row.lambda_minus) << std::setw(14) << row.multiplicity << '\n';
      out << "|lambda|min = " << num(min_abs) << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace dirac
