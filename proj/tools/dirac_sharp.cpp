// dirac_sharp: spectra, inequality verification and identity batteries.
//
//   dirac_sharp spectrum --n 3 --k 1 --mmax 4
//   dirac_sharp verify --suite all --n 3 --seed 7 --format json --out report.json
//   dirac_sharp identities --identity eq1 --n 2 --k 3
//
// Exit codes: 0 all rows pass, 1 a row failed or a computation threw, 2 bad configuration.
// Options may also come from a TOML/INI file given by --config; flags win over the file.

#include "dirac/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Options {
  dirac::RunConfig config;
  std::string format = "text";
};

void common(CLI::App& sub, Options& o, bool sampling) {
  auto& c = o.config;
  sub.add_option("--n", c.n, "sphere S^n / space R^n dimension");
  sub.add_option("--k", c.k, "operator order");
  sub.add_option("--format", o.format, "json, csv or text")->capture_default_str();
  sub.add_option("--out", c.out, "output file (default stdout)");
  if (!sampling) return;
  sub.add_option("--band", c.band_limit, "band limit of random fields")->capture_default_str();
  sub.add_option("--trials", c.trials, "random trials per row")->capture_default_str();
  sub.add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub.add_option("--tol-sphere-lower", c.tol.sphere_lower)->capture_default_str();
  sub.add_option("--tol-sphere-extremal", c.tol.sphere_extremal)->capture_default_str();
  sub.add_option("--tol-euclid-lower", c.tol.euclid_lower)->capture_default_str();
  sub.add_option("--tol-euclid-extremal", c.tol.euclid_extremal)->capture_default_str();
  sub.add_option("--tol-route", c.tol.route)->capture_default_str();
  sub.add_option("--tol-kernel", c.tol.kernel_check)->capture_default_str();
  sub.add_option("--tol-identity", c.tol.identity)->capture_default_str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw dirac::ConfigError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp L2 inequalities for Dirac-type operators on S^n and R^n"};
  app.set_version_flag("--version", dirac::tool_version());
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  Options o;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of D_S^(k) per degree");
  common(*spectrum, o, false);
  spectrum->add_option("--mmax", o.config.m_max, "largest degree");

  CLI::App* verify = app.add_subcommand("verify", "sphere, Euclidean and kernel inequality suites");
  common(*verify, o, true);
  verify->add_option("--suite", o.config.suite, "sphere, euclidean, kernels or all")->capture_default_str();

  CLI::App* identities = app.add_subcommand("identities", "operator identity battery");
  common(*identities, o, true);
  identities->add_option("--identity", o.config.identity, "one identity or all")->capture_default_str();
  identities->add_option("--map", o.config.map, "Moebius map for ahlfors: cayley, identity, translation")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  dirac::RunConfig& c = o.config;
  c.command = app.get_subcommands().front()->get_name();
  try {
    c.format = dirac::parse_format(o.format);
    dirac::validate(c);
    if (c.command == "spectrum") {
      const int mmax = c.m_max.value_or(dirac::default_mmax(*c.k, *c.n));
      emit(dirac::render_spectrum(c, dirac::spectrum_table(*c.k, *c.n, mmax)), c.out);
      return 0;
    }
    const dirac::VerificationReport report = dirac::run_report(c);
    emit(dirac::render_report(report), c.out);
    return report.pass() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
