// Batch front end: correlator tables, invariant verification, lattice
// Schwinger-term sweeps, zone-structure tables and exchange-phase tables.
// All computation goes through the C API in thirring_c.h.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
// 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thirring/thirring_c.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(th_status s) {
  switch (s) {
    case TH_OK:
      return kExitOk;
    case TH_ERR_INVALID_ARGUMENT:
    case TH_ERR_PARSE:
    case TH_ERR_CONFIG_TOO_LARGE:
      return kExitBadConfig;
    default:
      return kExitNumerical;
  }
}

void check(th_status s) {
  if (s != TH_OK) throw CliError{exit_code_for(s), th_last_error_message()};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Grid {
  double lo, hi, step;
  std::vector<double> points() const {
    std::vector<double> xs;
    for (double x = lo; x <= hi + 1e-12 * std::max(1.0, std::abs(hi)); x += step)
      xs.push_back(x);
    return xs;
  }
};

Grid parse_grid(const std::string& text) {
  Grid g{};
  char colon1 = 0, colon2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.step) || colon1 != ':' ||
      colon2 != ':' || !(g.step > 0.0) || g.hi < g.lo)
    throw CliError{kExitBadConfig, "grid must be lo:hi:step with step > 0"};
  return g;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CliError{kExitBadConfig, "range must be N or LO:HI"};
  }
}

// Atomic file write (temp + rename); empty path writes to stdout.
void emit(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::string target = path;
  if (const char* dir = std::getenv("THIRRING_OUTPUT_DIR");
      dir && *dir && path.find('/') == std::string::npos)
    target = std::string(dir) + "/" + path;
  const std::string tmp = target + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw CliError{kExitBadConfig, "cannot write " + tmp};
    out << payload;
  }
  if (std::rename(tmp.c_str(), target.c_str()) != 0)
    throw CliError{kExitBadConfig, "cannot rename " + tmp};
}

struct OwnedTestFn {
  th_testfn* ptr = nullptr;
  ~OwnedTestFn() { th_testfn_free(ptr); }
};

void make_testfn(const std::string& descriptor, OwnedTestFn& out) {
  check(th_testfn_from_json(descriptor.c_str(), &out.ptr));
}

int run_correlator(double alpha, double beta, double eps,
                   const std::string& grid_text, const std::string& which,
                   const std::string& format, const std::string& out_path) {
  if (!(beta > 0.0)) throw CliError{kExitBadConfig, "--beta must be > 0"};
  if (!(eps > 0.0)) throw CliError{kExitBadConfig, "--eps must be > 0"};
  const Grid grid = parse_grid(grid_text);
  std::ostringstream csv;
  ordered_json rows = ordered_json::array();
  csv << "u,re,im\n";
  for (double u : grid.points()) {
    double re = 0.0, im = 0.0;
    if (which == "anyon")
      check(th_anyon_two_point(alpha, u, beta, eps, &re, &im));
    else if (which == "bare")
      check(th_bare_two_point(u, beta, eps, &re, &im));
    else if (which == "commutator")
      check(th_alpha_commutator(alpha, u, beta, eps, &re, &im));
    else
      throw CliError{kExitBadConfig, "--which must be anyon|bare|commutator"};
    csv << fmt(u) << ',' << fmt(re) << ',' << fmt(im) << '\n';
    rows.push_back({{"u", u}, {"re", re}, {"im", im}});
  }
  if (format == "csv")
    emit(out_path, csv.str());
  else
    emit(out_path,
         ordered_json{{"alpha", alpha}, {"beta", beta}, {"eps", eps},
                      {"which", which}, {"rows", rows}}
                 .dump(2) +
             "\n");
  return kExitOk;
}

int run_verify_cmd(const std::string& suite, const std::string& out_path) {
  char* report = nullptr;
  int all_passed = 0;
  check(th_run_verify(suite.empty() ? nullptr : suite.c_str(), &report,
                      &all_passed));
  std::string payload = report ? report : "[]";
  th_string_free(report);
  emit(out_path, payload + "\n");
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int run_lattice(const std::string& m_range, double L, double beta,
                const std::string& f_json, const std::string& g_json,
                const std::string& out_path) {
  auto [m_lo, m_hi] = parse_range(m_range);
  if (m_lo > m_hi) std::swap(m_lo, m_hi);
  if (m_lo < 0 || m_hi > 7)
    throw CliError{kExitBadConfig, "--M must lie in [0, 7] (Fock dimension cap)"};
  if (!(L > 0.0)) throw CliError{kExitBadConfig, "--L must be > 0"};

  const std::string f_descr =
      f_json.empty()
          ? std::string("{\"kind\":\"gaussian\",\"params\":{\"center\":0.0,"
                        "\"width\":" +
                        fmt(L / 10.0) + "}}")
          : f_json;
  const std::string g_descr =
      g_json.empty()
          ? std::string("{\"kind\":\"polygaussian\",\"params\":{\"coeffs\":[0.0,"
                        "1.0],\"center\":0.0,\"width\":" +
                        fmt(L / 10.0) + "}}")
          : g_json;
  OwnedTestFn f, g;
  make_testfn(f_descr, f);
  make_testfn(g_descr, g);

  ordered_json sweep = ordered_json::array();
  for (int M = m_lo; M <= m_hi; ++M) {
    double lre = 0.0, lim = 0.0, sig = 0.0, rel = 0.0;
    check(th_lattice_schwinger(L, M, beta, f.ptr, g.ptr, &lre, &lim, &sig, &rel));
    sweep.push_back({{"M", M},
                     {"lattice_value", {lre, lim}},
                     {"continuum_sigma", sig},
                     {"rel_error", rel}});
  }
  emit(out_path,
       ordered_json{{"L", L}, {"beta", beta}, {"sweep", sweep}}.dump(2) + "\n");
  return kExitOk;
}

int run_zone_table(long n, long nbar, const std::string& m_range,
                   const std::string& out_path) {
  auto [m_lo, m_hi] = parse_range(m_range);
  std::ostringstream csv;
  csv << "n,nbar,m,r,class\n";
  for (long m = m_lo; m <= m_hi; ++m) {
    double r = 0.0;
    int cls = 0;
    check(th_zone_statistics(n, nbar, m, &r, &cls));
    const char* name = cls == 0 ? "bosonic" : (cls == 1 ? "fermionic" : "anyonic");
    csv << n << ',' << nbar << ',' << m << ',' << fmt(r) << ',' << name << '\n';
  }
  emit(out_path, csv.str());
  return kExitOk;
}

int run_phases(const std::vector<double>& alphas, const std::vector<double>& ts,
               double beta, double eps, const std::string& out_path) {
  if (!(beta > 0.0)) throw CliError{kExitBadConfig, "--beta must be > 0"};
  ordered_json entries = ordered_json::array();
  for (double alpha : alphas) {
    double lambda = 0.0;
    int fermi = 0, bose = 0;
    long n = -1;
    check(th_coupling_statistics(alpha, &lambda, &fermi, &bose, &n));
    for (double t : ts) {
      double re = 0.0, im = 0.0;
      check(th_exchange_phase(alpha, t, eps, &re, &im));
      ordered_json e{{"alpha", alpha}, {"t", t},       {"phase", {re, im}},
                     {"lambda", lambda}, {"is_fermionic", fermi == 1},
                     {"is_bosonic", bose == 1}};
      if (fermi == 1) e["n"] = n;
      entries.push_back(e);
    }
  }
  emit(out_path,
       ordered_json{{"beta", beta}, {"eps", eps}, {"entries", entries}}.dump(2) +
           "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal bosonization toolkit"};
  app.set_version_flag("--version", th_version());
  app.set_config("--config", "", "plain key=value configuration file");
  app.require_subcommand(1);

  // correlator
  auto* correlator = app.add_subcommand(
      "correlator", "emit (u, Re, Im) tables of thermal correlators");
  correlator->configurable();
  double alpha = 0.0, beta = 0.0, eps = 1e-6;
  std::string grid_text, which = "anyon", format = "csv", out_path;
  correlator->add_option("--alpha", alpha, "statistics parameter α");
  correlator->add_option("--beta", beta, "inverse temperature")->required();
  correlator->add_option("--eps", eps, "iε regulator")->capture_default_str();
  correlator->add_option("--grid", grid_text, "u grid as lo:hi:step")->required();
  correlator->add_option("--which", which, "anyon|bare|commutator")->capture_default_str();
  correlator->add_option("--format", format, "csv|json")->capture_default_str();
  correlator->add_option("--out", out_path, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->configurable();
  std::string suite, verify_out;
  verify->add_option("--suite", suite, "single suite name (default: all)");
  verify->add_option("--out", verify_out, "output file (default stdout)");

  // lattice
  auto* lattice = app.add_subcommand(
      "lattice", "finite-mode Schwinger-term sweep against the continuum form");
  lattice->configurable();
  std::string m_range = "4:7", f_json, g_json, lattice_out;
  double L = 20.0, lat_beta = 5.0;
  lattice->add_option("--M", m_range, "mode cutoff M or range LO:HI")->capture_default_str();
  lattice->add_option("--L", L, "box length")->capture_default_str();
  lattice->add_option("--beta", lat_beta, "inverse temperature (any sign)")->capture_default_str();
  lattice->add_option("--f", f_json, "test function descriptor (JSON)");
  lattice->add_option("--g", g_json, "test function descriptor (JSON)");
  lattice->add_option("--out", lattice_out, "output file (default stdout)");

  // zone-table
  auto* zone = app.add_subcommand("zone-table",
                                  "crossed-product zone statistics table");
  zone->configurable();
  long zn = 0, znbar = 1;
  std::string zm_range = "-4:4", zone_out;
  zone->add_option("--n", zn, "zone parameter n ≥ 0")->capture_default_str();
  zone->add_option("--nbar", znbar, "zone parameter n̄ ≥ 1")->capture_default_str();
  zone->add_option("--m", zm_range, "charge class range LO:HI")->capture_default_str();
  zone->add_option("--out", zone_out, "output file (default stdout)");

  // phases
  auto* phases = app.add_subcommand("phases", "exchange-phase tables (JSON)");
  phases->configurable();
  std::vector<double> ph_alphas, ph_ts{1.0};
  double ph_beta = 0.0, ph_eps = 1e-6;
  phases->add_option("--alpha", ph_alphas, "statistics parameters")->required();
  phases->add_option("--t", ph_ts, "separations")->capture_default_str();
  phases->add_option("--beta", ph_beta, "inverse temperature")->required();
  phases->add_option("--eps", ph_eps, "UV cutoff")->capture_default_str();
  phases->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (correlator->parsed())
      return run_correlator(alpha, beta, eps, grid_text, which, format, out_path);
    if (verify->parsed()) return run_verify_cmd(suite, verify_out);
    if (lattice->parsed())
      return run_lattice(m_range, L, lat_beta, f_json, g_json, lattice_out);
    if (zone->parsed()) return run_zone_table(zn, znbar, zm_range, zone_out);
    if (phases->parsed())
      return run_phases(ph_alphas, ph_ts, ph_beta, ph_eps, out_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitBadConfig;
}
