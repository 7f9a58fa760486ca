// onsager: critical values, branch sweeps, density profiles and the property
// suite for the fast-diffusion Onsager free energy on S^d.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "onsager/energy.hpp"
#include "onsager/format.hpp"
#include "onsager/sweep.hpp"
#include "onsager/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Flags {
  int d = 2;
  double m = 0.5;
  double kappa = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  int steps = 50;
  int points = 181;
  std::string branch = "fully_supported";
  std::string out;
  std::string format;  // empty: json for critical, csv otherwise
  double rel_tol = 1e-10;
  double root_tol = 1e-12;
  bool log_grid = false;
  std::string fault = "none";
};

onsager::Tolerances tolerances(const Flags& f) { return {f.rel_tol, f.root_tol}; }

nlohmann::json optional_number(std::optional<double> x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

// Writes to --out, or standard output when it is empty.
template <class Writer>
void emit(const Flags& f, Writer&& write) {
  if (f.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw onsager::Error(onsager::ErrorKind::InvalidParam, "cannot open " + f.out + " for writing");
  write(file);
  if (!file) throw onsager::Error(onsager::ErrorKind::InvalidParam, "write to " + f.out + " failed");
}

int cmd_critical(const Flags& f) {
  const onsager::Regime regime = onsager::classify_regime(f.d, f.m);
  const onsager::CriticalSet c = onsager::critical_set_with_kappa_c(f.d, f.m, tolerances(f));
  nlohmann::ordered_json j;
  j["d"] = f.d;
  j["m"] = f.m;
  j["regime"] = std::string(onsager::to_string(regime.tag));
  j["kappa1"] = c.kappa1;
  j["kappa2"] = optional_number(c.kappa2);
  j["kappa3"] = optional_number(c.kappa3);
  j["alpha_bar"] = optional_number(c.alpha_bar);
  j["kappa_c"] = optional_number(c.kappa_c);
  emit(f, [&](std::ostream& os) {
    if (f.format == "json") {
      os << j.dump() << '\n';
      return;
    }
    os << "d,m,regime,kappa1,kappa2,kappa3,alpha_bar,kappa_c\n";
    auto cell = [](std::optional<double> x) { return x ? onsager::format_double(*x) : std::string(); };
    os << f.d << ',' << onsager::format_double(f.m) << ',' << onsager::to_string(regime.tag) << ','
       << onsager::format_double(c.kappa1) << ',' << cell(c.kappa2) << ',' << cell(c.kappa3) << ','
       << cell(c.alpha_bar) << ',' << cell(c.kappa_c) << '\n';
  });
  return kExitOk;
}

int cmd_sweep(const Flags& f) {
  onsager::SweepOptions options;
  options.d = f.d;
  options.m = f.m;
  options.kappa_min = f.kappa_min;
  options.kappa_max = f.kappa_max;
  options.steps = f.steps;
  options.log_grid = f.log_grid;
  options.tol = tolerances(f);
  const auto rows = onsager::sweep_parallel(options);
  emit(f, [&](std::ostream& os) {
    if (f.format == "csv") {
      onsager::write_sweep_csv(os, rows);
      return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"kappa", r.kappa},
                     {"branch", std::string(onsager::to_string(r.branch))},
                     {"alpha", finite_or_null(r.alpha)},
                     {"eta", finite_or_null(r.eta)},
                     {"com_norm", finite_or_null(r.com_norm)},
                     {"energy", finite_or_null(r.energy)}});
    }
    os << arr.dump() << '\n';
  });
  std::cerr << "sweep: " << rows.size() << " rows, " << onsager::count_failures(rows) << " warnings\n";
  return kExitOk;
}

int cmd_profile(const Flags& f) {
  const auto branch = onsager::parse_profile_branch(f.branch);
  const auto samples = onsager::density_profile(f.d, f.m, f.kappa, f.points, branch, tolerances(f));
  emit(f, [&](std::ostream& os) {
    if (f.format == "csv") {
      onsager::write_profile_csv(os, samples);
      return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [theta, density] : samples) arr.push_back({{"theta", theta}, {"density", finite_or_null(density)}});
    os << arr.dump() << '\n';
  });
  return kExitOk;
}

int cmd_verify(const Flags& f) {
  onsager::VerifyOptions options;
  options.rel_tol = f.rel_tol;
  options.root_tol = f.root_tol;
  if (f.fault == "h-sign") options.fault = onsager::FaultInjection::HSign;
  const auto results = onsager::run_verification(options);
  bool ok = false;
  emit(f, [&](std::ostream& os) { ok = onsager::print_report(os, results); });
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria and phase transitions of the fast-diffusion Onsager model on S^d"};
  app.require_subcommand(1);
  Flags f;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--d", f.d, "sphere dimension (>= 1)")->required();
    sub->add_option("--m", f.m, "diffusion exponent in (0, 1)")->required();
  };
  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance")->capture_default_str();
    sub->add_option("--root-tol", f.root_tol, "root-finding tolerance")->capture_default_str();
    sub->add_option("--out", f.out, "output path (default: standard output)");
    if (with_format) {
      sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
  };

  auto* critical = app.add_subcommand("critical", "kappa1, kappa2, kappa3, alpha_bar and kappa_c as JSON");
  add_model(critical);
  add_common(critical, true);

  auto* sweep = app.add_subcommand("sweep", "every branch on a kappa grid, as CSV");
  add_model(sweep);
  add_common(sweep, true);
  sweep->add_option("--kappa-min", f.kappa_min, "smallest kappa")->required();
  sweep->add_option("--kappa-max", f.kappa_max, "largest kappa")->required();
  sweep->add_option("--steps", f.steps, "number of kappa samples, endpoints included")->capture_default_str();
  sweep->add_flag("--log-grid", f.log_grid, "log-spaced instead of linear grid");

  auto* profile = app.add_subcommand("profile", "density against theta for one branch");
  add_model(profile);
  add_common(profile, true);
  profile->add_option("--kappa", f.kappa, "interaction strength")->required();
  profile->add_option("--points", f.points, "theta samples on [0, pi]")->capture_default_str();
  profile->add_option("--branch", f.branch, "fully_supported or rho_bar")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify, false);
  verify->add_option("--inject-fault", f.fault, "deliberate bug for suite sensitivity tests")
      ->check(CLI::IsMember({"none", "h-sign"}))
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (f.format.empty()) f.format = critical->parsed() ? "json" : "csv";

  try {
    if (critical->parsed()) return cmd_critical(f);
    if (sweep->parsed()) return cmd_sweep(f);
    if (profile->parsed()) return cmd_profile(f);
    return cmd_verify(f);
  } catch (const std::exception& e) {
    std::cerr << "onsager: " << e.what() << '\n';
    return kExitUsage;
  }
}
