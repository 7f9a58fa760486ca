#include "onsager/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "onsager/energy.hpp"
#include "onsager/equilibria.hpp"
#include "onsager/format.hpp"
#include "onsager/quadrature.hpp"

namespace onsager {

namespace {

struct Pair {
  int d;
  double m;
};

constexpr Pair kReference[] = {{2, 0.5}, {3, 0.25}, {5, 0.3}};
constexpr double kTabulatedKappa1[] = {5.3174, 9.3648, 19.9199};
constexpr double kTabulatedKappa2At3 = 12.4453;

std::string pair_text(Pair p) {
  std::ostringstream os;
  os << "(d=" << p.d << ", m=" << p.m << ")";
  return os.str();
}

std::string num(double x) { return format_double(x); }

class Suite {
 public:
  explicit Suite(const VerifyOptions& options)
      : options_(options),
        tol_{std::min(options.rel_tol, Tolerances{}.rel_tol), std::min(options.root_tol, Tolerances{}.root_tol)} {}

  std::vector<CheckResult> run() {
    kappa1_reference();
    kappa_ratio();
    kappa2_oracles();
    s_bar_oracles();
    h_limit();
    h_monotone();
    branch_moments();
    energy_routes();
    slope_identities();
    trial_functional();
    classification();
    return std::move(results_);
  }

 private:
  double loosen(double threshold) const { return std::max(threshold, options_.rel_tol); }

  double h(double eta, int d, double m) const {
    const double value = H(eta, d, m, tol_);
    return options_.fault == FaultInjection::HSign ? -value : value;
  }

  // Runs body, which returns the worst error and may add notes; solver
  // errors count as a failure with the message attached.
  void check(const std::string& name, double threshold, const std::function<double(std::vector<std::string>&)>& body) {
    CheckResult r;
    r.name = name;
    r.threshold = threshold;
    try {
      r.measured = body(r.notes);
      r.pass = r.measured <= r.threshold;
    } catch (const std::exception& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.notes.push_back(std::string("error: ") + e.what());
    }
    results_.push_back(std::move(r));
  }

  void kappa1_reference() {
    check("kappa1 matches the reference values", loosen(5e-4), [&](auto& notes) {
      double worst = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double k1 = kappa1(kReference[i].d, kReference[i].m);
        notes.push_back(pair_text(kReference[i]) + " kappa1 = " + num(k1) + ", reference " + num(kTabulatedKappa1[i]));
        worst = std::max(worst, std::abs(k1 - kTabulatedKappa1[i]));
      }
      return worst;
    });
  }

  void kappa_ratio() {
    check("kappa3 / kappa2 at (d=5, m=0.3) is 0.88502", loosen(1e-3), [&](auto& notes) {
      const double ratio = kappa3_and_alpha_bar(5, 0.3).kappa3 / kappa2(5, 0.3);
      notes.push_back("ratio = " + num(ratio));
      return std::abs(ratio - 0.88502);
    });
  }

  void kappa2_oracles() {
    check("kappa2 closed form agrees with 1/H(1) by quadrature", loosen(1e-8), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : {Pair{3, 0.25}, Pair{4, 0.2}, Pair{5, 0.3}}) {
        const double closed = kappa2(p.d, p.m);
        const double quad = kappa2_quadrature(p.d, p.m, tol_);
        const double rel = std::abs(closed - quad) / closed;
        notes.push_back(pair_text(p) + " closed form " + num(closed) + ", quadrature " + num(quad) +
                        ", rel diff " + num(rel));
        worst = std::max(worst, rel);
        if (p.d == 3) {
          notes.push_back("  tabulated value " + num(kTabulatedKappa2At3) +
                          " disagrees with both oracles (rel diff " +
                          num(std::abs(closed - kTabulatedKappa2At3) / closed) + "); not used as a reference");
        }
      }
      return worst;
    });
  }

  void s_bar_oracles() {
    check("s_bar closed form agrees with I1(1)/I0(1)", loosen(1e-8), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : {Pair{3, 0.25}, Pair{4, 0.4}, Pair{5, 0.55}, Pair{4, 0.2}, Pair{5, 0.3}}) {
        const double closed = s_bar(p.d, p.m);
        const double quad = s_bar_quadrature(p.d, p.m, tol_);
        const double rel = std::abs(closed - quad) / closed;
        notes.push_back(pair_text(p) + " " + std::string(to_string(classify_regime(p.d, p.m).tag)) + " s_bar " +
                        num(closed) + ", rel diff " + num(rel));
        worst = std::max(worst, rel);
      }
      return worst;
    });
  }

  void h_limit() {
    check("H(1e6) kappa1 -> 1", loosen(1e-4), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : kReference) {
        const double value = h(1e6, p.d, p.m) * kappa1(p.d, p.m);
        notes.push_back(pair_text(p) + " H(1e6) kappa1 = " + num(value));
        worst = std::max(worst, std::abs(value - 1.0));
      }
      return worst;
    });
  }

  void h_monotone() {
    // Measured value: 1 if any consecutive pair is out of order, else 0.
    check("H strictly monotone on 20 log-spaced eta in (1, 1e4]", 0.0, [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : {Pair{2, 0.5}, Pair{3, 0.25}, Pair{5, 0.3}, Pair{4, 0.4}, Pair{4, 0.2}}) {
        const RegimeTag tag = classify_regime(p.d, p.m).tag;
        const double direction = tag == RegimeTag::CaseIII ? -1.0 : 1.0;
        double prev = h(std::pow(10.0, 0.2), p.d, p.m);
        double min_step = std::numeric_limits<double>::infinity();
        for (int i = 2; i <= 20; ++i) {
          const double value = h(std::pow(10.0, 0.2 * i), p.d, p.m);
          min_step = std::min(min_step, direction * (value - prev));
          prev = value;
        }
        notes.push_back(pair_text(p) + " " + (direction > 0 ? "increasing" : "decreasing") +
                        ", smallest signed step " + num(min_step));
        if (!(min_step > 0.0)) worst = 1.0;
      }
      return worst;
    });
  }

  static std::vector<double> window_samples(int d, double m, int count) {
    const KappaWindow w = fully_supported_window(d, m);
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
      out.push_back(std::isinf(w.hi) ? w.lo * (1.0 + 0.25 * (k + 1)) : w.lo + (w.hi - w.lo) * (k + 0.5) / count);
    }
    return out;
  }

  void branch_moments() {
    check("rho_kappa has unit mass and first moment s", loosen(1e-8), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : kReference) {
        const double dwd = sphere_geometry(p.d).area_Sdm1;
        double pair_worst = 0.0;
        for (double kappa : window_samples(p.d, p.m, 10)) {
          const FullySupportedState state = fully_supported_state(kappa, p.d, p.m, tol_);
          auto moment = [&](int power) {
            auto f = [&](double t) {
              return rho_kappa_density(state, t, p.d, p.m) * std::pow(std::cos(t), power) *
                     std::pow(std::sin(t), p.d - 1);
            };
            return dwd * gauss_kronrod(f, 0.0, std::numbers::pi, 1e-13, 1e-15).value;
          };
          pair_worst = std::max({pair_worst, std::abs(moment(0) - 1.0), std::abs(moment(1) - state.s)});
        }
        notes.push_back(pair_text(p) + " worst " + num(pair_worst));
        worst = std::max(worst, pair_worst);
      }
      return worst;
    });
  }

  void energy_routes() {
    check("E[rho_kappa] by quadrature equals kappa/2 - g1 g2", loosen(1e-8), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : kReference) {
        for (double kappa : window_samples(p.d, p.m, 4)) {
          const auto e = energy_fully_supported_routes(fully_supported_state(kappa, p.d, p.m, tol_), p.d, p.m, tol_);
          worst = std::max(worst, std::abs(e.direct - e.identity) / std::max(1.0, std::abs(e.direct)));
        }
        notes.push_back(pair_text(p) + " worst so far " + num(worst));
      }
      return worst;
    });
  }

  void slope_identities() {
    check("dE/dkappa identities by central differences", loosen(1e-4), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : kReference) {
        for (double kappa : window_samples(p.d, p.m, 5)) {
          const double step = 1e-5 * kappa;
          auto g = [&](double k) { return g1g2_gap(solve_gap(k, p.d, p.m, tol_), p.d, p.m, tol_).value; };
          const double fd = (g(kappa + step) - g(kappa - step)) / (2.0 * step);
          const double s = fully_supported_state(kappa, p.d, p.m, tol_).s;
          worst = std::max(worst, std::abs(fd - 0.5 * s * s) / (0.5 * s * s));
        }
        notes.push_back(pair_text(p) + " g1 g2 slope, worst so far " + num(worst));
      }
      for (Pair p : {Pair{3, 0.25}, Pair{5, 0.3}}) {
        const CriticalSet c = critical_set(p.d, p.m);
        const double start = c.kappa3 ? *c.kappa3 : *c.kappa2;
        for (int k = 1; k <= 5; ++k) {
          const double kappa = start * (1.0 + 0.1 * k);
          const double step = 1e-5 * kappa;
          auto gap = [&](double kk) {
            return energy_uniform(kk, p.d, p.m) - *energy_singular_upper(kk, p.d, p.m, tol_);
          };
          const double fd = (gap(kappa + step) - gap(kappa - step)) / (2.0 * step);
          const double com = singular_com_norm(alpha_roots(kappa, p.d, p.m, tol_).values.back(), p.d, p.m);
          worst = std::max(worst, std::abs(fd - 0.5 * com * com) / (0.5 * com * com));
        }
        notes.push_back(pair_text(p) + " uniform - singular slope, worst so far " + num(worst));
      }
      return worst;
    });
  }

  void trial_functional() {
    check("F[<x, e>] equals (d+1)/|S^d|", loosen(1e-10), [&](auto& notes) {
      double worst = 0.0;
      for (Pair p : kReference) {
        const SecondVariation sv = second_variation_gap(1.0, p.d, p.m, tol_);
        worst = std::max(worst, std::abs(sv.trial_functional - sv.infimum_functional) / sv.infimum_functional);
        worst = std::max(worst, std::abs(sv.kappa_from_trial - kappa1(p.d, p.m)) / kappa1(p.d, p.m));
      }
      notes.push_back("also m |S^d|^{2-m} F reproduces kappa1");
      return worst;
    });
  }

  void classification() {
    // Measured value: number of grid points where the tag differs from the
    // argmin, plus one per transition that is not bracketed.
    check("classify_minimizer matches the argmin on 50-point grids", 0.0, [&](auto& notes) {
      double mismatches = 0.0;
      for (Pair p : kReference) {
        const CriticalSet c = critical_set_with_kappa_c(p.d, p.m, tol_);
        const RegimeTag tag = classify_regime(p.d, p.m).tag;
        double lo = 0.5 * c.kappa1;
        double hi = 2.0 * c.kappa1;
        if (tag == RegimeTag::CaseII) hi = 1.5 * *c.kappa2;
        if (tag == RegimeTag::CaseIII) {
          lo = 0.8 * *c.kappa3;
          hi = 1.3 * c.kappa1;
        }
        std::vector<double> grid;
        std::vector<Branch> tags;
        for (int i = 0; i < 50; ++i) {
          const double kappa = lo + (hi - lo) * i / 49.0;
          const EnergyReport report = classify_minimizer(kappa, p.d, p.m, c, tol_);
          Branch best = Branch::Uniform;
          double best_e = report.e_uniform;
          for (auto [branch, e] : {std::pair{Branch::FullySupported, report.e_fully_supported},
                                   std::pair{Branch::SingularUpper, report.e_singular_upper},
                                   std::pair{Branch::SingularLower, report.e_singular_lower}}) {
            if (e && *e < best_e) {
              best_e = *e;
              best = branch;
            }
          }
          if (best != report.minimizer) mismatches += 1.0;
          grid.push_back(kappa);
          tags.push_back(report.minimizer);
        }
        auto bracketed = [&](Branch from, Branch to, double target) {
          for (std::size_t i = 0; i + 1 < tags.size(); ++i) {
            if (tags[i] == from && tags[i + 1] == to) return grid[i] <= target && target <= grid[i + 1];
          }
          return false;
        };
        std::ostringstream os;
        os << pair_text(p) << " transitions:";
        auto expect = [&](Branch from, Branch to, double target, const char* label) {
          const bool ok = bracketed(from, to, target);
          if (!ok) mismatches += 1.0;
          os << ' ' << label << " = " << num(target) << (ok ? " bracketed" : " NOT bracketed");
        };
        if (tag != RegimeTag::CaseIII) expect(Branch::Uniform, Branch::FullySupported, c.kappa1, "kappa1");
        if (tag == RegimeTag::CaseII) expect(Branch::FullySupported, Branch::SingularUpper, *c.kappa2, "kappa2");
        if (tag == RegimeTag::CaseIII) {
          expect(Branch::Uniform, Branch::SingularUpper, *c.kappa_c, "kappa_c");
          if (!(*c.kappa_c > *c.kappa3 && *c.kappa_c < c.kappa1)) mismatches += 1.0;
        }
        notes.push_back(os.str());
      }
      return mismatches;
    });
  }

  VerifyOptions options_;
  Tolerances tol_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  if (!(options.rel_tol > 0.0) || !(options.root_tol > 0.0)) {
    throw Error(ErrorKind::InvalidParam, "tolerance overrides must be positive");
  }
  return Suite(options).run();
}

bool print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.pass;
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  (measured " << format_double(r.measured) << ", threshold "
        << format_double(r.threshold) << ")\n";
    for (const std::string& note : r.notes) out << "    " << note << '\n';
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all;
}

}  // namespace onsager
