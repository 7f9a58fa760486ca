// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance <path to onsager CLI> <scratch directory>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "onsager/energy.hpp"
#include "onsager/format.hpp"

using namespace onsager;

namespace {

constexpr double pi = std::numbers::pi;

struct Pair {
  int d;
  double m;
};
constexpr Pair kReference[] = {{2, 0.5}, {3, 0.25}, {5, 0.3}};

std::string text(Pair p) {
  std::ostringstream os;
  os << "(d=" << p.d << ", m=" << p.m << ")";
  return os.str();
}

std::string num(double x) { return format_double(x); }

int failures = 0;

// body returns true on success and appends detail lines.
void criterion(int id, const std::string& title, const std::function<bool(std::vector<std::string>&)>& body) {
  std::vector<std::string> detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail.push_back(std::string("exception: ") + e.what());
  }
  if (!ok) ++failures;
  std::cout << "AC" << id << ' ' << (ok ? "PASS" : "FAIL") << "  " << title << '\n';
  for (const auto& line : detail) std::cout << "      " << line << '\n';
  std::cout.flush();
}

// |S^{d-1}| int_0^pi f(t) sin^{d-1} t dt by Boost's tanh-sinh, split at pi/2
// so the peak of rho_kappa at t = 0 sits on an endpoint.
template <class F>
double sphere_integral(F&& f, int d) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto g = [&](double t) { return f(t) * std::pow(std::sin(t), d - 1); };
  return sphere_geometry(d).area_Sdm1 *
         (integrator.integrate(g, 0.0, 0.5 * pi, 1e-13) + integrator.integrate(g, 0.5 * pi, pi, 1e-13));
}

std::vector<double> window_samples(Pair p, int count) {
  const KappaWindow w = fully_supported_window(p.d, p.m);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(std::isinf(w.hi) ? w.lo * (1.0 + 0.3 * (k + 1)) : w.lo + (w.hi - w.lo) * (k + 0.5) / count);
  }
  return out;
}

struct Row {
  double kappa;
  std::string branch;
  double alpha, eta, com_norm, energy;
};

std::vector<Row> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  if (line != kSweepHeader) throw std::runtime_error("unexpected CSV header: " + line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell[6];
    for (auto& c : cell) std::getline(ls, c, ',');
    rows.push_back({std::stod(cell[0]), cell[1], std::stod(cell[2]), std::stod(cell[3]), std::stod(cell[4]),
                    std::stod(cell[5])});
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& command) { return std::system(command.c_str()); }

// rows grouped by branch, kappa ascending
std::map<std::string, std::vector<Row>> by_branch(const std::vector<Row>& rows) {
  std::map<std::string, std::vector<Row>> out;
  for (const Row& r : rows) out[r.branch].push_back(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <onsager CLI> <scratch dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path work = argv[2];
  std::filesystem::create_directories(work);

  criterion(1, "kappa1 reproduces 5.3174, 9.3648, 19.9199 within 5e-4", [](auto& detail) {
    const double expected[] = {5.3174, 9.3648, 19.9199};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const double k1 = kappa1(kReference[i].d, kReference[i].m);
      const double err = std::abs(k1 - expected[i]);
      detail.push_back(text(kReference[i]) + " kappa1 = " + num(k1) + ", |error| = " + num(err));
      ok = ok && err < 5e-4;
    }
    return ok;
  });

  criterion(2, "kappa3/kappa2 at (d=5, m=0.3) is 0.88502 +- 1e-3", [](auto& detail) {
    const double k2 = kappa2(5, 0.3);
    const double k3 = kappa3_and_alpha_bar(5, 0.3).kappa3;
    const double ratio = k3 / k2;
    detail.push_back("kappa2 = " + num(k2) + ", kappa3 = " + num(k3) + ", ratio = " + num(ratio) +
                     " (tabulated 15.8088/17.8623 = " + num(15.8088 / 17.8623) + ")");
    return std::abs(ratio - 0.88502) <= 1e-3;
  });

  criterion(3, "kappa2 closed form and 1/H(1) quadrature agree within 1e-8 relative", [](auto& detail) {
    bool ok = true;
    for (Pair p : {Pair{3, 0.25}, Pair{4, 0.2}, Pair{5, 0.3}}) {
      const double closed = kappa2(p.d, p.m);
      const double quad = kappa2_quadrature(p.d, p.m);
      const double rel = std::abs(closed - quad) / closed;
      detail.push_back(text(p) + " closed form " + num(closed) + ", quadrature " + num(quad) + ", rel " + num(rel));
      if (p.d == 3) {
        detail.push_back("  tabulated 12.4453 differs from both oracles by " +
                         num(std::abs(closed - 12.4453) / closed * 100.0) + "%; treated as a discrepancy, not a reference");
      }
      ok = ok && rel <= 1e-8;
    }
    return ok;
  });

  criterion(4, "s_bar closed form equals I1(1)/I0(1) within 1e-8 for five (d, m)", [](auto& detail) {
    bool ok = true;
    for (Pair p : {Pair{3, 0.25}, Pair{4, 0.4}, Pair{5, 0.55}, Pair{4, 0.2}, Pair{5, 0.3}}) {
      const double closed = s_bar(p.d, p.m);
      const double rel = std::abs(closed - s_bar_quadrature(p.d, p.m)) / closed;
      detail.push_back(text(p) + " " + std::string(to_string(classify_regime(p.d, p.m).tag)) + " s_bar = " +
                       num(closed) + ", rel " + num(rel));
      ok = ok && rel <= 1e-8;
    }
    return ok;
  });

  criterion(5, "H(1e6) kappa1 in [1 - 1e-4, 1 + 1e-4]", [](auto& detail) {
    bool ok = true;
    for (Pair p : kReference) {
      const double v = H(1e6, p.d, p.m) * kappa1(p.d, p.m);
      detail.push_back(text(p) + " " + num(v));
      ok = ok && std::abs(v - 1.0) <= 1e-4;
    }
    return ok;
  });

  criterion(6, "H strictly monotone over 20 log-spaced eta in (1, 1e4], five (d, m)", [](auto& detail) {
    bool ok = true;
    for (Pair p : {Pair{2, 0.5}, Pair{3, 0.25}, Pair{5, 0.3}, Pair{4, 0.4}, Pair{4, 0.2}}) {
      const double sign = classify_regime(p.d, p.m).tag == RegimeTag::CaseIII ? -1.0 : 1.0;
      std::vector<double> h;
      for (int i = 1; i <= 20; ++i) h.push_back(H(std::pow(10.0, 0.2 * i), p.d, p.m));
      bool strict = true;
      for (std::size_t i = 1; i < h.size(); ++i) strict = strict && sign * (h[i] - h[i - 1]) > 0.0;
      detail.push_back(text(p) + (sign > 0 ? " increasing " : " decreasing ") + (strict ? "ok" : "VIOLATED"));
      ok = ok && strict;
    }
    return ok;
  });

  criterion(7, "rho_kappa: mass 1 and first moment s within 1e-8, 10 kappa per window", [](auto& detail) {
    double worst = 0.0;
    for (Pair p : kReference) {
      for (double kappa : window_samples(p, 10)) {
        const FullySupportedState st = fully_supported_state(kappa, p.d, p.m);
        const double mass = sphere_integral([&](double t) { return rho_kappa_density(st, t, p.d, p.m); }, p.d);
        const double first =
            sphere_integral([&](double t) { return rho_kappa_density(st, t, p.d, p.m) * std::cos(t); }, p.d);
        worst = std::max({worst, std::abs(mass - 1.0), std::abs(first - st.s)});
      }
      detail.push_back(text(p) + " worst so far " + num(worst));
    }
    return worst <= 1e-8;
  });

  criterion(8, "slope identities by central differences (step 1e-5 kappa) within 1e-4 relative", [](auto& detail) {
    double worst = 0.0;
    for (Pair p : kReference) {
      for (double kappa : window_samples(p, 5)) {
        const double h = 1e-5 * kappa;
        auto g = [&](double k) { return g1g2_gap(solve_gap(k, p.d, p.m), p.d, p.m).value; };
        const double fd = (g(kappa + h) - g(kappa - h)) / (2.0 * h);
        const double s = fully_supported_state(kappa, p.d, p.m).s;
        worst = std::max(worst, std::abs(fd / (0.5 * s * s) - 1.0));
      }
      detail.push_back(text(p) + " d(g1 g2)/dkappa vs s^2/2, worst so far " + num(worst));
    }
    for (Pair p : {Pair{3, 0.25}, Pair{5, 0.3}}) {
      const CriticalSet c = critical_set(p.d, p.m);
      const double start = c.kappa3 ? *c.kappa3 : *c.kappa2;
      for (int k = 1; k <= 5; ++k) {
        const double kappa = start * (1.0 + 0.08 * k);
        const double h = 1e-5 * kappa;
        auto diff = [&](double kk) { return energy_uniform(kk, p.d, p.m) - *energy_singular_upper(kk, p.d, p.m); };
        const double fd = (diff(kappa + h) - diff(kappa - h)) / (2.0 * h);
        const double c_norm = singular_com_norm(alpha_roots(kappa, p.d, p.m).values.back(), p.d, p.m);
        worst = std::max(worst, std::abs(fd / (0.5 * c_norm * c_norm) - 1.0));
      }
      detail.push_back(text(p) + " d(E_uni - E_sing)/dkappa vs (alpha + (1-alpha) s_bar)^2/2, worst so far " +
                       num(worst));
    }
    return worst <= 1e-4;
  });

  criterion(9, "classify_minimizer equals the argmin of branch energies on 50-point grids; transitions bracketed",
            [](auto& detail) {
              bool ok = true;
              for (Pair p : kReference) {
                const CriticalSet c = critical_set_with_kappa_c(p.d, p.m);
                const RegimeTag tag = classify_regime(p.d, p.m).tag;
                const double lo = tag == RegimeTag::CaseIII ? 0.8 * *c.kappa3 : 0.5 * c.kappa1;
                const double hi = tag == RegimeTag::CaseI    ? 2.0 * c.kappa1
                                  : tag == RegimeTag::CaseII ? 1.5 * *c.kappa2
                                                             : 1.3 * c.kappa1;
                const KappaWindow w = fully_supported_window(p.d, p.m);
                std::vector<double> grid;
                std::vector<Branch> tags;
                int mismatches = 0;
                for (int i = 0; i < 50; ++i) {
                  const double kappa = lo + (hi - lo) * i / 49.0;
                  // branch energies computed here, independently of classify_minimizer
                  Branch best = Branch::Uniform;
                  double best_e = energy_uniform(kappa, p.d, p.m);
                  auto offer = [&](Branch b, double e) {
                    if (e < best_e) {
                      best_e = e;
                      best = b;
                    }
                  };
                  if (kappa > w.lo && kappa < w.hi) {
                    offer(Branch::FullySupported,
                          energy_fully_supported(fully_supported_state(kappa, p.d, p.m), p.d, p.m));
                  }
                  if (tag != RegimeTag::CaseI) {
                    for (double alpha : alpha_roots(kappa, p.d, p.m).values) {
                      const bool upper = alpha == alpha_roots(kappa, p.d, p.m).values.back();
                      offer(upper ? Branch::SingularUpper : Branch::SingularLower,
                            energy_singular(alpha, kappa, p.d, p.m));
                    }
                  }
                  const Branch tagged = classify_minimizer(kappa, p.d, p.m, c).minimizer;
                  if (tagged != best) ++mismatches;
                  grid.push_back(kappa);
                  tags.push_back(tagged);
                }
                std::ostringstream os;
                os << text(p) << " mismatches " << mismatches;
                ok = ok && mismatches == 0;
                auto bracket = [&](Branch from, Branch to, double target, const char* name) {
                  bool found = false;
                  for (std::size_t i = 0; i + 1 < tags.size(); ++i) {
                    if (tags[i] == from && tags[i + 1] == to) {
                      found = grid[i] <= target && target <= grid[i + 1];
                      os << "; " << to_string(from) << " -> " << to_string(to) << " in [" << num(grid[i]) << ", "
                         << num(grid[i + 1]) << "] vs " << name << " = " << num(target);
                      break;
                    }
                  }
                  ok = ok && found;
                };
                if (tag != RegimeTag::CaseIII) bracket(Branch::Uniform, Branch::FullySupported, c.kappa1, "kappa1");
                if (tag == RegimeTag::CaseII) bracket(Branch::FullySupported, Branch::SingularUpper, *c.kappa2, "kappa2");
                if (tag == RegimeTag::CaseIII) {
                  bracket(Branch::Uniform, Branch::SingularUpper, *c.kappa_c, "kappa_c");
                  ok = ok && *c.kappa_c > *c.kappa3 && *c.kappa_c < c.kappa1;
                  os << "; kappa3 < kappa_c < kappa1: " << num(*c.kappa3) << " < " << num(*c.kappa_c) << " < "
                     << num(c.kappa1);
                }
                detail.push_back(os.str());
              }
              return ok;
            });

  criterion(10, "sweep CSV has the bifurcation-diagram structure of each regime", [&](auto& detail) {
    bool ok = true;
    auto sweep = [&](const std::string& name, const std::string& flags) {
      const auto path = work / (name + ".csv");
      if (run(cli + " sweep " + flags + " --out " + path.string()) != 0) throw std::runtime_error("sweep failed");
      return read_csv(path);
    };
    auto expect = [&](bool cond, const std::string& what) {
      detail.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
      ok = ok && cond;
    };

    {  // case i: s_kappa rises from 0 at kappa1 towards 1
      const double k1 = kappa1(2, 0.5);
      const auto rows = by_branch(sweep("case_i", "--d 2 --m 0.5 --kappa-min 2 --kappa-max 600 --steps 400 --log-grid"));
      const auto& fs = rows.at("fully_supported");
      bool increasing = true;
      for (std::size_t i = 1; i < fs.size(); ++i) increasing = increasing && fs[i].com_norm > fs[i - 1].com_norm;
      expect(fs.front().kappa > k1, "case i: first fully_supported row above kappa1");
      expect(increasing, "case i: com_norm strictly increasing along fully_supported");
      expect(fs.front().com_norm < 0.2, "case i: com_norm near 0 just above kappa1 (" + num(fs.front().com_norm) + ")");
      expect(fs.back().com_norm > 0.99, "case i: com_norm approaches 1 (" + num(fs.back().com_norm) + ")");
      expect(rows.count("singular_upper") == 0 && rows.count("singular_lower") == 0, "case i: no measure-valued rows");
    }
    {  // case ii: fully supported hands over to the measure-valued branch at kappa2
      const double k1 = kappa1(3, 0.25);
      const double k2 = kappa2(3, 0.25);
      const double sb = s_bar(3, 0.25);
      const auto rows = by_branch(sweep("case_ii", "--d 3 --m 0.25 --kappa-min 5 --kappa-max 25 --steps 201"));
      const auto& fs = rows.at("fully_supported");
      const auto& up = rows.at("singular_upper");
      expect(fs.front().kappa > k1 && fs.back().kappa < k2, "case ii: fully_supported rows confined to (kappa1, kappa2)");
      expect(up.front().kappa > k2, "case ii: singular_upper rows start above kappa2");
      expect(up.front().kappa - fs.back().kappa < 0.11, "case ii: handoff happens between adjacent grid points");
      expect(std::abs(fs.back().com_norm - sb) < 0.01 && std::abs(up.front().com_norm - sb) < 0.01,
             "case ii: com_norm continuous through s_bar at the handoff (" + num(fs.back().com_norm) + ", " +
                 num(up.front().com_norm) + ")");
      expect(rows.count("singular_lower") == 0, "case ii: no lower measure-valued branch");
    }
    {  // case iii: two measure-valued branches on (kappa3, kappa2)
      const double k3 = kappa3_and_alpha_bar(5, 0.3).kappa3;
      const double k2 = kappa2(5, 0.3);
      const double sb = s_bar(5, 0.3);
      const auto all = sweep("case_iii", "--d 5 --m 0.3 --kappa-min 12 --kappa-max 25 --steps 261");
      std::map<double, std::map<std::string, Row>> at;
      for (const Row& r : all) at[r.kappa][r.branch] = r;
      bool exact = true;
      bool ordered = true;
      for (const auto& [kappa, branches] : at) {
        const bool inside = kappa > k3 && kappa < k2;
        exact = exact && (branches.count("singular_lower") == 1) == inside;
        exact = exact && (branches.count("singular_upper") == 1) == (kappa >= k3);
        if (inside) {
          ordered = ordered && branches.at("singular_lower").com_norm < branches.at("singular_upper").com_norm;
        }
      }
      expect(exact, "case iii: two measure-valued branches exactly on (kappa3, kappa2)");
      expect(ordered, "case iii: lower branch below the upper one in com_norm");
      const auto rows = by_branch(all);
      const auto& low = rows.at("singular_lower");
      expect(std::abs(low.back().com_norm - sb) < 0.01,
             "case iii: lower com_norm -> s_bar at kappa2 (" + num(low.back().com_norm) + " vs " + num(sb) + ")");
      expect(std::abs(low.front().com_norm - low.front().com_norm) == 0.0 &&
                 std::abs(rows.at("singular_upper").front().alpha - kappa3_and_alpha_bar(5, 0.3).alpha_bar) < 0.05,
             "case iii: the fold starts near alpha_bar");
      const auto& fs = rows.at("fully_supported");
      expect(std::abs(fs.front().com_norm - sb) < 0.01, "case iii: fully_supported leaves kappa2 at s_bar");
    }
    return ok;
  });

  criterion(11, "two identical sweep runs give byte-identical CSV", [&](auto& detail) {
    const std::string flags = " sweep --d 3 --m 0.25 --kappa-min 5 --kappa-max 25 --steps 120";
    const auto a = work / "determinism_a.csv";
    const auto b = work / "determinism_b.csv";
    if (run(cli + flags + " --out " + a.string()) != 0 || run(cli + flags + " --out " + b.string()) != 0) {
      detail.push_back("sweep run failed");
      return false;
    }
    const std::string sa = slurp(a);
    const std::string sb = slurp(b);
    detail.push_back(std::to_string(sa.size()) + " bytes each");
    return !sa.empty() && sa == sb;
  });

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}
