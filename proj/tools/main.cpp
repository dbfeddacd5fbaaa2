// cubehc: command-line front end.
//
// Exit codes: 0 expected outcome, 2 usage, 3 violation / not admissible,
// 4 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubehc/errors.hpp"
#include "cubehc/lens_geometry.hpp"
#include "cubehc/multiplier.hpp"
#include "cubehc/oracle.hpp"
#include "cubehc/report.hpp"
#include "cubehc/verify.hpp"

using namespace cubehc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitNumeric = 4;

struct Globals {
  std::optional<double> tolerance;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + g.out + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing output file '" + g.out + "'");
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

Json lens_json(const LensParams& lp) {
  return {{"center_offset", lp.center_offset}, {"radius", lp.radius},       {"alpha", lp.alpha},
          {"axis_radius", lp.axis_radius},     {"dual_exponent", dual_exponent(lp.p)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex hypercontractivity toolkit for the noise operator on the Hamming cube"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");

  Globals g;
  app.add_option("--tolerance", g.tolerance, "Pass threshold override (margin >= -tolerance; search slack)");
  app.add_option("--threads", g.threads, "Worker threads for scans and searches")->default_val(1)->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized searches")->default_val(1);
  app.add_option("--out", g.out, "Output file (default: stdout)");

  double p = 2.0, q = 0.0;
  std::string z_text = "1,0";
  auto add_pq = [&](CLI::App* sub, bool with_z) {
    sub->add_option("--p", p, "Exponent p > 1")->default_val(2.0);
    sub->add_option("--q", q, "Exponent q >= p (default: q = p)");
    if (with_z) sub->add_option("--z", z_text, "Complex noise parameter as re,im")->default_val("1,0");
  };
  auto q_value = [&] { return q > 0.0 ? q : p; };

  // admissible
  auto* adm = app.add_subcommand("admissible", "Is z admissible for (p, q)? Exit 3 if not");
  add_pq(adm, true);

  // boundary
  int points = 256;
  auto* bnd = app.add_subcommand("boundary", "CSV of the boundary curve r(t), t = 2 pi k / points");
  add_pq(bnd, false);
  bnd->add_option("--points", points, "Number of t samples")->default_val(256)->check(CLI::Range(1, 1 << 20));

  // verify
  std::string check_id;
  VerifyOptions vopt;
  bool no_refine = false;
  auto* ver = app.add_subcommand("verify", "Run a named inequality scan; exit 3 on an unexpected outcome");
  ver->add_option("id", check_id, "One of: reduced, two-point, necessity, mock-logsob, series, cap, coeff-ratio, "
                               "final-chain, self-improvement, endgame")
      ->required();
  add_pq(ver, true);
  ver->add_option("--grid", vopt.grid, "Points per continuous axis")->default_val(32);
  ver->add_option("--lmax", vopt.lmax, "Largest index for cap / coeff-ratio")->default_val(12);
  ver->add_option("--terms", vopt.terms, "Series truncation")->default_val(64);
  ver->add_option("--w-radius", vopt.w_radius, "Two-point scans sample |w| <= radius")->default_val(0.2);
  ver->add_flag("--no-refine", no_refine, "Skip zooming on the worst cell");

  // search
  SearchConfig scfg;
  auto* sea = app.add_subcommand("search", "Hill-climb for ||T_z f||_q > ||f||_p; exit 3 if a violation is found");
  add_pq(sea, true);
  sea->add_option("--n", scfg.n, "Cube dimension")->default_val(1)->check(CLI::Range(1, 10));
  sea->add_option("--restarts", scfg.restarts, "Random restarts")->default_val(1000);
  sea->add_option("--steps", scfg.steps, "Proposals per restart")->default_val(200);

  // multiplier
  std::string problem_path;
  int degree = -1;
  int boundary_m = 0;
  bool real_only = false;
  std::vector<std::string> phi_text;
  auto* mul = app.add_subcommand("multiplier", "Solve the least-TV moment problem for a multiplier");
  mul->add_option("--problem", problem_path, "Problem JSON {p, q, d, phi, M, tolerances}");
  add_pq(mul, false);
  mul->add_option("--d", degree, "Degree");
  mul->add_option("--phi", phi_text, "Multiplier values phi(0..d), each re,im");
  mul->add_option("--M", boundary_m, "Boundary samples (default max(64, 16(d+1)))");
  mul->add_flag("--real-only", real_only, "Restrict atoms to the real interval");

  // certify
  std::string solution_path;
  int trials = 200;
  int cube_n = 5;
  auto* cer = app.add_subcommand("certify", "Check a solved multiplier bound on random cube functions");
  cer->add_option("--solution", solution_path, "Solution JSON from the multiplier command")->required();
  cer->add_option("--trials", trials, "Random functions")->default_val(200);
  cer->add_option("--n", cube_n, "Cube dimension (<= 8)")->default_val(5);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*adm) {
      const Complex z = parse_complex(z_text);
      const auto m = admissibility_margin(p, q_value(), z);
      const bool ok = is_admissible(p, q_value(), z);
      Json j;
      j["schema"] = kSchemaVersion;
      j["p"] = p;
      j["q"] = q_value();
      j["z"] = complex_to_json(z);
      j["admissible"] = ok;
      j["lhs"] = m.lhs;
      j["rhs"] = m.rhs;
      j["margin"] = m.margin();
      if (p == q_value() && p > 1.0) {
        j["lens"] = lens_json(LensParams::make(p));
        j["boundary_radius"] = boundary_radius_closed(p, std::arg(z));
      }
      emit_json(g, j);
      return ok ? kExitOk : kExitViolation;
    }

    if (*bnd) {
      const double qq = q_value();
      LensParams::make(p, qq);
      const bool sym = p == qq;
      std::string csv = sym ? "t,r,c,margin,r_closed,difference\n" : "t,r,c,margin\n";
      for (int k = 0; k < points; ++k) {
        const double t = 2.0 * std::numbers::pi * k / points;
        const double r = boundary_radius_inf(p, qq, t);
        const double margin = admissibility_margin(p, qq, std::polar(r, t)).margin();
        csv += format_double(t) + "," + format_double(r) + "," + format_double(1.0 / r) + "," + format_double(margin);
        if (sym) {
          const double rc = boundary_radius_closed(p, t);
          csv += "," + format_double(rc) + "," + format_double(std::abs(r - rc));
        }
        csv += "\n";
      }
      emit(g, csv);
      return kExitOk;
    }

    if (*ver) {
      vopt.p = p;
      vopt.q = q_value();
      vopt.z = parse_complex(z_text);
      vopt.refine = !no_refine;
      if (g.tolerance) vopt.tolerance = *g.tolerance;
      const auto report = verify(check_id, vopt, g.threads);
      emit_json(g, report_to_json(report));
      return report.as_expected() ? kExitOk : kExitViolation;
    }

    if (*sea) {
      scfg.seed = g.seed;
      scfg.threads = g.threads;
      const Complex z = parse_complex(z_text);
      const auto res = search_violation(p, q_value(), z, scfg);
      Json j = search_to_json(p, q_value(), z, scfg, res);
      const double slack = g.tolerance.value_or(1e-8);
      const bool violation = res.best_ratio > 1.0 + slack;
      j["slack"] = slack;
      j["violation"] = violation;
      emit_json(g, j);
      return violation ? kExitViolation : kExitOk;
    }

    if (*mul) {
      MomentProblem prob;
      if (!problem_path.empty()) {
        prob = problem_from_json(read_json(problem_path));
      } else {
        if (degree < 0) throw InvalidInput("give --problem or --d with --phi");
        prob.p = p;
        prob.q = q_value();
        prob.d = degree;
        for (const auto& s : phi_text) prob.phi.push_back(parse_complex(s));
        prob.M = boundary_m;
        prob.real_only = real_only;
      }
      if (g.tolerance) prob.gap_tolerance = *g.tolerance;
      prob.validate();
      const auto sandwich = solve(prob);
      emit_json(g, solution_to_json(prob, sandwich));
      return kExitOk;
    }

    if (*cer) {
      const Json sol = read_json(solution_path);
      if (!sol.contains("problem")) throw InvalidInput("solution file has no 'problem' block");
      const MomentProblem prob = problem_from_json(sol.at("problem"));
      const AtomicMeasure measure = measure_from_json(sol);
      const auto cert = certify_on_cube(measure, prob.phi, prob.d, prob.p, prob.q, trials, cube_n, g.seed);
      const double slack = g.tolerance.value_or(1e-6);
      Json j;
      j["schema"] = kSchemaVersion;
      j["worst_ratio"] = cert.worst_ratio;
      j["tv_bound"] = cert.tv_bound;
      j["trials"] = cert.trials;
      j["n"] = cube_n;
      j["seed"] = g.seed;
      j["slack"] = slack;
      j["holds"] = cert.holds(slack);
      emit_json(g, j);
      return cert.holds(slack) ? kExitOk : kExitViolation;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const SearchFailure& e) {
    std::cerr << "search failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
