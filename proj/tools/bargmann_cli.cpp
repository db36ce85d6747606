// Command-line front end: analyze / svd / scan1d / verify / witness.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bargmann/decision.hpp"
#include "bargmann/fio.hpp"
#include "bargmann/io.hpp"
#include "bargmann/numerics.hpp"
#include "bargmann/poly.hpp"
#include "bargmann/qform.hpp"

namespace {

using namespace bargmann;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBoundary = 2;

bool has_boundary(const Verdict& v) {
  if (v.decision == Decision::Boundary) return true;
  for (const auto& c : v.conditions)
    if (c.decision == Decision::Boundary) return true;
  return false;
}

int cmd_analyze(const std::string& path, double tol) {
  ProblemFile p = load_problem(path);
  const double use_tol = tol > 0 ? tol : p.tol;
  const Verdict bounded = is_bounded(p.phi1, p.phi2, p.map, use_tol);
  const Verdict compact = is_compact(p.phi1, p.phi2, p.map, use_tol);

  Json report;
  report["bounded"] = verdict_to_json(bounded);
  report["compact"] = verdict_to_json(compact);
  if (bounded.decision == Decision::No) {
    const auto seq =
        find_witness(p.phi1, p.phi2, p.map, WitnessMode::Unbounded, use_tol);
    if (!seq.empty()) report["witness"] = cvec_to_json(seq.back().w);
  }
  std::cout << report.dump(2) << "\n";
  return (has_boundary(bounded) || has_boundary(compact)) ? kExitBoundary
                                                          : kExitOk;
}

int cmd_svd(const std::string& path, int degree, const std::string& csv_path,
            double tol) {
  ProblemFile p = load_problem(path);
  const double use_tol = tol > 0 ? tol : p.tol;
  int d1 = degree > 0 ? degree : p.d1;
  int d2 = degree > 0 ? degree : p.d2;

  const Verdict compact = is_compact(p.phi1, p.phi2, p.map, use_tol);
  if (compact.decision != Decision::Yes)
    std::cerr << "warning: operator is not compact; singular values may not "
                 "decay\n";

  const OperatorMatrix op = operator_matrix(p.phi1, p.phi2, p.map, d1, d2);
  const RVec s = singular_values(op);

  std::ostringstream csv;
  csv << "j,s_j,j_pow,log_s\n";
  const double inv = 1.0 / static_cast<double>(p.phi2.n);
  for (int j = 0; j < s.size(); ++j) {
    const double sj = s(j);
    csv << (j + 1) << "," << sj << "," << std::pow(j + 1.0, inv) << ","
        << (sj > 0 ? std::log(sj) : -std::numeric_limits<double>::infinity())
        << "\n";
  }
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot write CSV: " + csv_path);
    out << csv.str();
  }

  // Refuse the exponential fit when the values show no decay at all.
  if (s.size() < 5 || s(s.size() - 1) > 0.5 * s(0)) {
    std::cerr << "warning: singular values do not decay; fit refused\n";
    return kExitOk;
  }
  const DecayFit fit = decay_fit(s, p.phi2.n);
  std::cout << decay_fit_to_json(fit, std::max(d1, d2)).dump(2) << "\n";
  return kExitOk;
}

Complex parse_complex_token(const std::string& tok) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos) return Complex(std::stod(tok), 0.0);
  return Complex(std::stod(tok.substr(0, slash)),
                 std::stod(tok.substr(slash + 1)));
}

std::map<std::string, std::vector<Complex>> parse_grid(
    const std::string& spec) {
  std::map<std::string, std::vector<Complex>> grid;
  std::istringstream parts(spec);
  std::string part;
  while (std::getline(parts, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("grid: expected name=v1,v2,...");
    const std::string name = part.substr(0, eq);
    std::vector<Complex> vals;
    std::istringstream items(part.substr(eq + 1));
    std::string item;
    while (std::getline(items, item, ','))
      if (!item.empty()) vals.push_back(parse_complex_token(item));
    grid[name] = vals;
  }
  return grid;
}

Class1D engine_class(double r1, Complex s1, double r2, Complex s2, Complex a,
                     Complex b, double tol) {
  const QuadraticWeight w1 = QuadraticWeight::one_dim(r1, s1);
  const QuadraticWeight w2 = QuadraticWeight::one_dim(r2, s2);
  const AffineMap phi = AffineMap::one_dim(a, b);
  const Verdict bounded = is_bounded(w1, w2, phi, tol);
  if (has_boundary(bounded)) return Class1D::Boundary;
  if (bounded.decision == Decision::No) return Class1D::Unbounded;
  const Verdict compact = is_compact(w1, w2, phi, tol);
  return compact.decision == Decision::Yes ? Class1D::Compact
                                           : Class1D::Bounded;
}

int cmd_scan1d(const std::string& grid_spec, double tol) {
  const double use_tol = tol > 0 ? tol : 1e-9;
  auto grid = parse_grid(grid_spec);
  auto axis = [&](const std::string& name,
                  std::vector<Complex> fallback) -> std::vector<Complex> {
    auto it = grid.find(name);
    return it != grid.end() ? it->second : fallback;
  };
  const auto r1s = axis("r1", {Complex(0.25, 0), Complex(1, 0)});
  const auto s1s = axis("s1", {Complex(0, 0), Complex(0.1, 0)});
  const auto r2s = axis("r2", {Complex(0.25, 0), Complex(1, 0)});
  const auto s2s = axis("s2", {Complex(0, 0), Complex(0.1, 0.1)});
  const auto as = axis("a", {Complex(0.5, 0), Complex(1, 0)});
  const auto bs = axis("b", {Complex(0, 0), Complex(1, 0)});

  std::cout << "r1,s1,r2,s2,a,b,closed_form,engine,agree\n";
  int rows = 0;
  int agree_count = 0;
  auto fmt = [](Complex z) {
    std::ostringstream o;
    if (z.imag() == 0.0)
      o << z.real();
    else
      o << z.real() << "/" << z.imag();
    return o.str();
  };
  for (Complex r1c : r1s)
    for (Complex s1 : s1s)
      for (Complex r2c : r2s)
        for (Complex s2 : s2s)
          for (Complex a : as)
            for (Complex b : bs) {
              const double r1 = r1c.real();
              const double r2 = r2c.real();
              const Class1D closed =
                  classify_1d(r1, s1, r2, s2, a, b, use_tol);
              const Class1D engine =
                  engine_class(r1, s1, r2, s2, a, b, use_tol);
              const bool agree = closed == engine ||
                                 closed == Class1D::Boundary ||
                                 engine == Class1D::Boundary;
              ++rows;
              agree_count += agree;
              std::cout << fmt(r1c) << "," << fmt(s1) << "," << fmt(r2c)
                        << "," << fmt(s2) << "," << fmt(a) << "," << fmt(b)
                        << "," << to_string(closed) << ","
                        << to_string(engine) << "," << (agree ? "yes" : "no")
                        << "\n";
            }
  if (rows > 0)
    std::cerr << "agreement: " << agree_count << "/" << rows << "\n";
  return kExitOk;
}

struct CheckLog {
  int failures = 0;
  void report(const std::string& name, bool ok) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    failures += ok ? 0 : 1;
  }
  void skip(const std::string& name, const std::string& why) {
    std::cout << "skip  " << name << " (" << why << ")\n";
  }
};

int cmd_verify(const std::string& path, double tol, std::uint64_t seed) {
  ProblemFile p = load_problem(path);
  const double use_tol = tol > 0 ? tol : p.tol;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_vec = [&](int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
  };
  CheckLog log;

  // Gap identity: 2 Re Psi(z, conj(y)) - Phi(z) - Phi(y) = -Phi_h(z - y).
  {
    QuadraticWeight herm = p.phi1;
    herm.S = CMat::Zero(herm.n, herm.n);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const CVec z = rand_vec(p.phi1.n);
      const CVec y = rand_vec(p.phi1.n);
      const double gap = fundamental_gap(p.phi1, z, y);
      const double scale = std::max(1.0, std::abs(gap));
      worst = std::max(worst, std::abs(gap + herm(z - y)) / scale);
    }
    log.report("fundamental_gap identity", worst <= 1e-10);
  }

  // Reproducing property of the projector on low-degree polynomials.
  try {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      Poly q = Poly::constant(p.phi1.n, Complex(gauss(rng), gauss(rng)));
      for (int k = 0; k < p.phi1.n; ++k) {
        MultiIndex mi(p.phi1.n, 0);
        mi[k] = 1 + (t % 3);
        q.add_term(mi, Complex(gauss(rng), gauss(rng)));
      }
      const CVec w = 0.5 * rand_vec(p.phi1.n);
      const Complex got = project_polynomial(p.phi1, q, w);
      const Complex want = q.evaluate(w);
      worst = std::max(worst,
                       std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    log.report("projector reproduces polynomials", worst <= 1e-8);
  } catch (const std::exception& e) {
    log.skip("projector reproduces polynomials", e.what());
  }

  const Verdict bounded = is_bounded(p.phi1, p.phi2, p.map, use_tol);
  const Verdict compact = is_compact(p.phi1, p.phi2, p.map, use_tol);

  // Coherent-state norm ratio along random rays.
  {
    double worst_ratio = 0.0;
    bool monotone_ok = true;
    for (int ray = 0; ray < 8; ++ray) {
      CVec dir = rand_vec(p.phi2.n);
      dir /= dir.norm();
      double prev = coherent_norm_ratio(p.phi1, p.phi2, p.map,
                                        CVec(0.0 * dir));
      for (double r : {5.0, 10.0, 20.0, 50.0}) {
        const double ratio =
            coherent_norm_ratio(p.phi1, p.phi2, p.map, CVec(r * dir));
        worst_ratio = std::max(worst_ratio, ratio);
        if (compact.decision == Decision::Yes && ratio > prev + 1e-9)
          monotone_ok = false;
        prev = ratio;
      }
    }
    if (compact.decision == Decision::Yes)
      log.report("coherent ratio decays (compact)",
                 monotone_ok && worst_ratio < 1e6);
    else
      log.skip("coherent ratio decay", "instance not compact");
  }

  // Exact completion of the square for the difference form.
  {
    const RealForm q = difference_form(p.phi1, p.phi2, p.map.A);
    const int m = 2 * p.phi2.n;
    const int d = m / 2;
    try {
      const SquareSplit split = complete_square(q, d, use_tol);
      double worst = 0.0;
      std::normal_distribution<double> g(0.0, 1.0);
      for (int t = 0; t < 100; ++t) {
        RVec X(m);
        for (int i = 0; i < m; ++i) X(i) = g(rng);
        const RVec xpp = X.tail(d);
        const RVec res = X.head(m - d) - split.critical * xpp;
        const double recon = split.residual(res) + split.core(xpp);
        worst = std::max(worst, std::abs(q(X) - recon) /
                                    std::max(1.0, std::abs(q(X))));
      }
      log.report("complete_square identity", worst <= 1e-10);
    } catch (const std::exception& e) {
      log.skip("complete_square identity", e.what());
    }
  }

  // Schur row/column bounds (finite only for bounded instances).
  if (bounded.decision == Decision::Yes) {
    try {
      const SchurBounds sb = schur_row_col_bounds(p.phi1, p.phi2, p.map);
      log.report("schur bounds finite",
                 std::isfinite(sb.row_sup) && std::isfinite(sb.col_sup) &&
                     sb.row_sup > 0 && sb.col_sup > 0);
    } catch (const std::exception& e) {
      log.skip("schur bounds", e.what());
    }
  } else {
    log.skip("schur bounds", "instance not bounded");
  }

  // Witness check for unbounded instances.
  if (bounded.decision == Decision::No) {
    const auto seq =
        find_witness(p.phi1, p.phi2, p.map, WitnessMode::Unbounded, use_tol);
    log.report("unbounded witness ratio exceeds 1e6",
               !seq.empty() && seq.back().ratio > 1e6);
  }

  // Graph mapping check for square invertible maps.
  if (p.map.n1 == p.map.n2) {
    try {
      const GraphMappingReport gr = verify_graph_mapping(
          p.phi1, p.map, 100, seed);
      log.report("graph mapping residual",
                 gr.residual <= 1e-10 * std::max(1.0, gr.scale));
      log.report("phase rank full", gr.phase_rank == p.phi1.n);
    } catch (const std::exception& e) {
      log.skip("graph mapping", e.what());
    }
  } else {
    log.skip("graph mapping", "map not square");
  }

  return log.failures == 0 ? kExitOk : kExitInput;
}

int cmd_witness(const std::string& path, double tol) {
  ProblemFile p = load_problem(path);
  const double use_tol = tol > 0 ? tol : p.tol;
  const Verdict bounded = is_bounded(p.phi1, p.phi2, p.map, use_tol);
  WitnessMode mode;
  if (bounded.decision == Decision::No) {
    mode = WitnessMode::Unbounded;
  } else {
    const Verdict compact = is_compact(p.phi1, p.phi2, p.map, use_tol);
    if (compact.decision == Decision::No) {
      mode = WitnessMode::Noncompact;
    } else {
      std::cerr << "error: operator is bounded and compact; no witness\n";
      return kExitInput;
    }
  }
  const auto seq = find_witness(p.phi1, p.phi2, p.map, mode, use_tol);
  std::cout << "m,ratio,w\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::cout << (i + 1) << "," << seq[i].ratio << ",";
    for (int k = 0; k < seq[i].w.size(); ++k) {
      if (k) std::cout << " ";
      std::cout << seq[i].w(k).real() << "/" << seq[i].w(k).imag();
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundedness and compactness of pullback operators between "
               "Bargmann spaces with quadratic weights"};
  app.require_subcommand(1);

  double tol = 0.0;  // 0 = use the problem file / module default
  app.add_option("--tol", tol, "Decision tolerance (overrides problem file)");

  std::string problem_path;
  int degree = 0;
  std::string csv_path;
  std::string grid_spec;
  std::uint64_t seed = 1;

  auto* analyze = app.add_subcommand("analyze", "Decide boundedness and "
                                                "compactness, emit verdicts");
  analyze->add_option("problem", problem_path, "Problem JSON file")
      ->required();

  auto* svd = app.add_subcommand("svd", "Truncated singular values + decay "
                                        "fit");
  svd->add_option("problem", problem_path, "Problem JSON file")->required();
  svd->add_option("--degree", degree, "Truncation degree (both sides)");
  svd->add_option("--csv", csv_path, "Write singular values CSV here");

  auto* scan = app.add_subcommand("scan1d", "Closed-form vs engine agreement "
                                            "over a 1-D parameter grid");
  scan->add_option("--grid", grid_spec,
                   "Grid spec: name=v1,v2;name=... (complex as re/im)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a "
                                              "problem");
  verify->add_option("problem", problem_path, "Problem JSON file")
      ->required();
  verify->add_option("--seed", seed, "Random seed for sampled checks");

  auto* witness = app.add_subcommand("witness", "Print the coherent-state "
                                                "witness sequence");
  witness->add_option("problem", problem_path, "Problem JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitOk;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(problem_path, tol);
    if (svd->parsed()) return cmd_svd(problem_path, degree, csv_path, tol);
    if (scan->parsed()) return cmd_scan1d(grid_spec, tol);
    if (verify->parsed()) return cmd_verify(problem_path, tol, seed);
    if (witness->parsed()) return cmd_witness(problem_path, tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
