// Command-line front end: verification studies and plot-ready data.
//
//   elastocald constants      material constants, admissibility, mu~ sweep CSV
//   elastocald spectrum       eigenvalues of the closed-curve composition N S
//   elastocald arc-spectrum   eigenvalues of the weighted arc composition
//   elastocald calderon-check residual of N S + I/4 - (D*)^2 under refinement
//   elastocald diag-test      flat-arc basis identities up to n = M-3
//   elastocald solve          Dirichlet/Neumann scattering solve + field CSV
//   elastocald iters          plain vs preconditioned GMRES iteration counts
//
// Every command honors --out, --seed, --tol; --config supplies defaults from
// a JSON file and explicit flags override it. Identical config and seed give
// byte-identical CSV output. Commands exit nonzero when a tolerance check
// fails.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "elastocald/elastocald.hpp"

using namespace elastocald;
using nlohmann::json;

namespace {

struct Config {
  double lambda = 2.0, mu = 1.0, mu_tilde = 1.0, rho = 1.0, omega = 2.0;
  std::string curve = "circle:r=1";
  int n = 128;
  double tol = 1e-8;
  unsigned seed = 0;
  std::string out = "elastocald";
  // command particulars
  double sweep_min = -2.0, sweep_max = 4.0;
  int sweep_steps = 601;
  std::string bc = "dirichlet";
  std::string incident = "point";
  double dir_x = 1.0, dir_y = 0.0;
  double src_x = 0.2, src_y = 0.1;
  bool precondition = false;

  Material material() const { return Material{lambda, mu, mu_tilde, rho, omega}; }
};

void load_json_defaults(Config& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  json j;
  f >> j;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  get("lambda", cfg.lambda);
  get("mu", cfg.mu);
  get("mu_tilde", cfg.mu_tilde);
  get("rho", cfg.rho);
  get("omega", cfg.omega);
  get("curve", cfg.curve);
  get("n", cfg.n);
  get("tol", cfg.tol);
  get("seed", cfg.seed);
  get("out", cfg.out);
  get("sweep_min", cfg.sweep_min);
  get("sweep_max", cfg.sweep_max);
  get("sweep_steps", cfg.sweep_steps);
  get("bc", cfg.bc);
  get("incident", cfg.incident);
  get("dir_x", cfg.dir_x);
  get("dir_y", cfg.dir_y);
  get("src_x", cfg.src_x);
  get("src_y", cfg.src_y);
  get("precondition", cfg.precondition);
}

json config_echo(const Config& c, const std::string& command) {
  return json{{"command", command},
              {"lambda", c.lambda},
              {"mu", c.mu},
              {"mu_tilde", c.mu_tilde},
              {"rho", c.rho},
              {"omega", c.omega},
              {"curve", c.curve},
              {"n", c.n},
              {"tol", c.tol},
              {"seed", c.seed},
              {"bc", c.bc},
              {"incident", c.incident},
              {"precondition", c.precondition}};
}

IncidentField make_incident(const Config& c) {
  IncidentField f;
  if (c.incident == "plane-p") {
    f.kind = IncidentField::Kind::plane_p;
    f.direction = Vec2(c.dir_x, c.dir_y).normalized();
  } else if (c.incident == "plane-s") {
    f.kind = IncidentField::Kind::plane_s;
    f.direction = Vec2(c.dir_x, c.dir_y).normalized();
  } else {
    f.kind = IncidentField::Kind::point_source;
    f.source = Vec2(c.src_x, c.src_y);
    f.strength = Vec2c(1.0, 0.5);
  }
  return f;
}

int cmd_constants(const Config& cfg) {
  Material m = cfg.material();
  OperatorConstants c = constants(m);
  Admissibility adm = check_admissible(m);
  std::printf("kelvin_log   = %.17g\n", c.kelvin_log);
  std::printf("kelvin_dyad  = %.17g\n", c.kelvin_dyad);
  std::printf("vkern_log    = %.17g\n", c.vkern_log);
  std::printf("vkern_dyad   = %.17g\n", c.vkern_dyad);
  std::printf("dl_jump      = %.17g\n", c.dl_jump);
  std::printf("dl_jump_gen  = %.17g\n", c.dl_jump_gen);
  std::printf("cluster      = %.17g\n", c.cluster);
  std::printf("flat_eig_a   = %.17g\n", c.flat_eig_a);
  std::printf("flat_eig_b   = %.17g\n", c.flat_eig_b);
  std::printf("flat_cluster = %.17g\n", c.flat_cluster);
  std::printf("admissible   = %s%s%s\n", adm.admissible ? "yes" : "no",
              adm.admissible ? "" : " : ", adm.reason.c_str());
  std::string csv = "mu_tilde,c_tilde,cluster,admissible\n";
  for (int i = 0; i < cfg.sweep_steps; ++i) {
    double mt = cfg.sweep_min + (cfg.sweep_max - cfg.sweep_min) * i /
                                    std::max(1, cfg.sweep_steps - 1);
    Material mm = m;
    mm.mu_tilde = mt;
    OperatorConstants cc = constants(mm);
    Admissibility a = check_admissible(mm);
    csv += io::fmt(mt) + "," + io::fmt(cc.dl_jump_gen) + "," + io::fmt(cc.cluster) + "," +
           (a.admissible ? "1" : "0") + "\n";
  }
  io::write_text(cfg.out + "_constants.csv", csv);
  io::write_text(cfg.out + "_constants.json", config_echo(cfg, "constants").dump(2) + "\n");
  return 0;
}

int cmd_spectrum(const Config& cfg) {
  Material m = cfg.material();
  Kernels k(m);
  auto geom = parse_curve(cfg.curve);
  if (!std::holds_alternative<ClosedCurve>(geom))
    throw std::runtime_error("spectrum: closed curve required (use arc-spectrum for arcs)");
  auto cres = calderon_compose(k, std::get<ClosedCurve>(geom), cfg.n, cfg.seed);
  auto eigs = eigenvalues(cres.ns.mat);
  OperatorConstants c = constants(m);
  auto rep = cluster_report(eigs, Complex(c.cluster, 0.0), {0.01, 0.02, 0.05, 0.1, 0.2});
  io::write_spectrum_csv(cfg.out + "_spectrum.csv", rep);
  json side = io::spectrum_sidecar(rep, c, 32);
  side["config"] = config_echo(cfg, "spectrum");
  side["calderon_residual"] = cres.residual_ns;
  io::write_text(cfg.out + "_spectrum.json", side.dump(2) + "\n");
  std::printf("eigenvalues: %zu, cluster %.6f, fraction within 0.05: %.3f\n", eigs.size(),
              c.cluster, rep.fraction_within[2]);
  return 0;
}

int cmd_arc_spectrum(const Config& cfg) {
  Material m = cfg.material();
  Kernels k(m);
  auto geom = parse_curve(cfg.curve);
  if (!std::holds_alternative<OpenArc>(geom))
    throw std::runtime_error("arc-spectrum: open arc required");
  auto cald = compose_weighted_calderon(k, std::get<OpenArc>(geom), cfg.n);
  auto eigs = eigenvalues(cald.jw.mat);
  OperatorConstants c = constants(m);
  auto rep = cluster_report(eigs, Complex(c.flat_cluster, 0.0), {0.01, 0.02, 0.05, 0.1, 0.2});
  io::write_spectrum_csv(cfg.out + "_arc_spectrum.csv", rep);
  json side = io::spectrum_sidecar(rep, c, 32);
  side["config"] = config_echo(cfg, "arc-spectrum");
  io::write_text(cfg.out + "_arc_spectrum.json", side.dump(2) + "\n");
  std::printf("eigenvalues: %zu, cluster %.6f, fraction within 0.05: %.3f\n", eigs.size(),
              c.flat_cluster, rep.fraction_within[2]);
  return 0;
}

int cmd_calderon_check(const Config& cfg) {
  Material m = cfg.material();
  Kernels k(m);
  auto geom = parse_curve(cfg.curve);
  if (!std::holds_alternative<ClosedCurve>(geom))
    throw std::runtime_error("calderon-check: closed curve required");
  const auto& curve = std::get<ClosedCurve>(geom);
  std::string csv = "n,residual_ns,residual_sn\n";
  std::vector<double> resids;
  for (int n : {cfg.n / 2, cfg.n}) {
    auto r = calderon_compose(k, curve, n, cfg.seed);
    resids.push_back(r.residual_ns);
    csv += std::to_string(n) + "," + io::fmt(r.residual_ns) + "," + io::fmt(r.residual_sn) + "\n";
    std::printf("n=%d residual_ns=%.3e residual_sn=%.3e\n", n, r.residual_ns, r.residual_sn);
  }
  io::write_text(cfg.out + "_calderon.csv", csv);
  json side = config_echo(cfg, "calderon-check");
  bool ok = resids.back() <= cfg.tol && resids.back() <= resids.front();
  side["pass"] = ok;
  side["residuals"] = resids;
  io::write_text(cfg.out + "_calderon.json", side.dump(2) + "\n");
  if (!ok) {
    std::fprintf(stderr, "calderon-check FAILED: residual %.3e tol %.3e\n", resids.back(),
                 cfg.tol);
    return 1;
  }
  return 0;
}

int cmd_diag_test(const Config& cfg) {
  Material m = cfg.material();
  m.omega = 0.0;  // identities are frequency-free
  OperatorConstants c = constants(m);
  require_admissible(m);
  FlatOps ops(c);
  const int M = cfg.n;
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
  std::string csv = "n,err_j0_roundtrip,err_ct0,err_t0c,err_n0_compose,err_d0_identity\n";
  double worst = 0.0;
  for (int n = 0; n <= M - 3; ++n) {
    VecXc x = VecXc::Zero(M), y = VecXc::Zero(M);
    x[n] = 1.0;
    y[n] = 1.0;
    VecXc x0 = x, y0 = y;
    ops.j0(x, y);
    ops.j0_inverse(x, y);
    double e_round = std::max((x - x0).cwiseAbs().maxCoeff(), (y - y0).cwiseAbs().maxCoeff());

    VecXc cv = VecXc::Zero(M);
    cv[n] = 1.0;
    VecXc ct = basis::c_map(basis::t0_map(cv));
    double e_ct0 = 0.0;
    for (int j = 0; j < M; ++j) {
      Complex got = j < ct.size() ? ct[j] : Complex(0);
      e_ct0 = std::max(e_ct0, std::abs(got - Complex(j == n ? 1.0 : 0.0)));
    }
    double e_t0c = 0.0;
    if (n >= 1) {
      VecXc tc = basis::t0_map(basis::c_map(cv));
      for (int j = 0; j < M; ++j) {
        Complex got = j < tc.size() ? tc[j] : Complex(0);
        e_t0c = std::max(e_t0c, std::abs(got - Complex(j == n ? 1.0 : 0.0)));
      }
    }
    // N0 composed vs closed form
    VecXc t = basis::t0_map(cv);
    VecXc tx = t, ty = t;
    ops.v0(tx, ty);
    VecXc dx = basis::d0_map(tx);
    VecXc n0c = ops.n0(cv);
    double e_n0 = 0.0;
    for (int j = 0; j < M; ++j) {
      Complex got = j < dx.size() ? dx[j] : Complex(0);
      e_n0 = std::max(e_n0, std::abs(got - n0c[j]));
    }
    // D0 = -pi^2 vkern_log^2 C (V0^{-1})^2 on e_n, n >= 1
    double e_d0 = 0.0;
    if (n >= 1) {
      VecXc vx = cv, vy = cv;
      ops.v0_inverse(vx, vy);
      ops.v0_inverse(vx, vy);
      VecXc cc = basis::c_map(vx);
      VecXc d0c = basis::d0_map(cv);
      for (int j = 0; j < std::max<Eigen::Index>(cc.size(), d0c.size()); ++j) {
        Complex lhs = j < d0c.size() ? d0c[j] : Complex(0);
        Complex rhs = j < cc.size()
                          ? Complex(-pi * pi * c.vkern_log * c.vkern_log) * cc[j]
                          : Complex(0);
        e_d0 = std::max(e_d0, std::abs(lhs - rhs));
      }
    }
    worst = std::max({worst, e_round, e_ct0, e_t0c, e_n0, e_d0});
    csv += std::to_string(n) + "," + io::fmt(e_round) + "," + io::fmt(e_ct0) + "," +
           io::fmt(e_t0c) + "," + io::fmt(e_n0) + "," + io::fmt(e_d0) + "\n";
  }
  io::write_text(cfg.out + "_diag.csv", csv);
  json side = config_echo(cfg, "diag-test");
  side["worst_error"] = worst;
  side["pass"] = worst <= tol;
  io::write_text(cfg.out + "_diag.json", side.dump(2) + "\n");
  std::printf("diag-test worst error over n<=%d: %.3e (tol %.1e) -> %s\n", M - 3, worst, tol,
              worst <= tol ? "pass" : "FAIL");
  return worst <= tol ? 0 : 1;
}

int cmd_solve(const Config& cfg) {
  Material m = cfg.material();
  auto geom = parse_curve(cfg.curve);
  IncidentField inc = make_incident(cfg);
  SolveResult res;
  if (cfg.bc == "dirichlet") {
    res = solve_dirichlet(m, geom, cfg.n,
                          [&](const Vec2& x) { return Vec2c(-inc.value(m, x)); },
                          cfg.precondition, cfg.tol);
  } else {
    res = solve_neumann(m, geom, cfg.n,
                        [&](const Vec2& x, const Vec2& nu) { return Vec2c(-inc.traction(m, x, nu)); },
                        cfg.precondition, cfg.tol);
  }
  // scattered field on a ring of radius 3x geometry scale
  std::vector<Vec2> pts;
  for (int i = 0; i < 72; ++i) {
    double a = 2.0 * pi * i / 72;
    pts.emplace_back(6.0 * std::cos(a), 6.0 * std::sin(a));
  }
  auto vals = evaluate_field(res, pts);
  io::write_field_csv(cfg.out + "_field.csv", pts, vals);
  json rep = config_echo(cfg, "solve");
  rep["iterations"] = res.iterations;
  rep["residuals"] = res.residuals;
  rep["converged"] = res.converged;
  io::write_text(cfg.out + "_solve.json", rep.dump(2) + "\n");
  std::printf("%s solve on %s: %d iterations, final residual %.3e\n", cfg.bc.c_str(),
              cfg.curve.c_str(), res.iterations,
              res.residuals.empty() ? 0.0 : res.residuals.back());
  return res.converged ? 0 : 1;
}

int cmd_iters(const Config& cfg) {
  Material m = cfg.material();
  auto geom = parse_curve(cfg.curve);
  IncidentField inc = make_incident(cfg);
  auto bc = [&](const Vec2& x) { return Vec2c(-inc.value(m, x)); };
  SolveResult plain = solve_dirichlet(m, geom, cfg.n, bc, false, cfg.tol);
  SolveResult pre = solve_dirichlet(m, geom, cfg.n, bc, true, cfg.tol);
  std::string csv = "method,iterations,final_residual\n";
  csv += "plain," + std::to_string(plain.iterations) + "," + io::fmt(plain.residuals.back()) + "\n";
  csv += "preconditioned," + std::to_string(pre.iterations) + "," + io::fmt(pre.residuals.back()) +
         "\n";
  io::write_text(cfg.out + "_iters.csv", csv);
  json side = config_echo(cfg, "iters");
  side["plain_iterations"] = plain.iterations;
  side["preconditioned_iterations"] = pre.iterations;
  bool ok = pre.iterations < plain.iterations;
  side["pass"] = ok;
  io::write_text(cfg.out + "_iters.json", side.dump(2) + "\n");
  std::printf("plain: %d iterations, preconditioned: %d iterations\n", plain.iterations,
              pre.iterations);
  if (!ok) {
    std::fprintf(stderr, "iters FAILED: preconditioned (%d) not fewer than plain (%d)\n",
                 pre.iterations, plain.iterations);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  // config file defaults first, explicit flags override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        load_json_defaults(cfg, argv[i + 1]);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
    }

  CLI::App app{"elastodynamic boundary integral operators: spectra, Calderon "
               "compositions and preconditioned scattering solves"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file with defaults");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda, "first Lame parameter");
    sub->add_option("--mu", cfg.mu, "shear modulus");
    sub->add_option("--mu-tilde", cfg.mu_tilde, "generalized traction parameter");
    sub->add_option("--rho", cfg.rho, "mass density");
    sub->add_option("--omega", cfg.omega, "angular frequency");
    sub->add_option("--curve", cfg.curve, "curve spec, e.g. kite or arc:parabola");
    sub->add_option("-n,--n", cfg.n, "node / mode count");
    sub->add_option("--tol", cfg.tol, "tolerance");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.out, "output path prefix");
  };

  auto* c_const = app.add_subcommand("constants", "material constants + mu~ sweep CSV");
  add_common(c_const);
  c_const->add_option("--sweep-min", cfg.sweep_min, "sweep lower bound");
  c_const->add_option("--sweep-max", cfg.sweep_max, "sweep upper bound");
  c_const->add_option("--sweep-steps", cfg.sweep_steps, "sweep sample count");
  auto* c_spec = app.add_subcommand("spectrum", "closed-curve composition spectrum");
  add_common(c_spec);
  auto* c_arc = app.add_subcommand("arc-spectrum", "weighted arc composition spectrum");
  add_common(c_arc);
  auto* c_cald = app.add_subcommand("calderon-check", "Calderon identity residual");
  add_common(c_cald);
  auto* c_diag = app.add_subcommand("diag-test", "flat-arc basis identities");
  add_common(c_diag);
  auto* c_solve = app.add_subcommand("solve", "scattering solve");
  add_common(c_solve);
  c_solve->add_option("--bc", cfg.bc, "dirichlet | neumann");
  c_solve->add_option("--incident", cfg.incident, "plane-p | plane-s | point");
  c_solve->add_option("--dir-x", cfg.dir_x, "incident direction x");
  c_solve->add_option("--dir-y", cfg.dir_y, "incident direction y");
  c_solve->add_option("--src-x", cfg.src_x, "point source x");
  c_solve->add_option("--src-y", cfg.src_y, "point source y");
  c_solve->add_flag("--precondition", cfg.precondition, "Calderon preconditioning");
  auto* c_iters = app.add_subcommand("iters", "plain vs preconditioned iteration comparison");
  add_common(c_iters);
  c_iters->add_option("--bc", cfg.bc, "dirichlet | neumann");
  c_iters->add_option("--incident", cfg.incident, "plane-p | plane-s | point");
  c_iters->add_option("--dir-x", cfg.dir_x, "incident direction x");
  c_iters->add_option("--dir-y", cfg.dir_y, "incident direction y");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_const)) return cmd_constants(cfg);
    if (app.got_subcommand(c_spec)) return cmd_spectrum(cfg);
    if (app.got_subcommand(c_arc)) return cmd_arc_spectrum(cfg);
    if (app.got_subcommand(c_cald)) return cmd_calderon_check(cfg);
    if (app.got_subcommand(c_diag)) return cmd_diag_test(cfg);
    if (app.got_subcommand(c_solve)) return cmd_solve(cfg);
    if (app.got_subcommand(c_iters)) return cmd_iters(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
