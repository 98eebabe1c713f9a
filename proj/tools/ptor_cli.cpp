#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "ptor/blaschke.hpp"
#include "ptor/checks.hpp"
#include "ptor/errors.hpp"
#include "ptor/flatness.hpp"
#include "ptor/flow.hpp"
#include "ptor/frames.hpp"
#include "ptor/heatmap.hpp"
#include "ptor/pgfb.hpp"
#include "ptor/projective.hpp"

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Deterministic JSON emission: insertion-ordered keys, doubles with 17
/// significant digits.
struct JsonWriter {
  std::string s = "{";
  bool first = true;

  void key(const std::string& k) {
    if (!first) s += ",";
    first = false;
    s += "\"" + k + "\":";
  }
  void field(const std::string& k, double v) {
    key(k);
    s += num(v);
  }
  void field(const std::string& k, long v) {
    key(k);
    s += std::to_string(v);
  }
  void field(const std::string& k, bool v) {
    key(k);
    s += v ? "true" : "false";
  }
  void field(const std::string& k, const std::string& v) {
    key(k);
    s += "\"" + v + "\"";
  }
  void raw(const std::string& k, const std::string& v) {
    key(k);
    s += v;
  }
  std::string close() { return s + "}"; }
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw ptor::error("cannot open config file " + path);
  json j;
  is >> j;
  return j;
}

/// Applies a config-file value to any option the user did not pass on the
/// command line.
void apply_config(const json& cfg, CLI::App* cmd) {
  for (CLI::Option* opt : cmd->get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (!cfg.contains(name)) continue;
    const json& v = cfg.at(name);
    opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    opt->run_callback();
  }
}

ptor::ProjectiveStructure load_structure(const std::string& path,
                                         std::complex<double> tau) {
  const ptor::RawField raw = ptor::read_pgfb(path, tau);
  if (raw.kind != ptor::FieldKind::connection)
    throw ptor::error(path + ": expected a connection field");
  ptor::ConnectionField rep(raw.grid);
  rep.v = raw.v;
  return {rep};
}

ptor::ConformalStructure load_conformal(const std::string& path,
                                        std::complex<double> tau) {
  const ptor::RawField raw = ptor::read_pgfb(path, tau);
  if (raw.kind != ptor::FieldKind::metric)
    throw ptor::error(path + ": expected a metric field");
  ptor::MetricField g(raw.grid);
  g.v = raw.v;
  return ptor::conformal_class(g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for projective surfaces on the torus"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  std::string config_path;
  int threads = 0;
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--threads", threads, "data-parallel thread count");

  // shared parameters
  double tau_re = 0.0, tau_im = 1.0, tol = 1e-8;
  int n = 64;
  std::uint64_t seed = 7;
  std::string p_path, m_path, out_path, trace_path;

  auto add_tau = [&](CLI::App* c) {
    c->add_option("--tau-re", tau_re, "Re of the lattice modulus");
    c->add_option("--tau-im", tau_im, "Im of the lattice modulus");
  };

  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--n", n, "grid resolution");
  verify->add_option("--seed", seed, "random seed");

  CLI::App* energy_cmd = app.add_subcommand("energy", "energy of (p, [g])");
  energy_cmd->add_option("--p", p_path, "connection PGFB")->required();
  energy_cmd->add_option("--m", m_path, "metric PGFB")->required();
  energy_cmd->add_option("--out-density", out_path, "density PGFB output");
  add_tau(energy_cmd);

  CLI::App* extremality =
      app.add_subcommand("extremality", "q-norms of the frame reduction");
  extremality->add_option("--p", p_path, "connection PGFB")->required();
  extremality->add_option("--m", m_path, "metric PGFB")->required();
  extremality->add_option("--tol", tol, "extremality threshold");
  add_tau(extremality);

  CLI::App* wang = app.add_subcommand("wang", "solve the torus Wang equation");
  double c_re = 0.0, c_im = 0.0, wang_tol = 1e-10;
  int max_iter = 30;
  wang->add_option("--c-re", c_re, "Re of the cubic coefficient");
  wang->add_option("--c-im", c_im, "Im of the cubic coefficient");
  wang->add_option("--n", n, "grid resolution");
  wang->add_option("--tol", wang_tol, "residual tolerance");
  wang->add_option("--max-iter", max_iter, "Newton iteration cap");
  wang->add_option("--out", out_path, "conformal factor PGFB output");
  add_tau(wang);

  CLI::App* titeica_cmd =
      app.add_subcommand("titeica", "constant-coefficient convex structure");
  double c_shorthand = 0.0;
  titeica_cmd->add_option("--c", c_shorthand, "real cubic coefficient");
  titeica_cmd->add_option("--c-re", c_re, "Re of the cubic coefficient");
  titeica_cmd->add_option("--c-im", c_im, "Im of the cubic coefficient");
  titeica_cmd->add_option("--n", n, "grid resolution");
  std::string out_p, out_m;
  titeica_cmd->add_option("--out-p", out_p, "connection PGFB output");
  titeica_cmd->add_option("--out-m", out_m, "Blaschke metric PGFB output");
  add_tau(titeica_cmd);

  CLI::App* flow_cmd = app.add_subcommand("flow", "gradient descent over [g]");
  double step = 0.1, tol_q = 1e-6;
  int flow_max_iter = 500;
  flow_cmd->add_option("--p", p_path, "connection PGFB")->required();
  flow_cmd->add_option("--init", m_path, "initial metric PGFB")->required();
  flow_cmd->add_option("--step", step, "initial line-search step");
  flow_cmd->add_option("--max-iter", flow_max_iter, "iteration cap");
  flow_cmd->add_option("--tol-q", tol_q, "stopping q L2-norm");
  flow_cmd->add_option("--trace", trace_path, "trajectory CSV output");
  flow_cmd->add_option("--out", out_path, "final metric PGFB output");
  add_tau(flow_cmd);

  CLI::App* flatness_cmd = app.add_subcommand("flatness", "Liouville report");
  flatness_cmd->add_option("--p", p_path, "connection PGFB")->required();
  flatness_cmd->add_option("--m", m_path, "metric PGFB")->required();
  flatness_cmd->add_option("--tol", tol, "flatness threshold");
  add_tau(flatness_cmd);

  CLI::App* gb = app.add_subcommand("gauss-bonnet", "integral identities");
  gb->add_option("--p", p_path, "connection PGFB")->required();
  gb->add_option("--m", m_path, "metric PGFB")->required();
  add_tau(gb);

  CLI::App* heat = app.add_subcommand("heatmap", "CSV + PPM of a scalar field");
  std::string csv_path, ppm_path;
  int comp = 0;
  heat->add_option("--in", p_path, "input PGFB")->required();
  heat->add_option("--comp", comp, "component index");
  heat->add_option("--csv", csv_path, "CSV output path")->required();
  heat->add_option("--ppm", ppm_path, "PPM output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const json cfg = load_config(config_path);
    CLI::App* active = app.get_subcommands().front();
    apply_config(cfg, active);

    if (threads == 0)
      if (const char* env = std::getenv("PGT_THREADS"))
        threads = std::atoi(env);
    if (threads > 0) ptor::set_num_threads(threads);

    const std::complex<double> tau(tau_re, tau_im);
    JsonWriter out;
    out.field("schema", std::string("ptor-report-v1"));
    int exit_code = 0;

    if (active == verify) {
      out.field("command", std::string("verify"));
      const auto results = ptor::run_checks(suite, n, seed);
      bool all = true;
      std::string arr = "[";
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        all = all && c.pass;
        JsonWriter e;
        e.field("suite", c.suite);
        e.field("name", c.name);
        e.field("max_residual", c.max_residual);
        e.field("tol", c.tol);
        e.field("pass", c.pass);
        arr += (i ? "," : "") + e.close();
      }
      out.raw("checks", arr + "]");
      out.field("pass", all);
      if (!all) exit_code = 1;
    } else if (active == energy_cmd) {
      out.field("command", std::string("energy"));
      const auto p = load_structure(p_path, tau);
      const auto m = load_conformal(m_path, tau);
      out.field("energy", ptor::energy(p, m));
      if (!out_path.empty()) {
        const auto dens =
            ptor::energy_density(p, ptor::representative_metric(m));
        ptor::write_pgfb(out_path, dens, ptor::FieldKind::scalar_real);
      }
    } else if (active == extremality) {
      out.field("command", std::string("extremality"));
      const auto p = load_structure(p_path, tau);
      const auto m = load_conformal(m_path, tau);
      const auto fs = ptor::frame_scalars(p, m);
      double q_max = 0.0;
      ptor::ScalarField q2(fs.a.grid);
      for (std::size_t i = 0; i < q2.v.size(); ++i) {
        q2.v[i] = std::norm(fs.q_covariant.v[i]);
        q_max = std::max(q_max, std::abs(fs.q_covariant.v[i]));
      }
      const double ql2 = std::sqrt(ptor::integrate(q2));
      out.field("q_l2", ql2);
      out.field("q_max", q_max);
      out.field("tol", tol);
      out.field("extremal", ql2 < tol);
    } else if (active == wang) {
      out.field("command", std::string("wang"));
      const ptor::TorusGrid grid(n, tau);
      ptor::CubicDifferential C{ptor::ComplexField(grid)};
      for (auto& z : C.c.v) z = {c_re, c_im};
      const auto sol = ptor::wang_solve(C, wang_tol, max_iter);
      out.field("residual", sol.residual);
      out.field("iterations", static_cast<long>(sol.iterations));
      if (!out_path.empty())
        ptor::write_pgfb(out_path, sol.u, ptor::FieldKind::scalar_real);
    } else if (active == titeica_cmd) {
      out.field("command", std::string("titeica"));
      std::complex<double> c(c_re, c_im);
      if (c == std::complex<double>(0.0, 0.0)) c = c_shorthand;
      const auto [p, g] = ptor::titeica(tau, c, n);
      const auto m = ptor::conformal_class(g);
      out.field("energy", ptor::energy(p, m));
      out.field("q_l2", ptor::q_l2_norm(p, m));
      if (!out_p.empty())
        ptor::write_pgfb(out_p, p.rep, ptor::FieldKind::connection);
      if (!out_m.empty()) ptor::write_pgfb(out_m, g, ptor::FieldKind::metric);
    } else if (active == flow_cmd) {
      out.field("command", std::string("flow"));
      const auto p = load_structure(p_path, tau);
      const auto m0 = load_conformal(m_path, tau);
      const auto traj =
          ptor::descend(p, m0, {step, flow_max_iter, tol_q});
      if (!trace_path.empty()) {
        std::ofstream csv(trace_path);
        csv << "iter,energy,q_l2,step\n";
        for (std::size_t i = 0; i < traj.records.size(); ++i)
          csv << i << "," << num(traj.records[i].energy) << ","
              << num(traj.records[i].q_l2) << ","
              << num(traj.records[i].step) << "\n";
      }
      if (!out_path.empty())
        ptor::write_pgfb(out_path, traj.final, ptor::FieldKind::metric);
      out.field("iterations", static_cast<long>(traj.records.size()));
      out.field("final_energy", traj.records.back().energy);
      out.field("final_q_l2", traj.records.back().q_l2);
    } else if (active == flatness_cmd) {
      out.field("command", std::string("flatness"));
      const auto p = load_structure(p_path, tau);
      const auto m = load_conformal(m_path, tau);
      const auto rep = ptor::is_flat(p, m, tol);
      out.field("max_abs_liouville", rep.max_abs_liouville);
      out.field("tol", rep.tol);
      out.field("flat", rep.flat);
    } else if (active == gb) {
      out.field("command", std::string("gauss-bonnet"));
      const auto p = load_structure(p_path, tau);
      const auto m = load_conformal(m_path, tau);
      const auto rep = ptor::identity_report(p, m);
      out.field("energy", rep.energy);
      out.field("gauss_bonnet_phi", rep.gauss_bonnet_phi);
      out.field("gauss_bonnet_omega", rep.gauss_bonnet_omega);
      out.field("dirichlet_residual", rep.dirichlet_residual);
      out.field("euler_char_target", rep.euler_char_target);
    } else if (active == heat) {
      out.field("command", std::string("heatmap"));
      const ptor::RawField raw = ptor::read_pgfb(p_path);
      if (comp < 0 || comp >= raw.ncomp)
        throw ptor::error("heatmap: component index out of range");
      ptor::ScalarField f(raw.grid);
      for (std::size_t i = 0; i < raw.grid.nodes(); ++i)
        f.v[i] = raw.v[i * raw.ncomp + comp];
      ptor::emit_heatmap(f, csv_path, ppm_path);
      out.field("rows", static_cast<long>(raw.grid.nodes()));
    }

    std::cout << out.close() << "\n";
    return exit_code;
  } catch (const ptor::parse_error& e) {
    std::cerr << "error: " << e.what() << " (offset " << e.offset << ")\n";
    return 2;
  } catch (const ptor::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
