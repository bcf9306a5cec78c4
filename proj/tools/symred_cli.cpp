// Batch command line tool: JSON in, JSON/CSV out.
//
// Exit codes: 0 success, 1 a checked criterion failed, 2 malformed input
// (bad flags, unreadable files, schema violations), 3 structurally valid but
// unsupported input (domain errors from the library).
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "symred/bohr.hpp"
#include "symred/connection.hpp"
#include "symred/curve.hpp"
#include "symred/errors.hpp"
#include "symred/json_io.hpp"
#include "symred/rbar.hpp"
#include "symred/redmeasure.hpp"
#include "symred/su2.hpp"
#include "symred/transport.hpp"
#include "symred/verify.hpp"

namespace {

using namespace symred;

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

void emit_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
  f << text;
}

void emit_json(const std::string& out_path, const Json& j) {
  emit_text(out_path, j.dump(2) + "\n");
}

// Each connection family is paired with the symmetry it is invariant under.
Symmetry home_symmetry(const InvariantConnection& w) {
  struct Visitor {
    Symmetry operator()(const IsotropicConn&) const {
      return make_symmetry(SymTag::HomogeneousIsotropic);
    }
    Symmetry operator()(const SphericalConn&) const {
      return make_symmetry(SymTag::SphericallySymmetric);
    }
    Symmetry operator()(const HomogeneousConn&) const {
      return make_symmetry(SymTag::Homogeneous);
    }
    Symmetry operator()(const SemiHomogeneousConn& s) const {
      return make_semi_homogeneous(s.w1, s.w2);
    }
  };
  return std::visit(Visitor{}, w);
}

Json matrix_json(const GroupElement2& h) {
  const Mat2c m = to_matrix(h);
  Json rows = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 2; ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

int cmd_transport(const std::string& conn_path, const std::string& curve_path,
                  const std::string& oracle, int steps, const std::string& out_path) {
  if (!oracle.empty() && oracle != "ode")
    throw std::invalid_argument("unknown oracle: " + oracle);
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const InvariantConnection w = connection_from_json(load_json_file(conn_path));
  const Curve c = curve_from_json(load_json_file(curve_path));
  const GroupElement2 h = transport_closed(w, home_symmetry(w), c).h;

  Json out;
  out["holonomy"] = to_json(h);
  out["matrix"] = matrix_json(h);
  if (oracle == "ode") {
    const GroupElement2 hode = transport_ode(to_gauge_field(w), c, steps).h;
    out["oracle"] = "ode";
    out["steps"] = steps;
    out["residual"] = dist(h, hode);
  }
  emit_json(out_path, out);
  return 0;
}

int cmd_verify_all(std::uint64_t seed, int samples, std::optional<double> tol,
                   const std::string& out_path) {
  if (samples < 1000) throw std::invalid_argument("samples must be at least 1000");
  if (tol.has_value() && !(*tol > 0.0))
    throw std::invalid_argument("tol must be positive");
  VerifyOptions opt;
  opt.seed = seed;
  opt.samples = samples;
  opt.tol = tol;

  Json report;
  report["seed"] = seed;
  report["samples"] = samples;
  if (tol.has_value()) report["tol"] = *tol;
  Json list = Json::array();
  bool all = true;
  for (const CriterionResult& r : run_all(opt)) {
    Json item;
    item["id"] = r.id;
    item["pass"] = r.pass;
    item["measured"] = r.measured;
    item["bound"] = r.bound;
    item["detail"] = r.detail;
    list.push_back(item);
    all = all && r.pass;
  }
  report["criteria"] = list;
  report["all_pass"] = all;
  emit_json(out_path, report);
  return all ? 0 : 1;
}

int cmd_invariance(const std::string& conn_path, const std::string& sym_path,
                   const std::string& curve_path, int samples, std::uint64_t seed,
                   double tol, const std::string& out_path) {
  if (samples < 1000) throw std::invalid_argument("samples must be at least 1000");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const InvariantConnection w = connection_from_json(load_json_file(conn_path));
  const Symmetry sym = symmetry_from_json(load_json_file(sym_path));
  const Curve c = curve_from_json(load_json_file(curve_path));
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i)
    worst = std::max(worst, equivariance_residual(w, sym, sample_sym(sym, rng), c));
  Json out;
  out["residual"] = worst;
  out["samples"] = samples;
  out["tol"] = tol;
  out["pass"] = worst <= tol;
  emit_json(out_path, out);
  return worst <= tol ? 0 : 1;
}

int cmd_wang(const std::string& conn_path, const std::string& sym_path,
             const std::string& out_path) {
  const InvariantConnection w = connection_from_json(load_json_file(conn_path));
  const Symmetry sym = symmetry_from_json(load_json_file(sym_path));
  const Eigen::MatrixXd m = wang_reduce(w, sym);
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["matrix"] = rows;
  emit_json(out_path, out);
  return 0;
}

int cmd_classify(const std::string& sym_path, const std::string& curve_path,
                 const std::string& out_path) {
  const Symmetry sym = symmetry_from_json(load_json_file(sym_path));
  const Curve c = curve_from_json(load_json_file(curve_path));
  const CurveClass cls = classify(sym, c);
  const char* name = "";
  switch (cls) {
    case CurveClass::LAG: name = "LAG"; break;
    case CurveClass::FreeNonSym: name = "FreeNonSym"; break;
    case CurveClass::FreeSym: name = "FreeSym"; break;
    case CurveClass::Unsupported: name = "Unsupported"; break;
  }
  emit_text(out_path, std::string(name) + "\n");
  return 0;
}

int cmd_bohr(const std::string& module_path, std::optional<double> x,
             const std::string& element_path, const std::string& tuple_path,
             const std::string& out_path) {
  if (x.has_value() == !element_path.empty())
    throw std::invalid_argument("provide exactly one of --x and --element");
  const FreqModule m = module_from_json(load_json_file(module_path));
  const BohrElement psi = x.has_value()
                              ? embed(m, *x)
                              : bohr_from_json(m, load_json_file(element_path));
  Json out;
  out["module"] = to_json(m);
  out["element"] = to_json(m, psi);
  if (!tuple_path.empty()) {
    const FreqTuple L = freq_tuple_from_json(load_json_file(tuple_path));
    Json proj = Json::array();
    for (const Cx& z : project(m, psi, L))
      proj.push_back(Json::array({z.real(), z.imag()}));
    out["tuple"] = to_json(L);
    out["projection"] = proj;
  }
  emit_json(out_path, out);
  return 0;
}

int cmd_rbar_image(double tau, double r, int nmax, const std::string& out_path) {
  if (!(tau > 0.0) || !(tau < 2.0 * M_PI))
    throw std::invalid_argument("tau must lie strictly between 0 and 2*pi");
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (nmax < 1) throw std::invalid_argument("nmax must be at least 1");
  const FreqModule m = make_module({"rtau"}, {r * tau});
  std::string csv = "n,a_n,dist_to_center,merge_bound\n";
  for (int n = 1; n <= nmax; ++n) {
    const double an = a_n(n, tau, r);
    const GroupElement2 g = pi_circ(m, RealPoint{an}, tau, r);
    csv += std::to_string(n) + "," + g17(an) + "," + g17(dist_to_center(g)) + "," +
           g17(merge_bound(n, tau, r)) + "\n";
  }
  emit_text(out_path, csv);
  return 0;
}

int cmd_measure_sample(const std::string& spec_path, int n, std::uint64_t seed,
                       const std::string& out_path) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const LagFactorSpec spec = lag_spec_from_json(load_json_file(spec_path));
  Rng rng(seed);

  std::string csv = "draw";
  for (std::size_t k = 0; k < spec.factors.size(); ++k) {
    const std::string p = "f" + std::to_string(k);
    csv += "," + p + "_zero";
    if (spec.factors[k].kind != TypeKind::T1)
      for (const std::string& lbl : spec.module.labels)
        csv += "," + p + "_" + lbl + "_re," + p + "_" + lbl + "_im";
    if (spec.factors[k].kind == TypeKind::T3) csv += "," + p + "_vre," + p + "_vim";
    if (spec.factors[k].kind == TypeKind::T4)
      csv += "," + p + "_vx," + p + "_vy," + p + "_vz";
  }
  csv += "\n";

  for (int i = 0; i < n; ++i) {
    const std::vector<XgpPoint> pts = lag_sample(spec, rng);
    csv += std::to_string(i);
    for (const XgpPoint& pt : pts) {
      csv += pt.zero_class ? ",1" : ",0";
      if (pt.tag.kind != TypeKind::T1)
        for (const Cx& z : pt.psi.vals)
          csv += "," + g17(z.real()) + "," + g17(z.imag());
      if (pt.tag.kind == TypeKind::T3)
        csv += "," + g17(pt.v_circle.real()) + "," + g17(pt.v_circle.imag());
      if (pt.tag.kind == TypeKind::T4)
        csv += "," + g17(pt.v_sphere.x()) + "," + g17(pt.v_sphere.y()) + "," +
               g17(pt.v_sphere.z());
    }
    csv += "\n";
  }
  emit_text(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry-reduction toolkit: holonomies of invariant connections, "
               "compactified-line truncations, and invariant-homomorphism checks"};
  app.require_subcommand(1);

  std::string conn_path, curve_path, sym_path, module_path, element_path, tuple_path,
      spec_path, out_path, oracle;
  std::uint64_t seed = 2014;
  int steps = 1024, samples = 100000, nmax = 8, nrows = 16;
  double tol = 1e-8, tau = M_PI, radius = 1.0, xval = 0.0;

  CLI::App* t = app.add_subcommand("transport", "holonomy along a curve, as a JSON matrix");
  t->add_option("--conn", conn_path, "connection JSON file")->required();
  t->add_option("--curve", curve_path, "curve JSON file")->required();
  t->add_option("--oracle", oracle, "independent comparison: ode");
  t->add_option("--steps", steps, "integration steps for the ode oracle");
  t->add_option("--out", out_path, "write output to this file");

  CLI::App* v = app.add_subcommand("verify-all", "run every acceptance criterion");
  v->add_option("--seed", seed, "random seed");
  v->add_option("--samples", samples, "Monte Carlo sample count");
  CLI::Option* vtol = v->add_option("--tol", tol, "override the residual bounds");
  v->add_option("--out", out_path, "write the JSON report to this file");

  CLI::App* iv = app.add_subcommand("invariance",
                                    "holonomy conjugation residual over sampled group elements");
  iv->add_option("--conn", conn_path, "connection JSON file")->required();
  iv->add_option("--sym", sym_path, "symmetry JSON file")->required();
  iv->add_option("--curve", curve_path, "curve JSON file")->required();
  iv->add_option("--samples", samples, "sampled group elements");
  iv->add_option("--seed", seed, "random seed");
  iv->add_option("--tol", tol, "pass bound on the residual");
  iv->add_option("--out", out_path, "write output to this file");

  CLI::App* wg = app.add_subcommand("wang", "reduced linear map of an invariant connection");
  wg->add_option("--conn", conn_path, "connection JSON file")->required();
  wg->add_option("--sym", sym_path, "symmetry JSON file")->required();
  wg->add_option("--out", out_path, "write output to this file");

  CLI::App* cl = app.add_subcommand("classify", "orbit class of a curve under a symmetry");
  cl->add_option("--sym", sym_path, "symmetry JSON file")->required();
  cl->add_option("--curve", curve_path, "curve JSON file")->required();
  cl->add_option("--out", out_path, "write output to this file");

  CLI::App* bo = app.add_subcommand("bohr", "characters of a frequency module");
  bo->add_option("--module", module_path, "module JSON file")->required();
  CLI::Option* bx = bo->add_option("--x", xval, "embed this real number");
  bo->add_option("--element", element_path, "element JSON file");
  bo->add_option("--tuple", tuple_path, "project onto this frequency tuple");
  bo->add_option("--out", out_path, "write output to this file");

  CLI::App* ri = app.add_subcommand("rbar-image", "circle-projection image data as CSV");
  ri->add_option("--tau", tau, "angle of the circle")->required();
  ri->add_option("--r", radius, "radius of the circle")->required();
  ri->add_option("--nmax", nmax, "largest special-parameter index");
  ri->add_option("--out", out_path, "write output to this file");

  CLI::App* ms = app.add_subcommand("measure-sample",
                                    "draw factor coordinates of an orbit-sector law as CSV");
  ms->add_option("--spec", spec_path, "factor specification JSON file")->required();
  ms->add_option("--n", nrows, "number of draws");
  ms->add_option("--seed", seed, "random seed");
  ms->add_option("--out", out_path, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(t))
      return cmd_transport(conn_path, curve_path, oracle, steps, out_path);
    if (app.got_subcommand(v)) {
      std::optional<double> tol_opt;
      if (vtol->count() > 0) tol_opt = tol;
      return cmd_verify_all(seed, samples, tol_opt, out_path);
    }
    if (app.got_subcommand(iv))
      return cmd_invariance(conn_path, sym_path, curve_path, samples, seed, tol, out_path);
    if (app.got_subcommand(wg)) return cmd_wang(conn_path, sym_path, out_path);
    if (app.got_subcommand(cl)) return cmd_classify(sym_path, curve_path, out_path);
    if (app.got_subcommand(bo)) {
      std::optional<double> x;
      if (bx->count() > 0) x = xval;
      return cmd_bohr(module_path, x, element_path, tuple_path, out_path);
    }
    if (app.got_subcommand(ri)) return cmd_rbar_image(tau, radius, nmax, out_path);
    if (app.got_subcommand(ms))
      return cmd_measure_sample(spec_path, nrows, seed, out_path);
  } catch (const Json::parse_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "unsupported input: %s\n", e.what());
    return 3;
  }
  return 2;
}
