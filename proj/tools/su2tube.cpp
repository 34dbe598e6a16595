// su2tube: command-line front end.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 domain inconsistency or blow-up.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cli_parse.hpp"
#include "su2tube/connection.hpp"
#include "su2tube/geodesic.hpp"
#include "su2tube/integrability.hpp"
#include "su2tube/jacobi.hpp"
#include "su2tube/report.hpp"

namespace {

using namespace su2tube;
using cli::UsageError;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kDomain = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signals a domain outcome that has already been reported.
struct DomainExit {
  std::string message;
};

struct Common {
  std::string lambda;
  double berger = 0.0;
  std::string out;
  std::string format;
  std::uint64_t seed = 1;
};

MetricParams metric_from(const Common& c) {
  if (!c.lambda.empty() && c.berger != 0.0) throw UsageError("--lambda and --berger are exclusive");
  try {
    if (c.berger != 0.0) return MetricParams::berger(c.berger);
    if (c.lambda.empty()) throw UsageError("one of --lambda or --berger is required");
    const auto l = cli::parse_triple(c.lambda);
    return {l[0], l[1], l[2]};
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

BodyVector body_from(const std::string& s) {
  const auto v = cli::parse_triple(s);
  return {v[0], v[1], v[2]};
}

// Writes to --out (or stdout) only after the whole payload is ready.
void emit(const Common& c, const std::string& payload) {
  if (c.out.empty() || c.out == "-") {
    std::cout << payload;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file '" + c.out + "'");
  f << payload;
  f.close();
  if (!f) throw IoError("failed writing '" + c.out + "'");
}

std::string format_or(const Common& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

int cmd_curvature(const Common& c) {
  const MetricParams p = metric_from(c);
  const auto j = curvature_report(p);
  if (format_or(c, "json") == "json") {
    emit(c, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "k12,k13,k23,k_min,k_max,nonnegative\n"
     << format_double(j["sectional"]["k12"]) << ',' << format_double(j["sectional"]["k13"]) << ','
     << format_double(j["sectional"]["k23"]) << ',' << format_double(j["range"]["k_min"]) << ','
     << format_double(j["range"]["k_max"]) << ',' << (j["nonnegative"].get<bool>() ? "true" : "false") << '\n';
  emit(c, os.str());
  return kOk;
}

struct GeodesicOpts {
  std::string init;
  std::string path = "0,10";
  double step = 1e-3;
  std::string integrator = "rk4";
  bool expect_blowup = false;
  std::size_t every = 1;
  bool frame = false;
};

int cmd_geodesic(const Common& c, const GeodesicOpts& g) {
  const MetricParams p = metric_from(c);
  if (g.init.empty()) throw UsageError("--init is required");
  if (!(g.step > 0.0)) throw UsageError("--step must be positive");
  if (g.every == 0) throw UsageError("--every must be positive");
  const ComplexBodyVector v0 = complexify(body_from(g.init));
  PathSpec ps;
  ps.waypoints = cli::parse_path(g.path);
  ps.step = g.step;
  if (g.integrator == "rk4") {
    ps.integrator = Integrator::Rk4;
  } else if (g.integrator == "dp45") {
    ps.integrator = Integrator::DormandPrince45;
  } else {
    throw UsageError("--integrator must be rk4 or dp45");
  }
  try {
    ps.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  std::vector<TrajectorySample> samples;
  std::size_t seen = 0;
  auto obs = [&](const TrajectorySample& s) {
    if (seen++ % g.every == 0) samples.push_back(s);
  };
  std::optional<BlowUp> blow;
  TrajectorySample last;
  if (g.frame) {
    GeodesicState s0{GroupPoint::identity(), v0, ps.waypoints.front()};
    const auto run = integrate_frame(p, s0, ps, {}, obs);
    blow = run.blow_up;
    last = {run.state.time, run.state.body, run.state.frame.scaled_det_error()};
  } else {
    const auto run = integrate_body(p, v0, ps, {}, obs);
    blow = run.blow_up;
    last = {run.zeta, run.body, 0.0};
  }
  if (samples.empty() || samples.back().zeta != last.zeta) samples.push_back(last);

  std::ostringstream os;
  write_trajectory_csv(os, p, samples);
  if (blow) {
    double s_star = std::abs(blow->zeta_estimate - ps.waypoints.front());
    // A single ray from the origin gets the refined crossing point.
    if (ps.waypoints.size() == 2 && ps.waypoints.front() == 0.0) {
      const Complex end = ps.waypoints.back();
      const auto rep = detect_blowup(p, v0, end, std::abs(end), ps.step);
      if (rep.outcome == BlowUpReport::Outcome::BlowUp) s_star = rep.s_star;
    }
    os << "# blowup,re_zeta,im_zeta,re_estimate,im_estimate,magnitude,s_star\n"
       << "# blowup," << format_double(blow->zeta_reached.real()) << ','
       << format_double(blow->zeta_reached.imag()) << ',' << format_double(blow->zeta_estimate.real())
       << ',' << format_double(blow->zeta_estimate.imag()) << ',' << format_double(blow->magnitude) << ','
       << format_double(s_star) << '\n';
  }
  emit(c, os.str());
  if (blow && !g.expect_blowup) {
    throw DomainExit{"blow-up near zeta = " + format_double(blow->zeta_estimate.real()) + " + " +
                     format_double(blow->zeta_estimate.imag()) + "i"};
  }
  if (!blow && g.expect_blowup) throw DomainExit{"expected a blow-up, the run stayed finite"};
  return kOk;
}

struct SweepOpts {
  std::string range = "1.1..5";
  double step = 0.1;
};

int cmd_focal_sweep(const Common& c, const SweepOpts& s) {
  const auto [lo, hi] = cli::parse_range(s.range);
  if (!(s.step > 0.0)) throw UsageError("--step must be positive");
  if (!(lo > 0.0)) throw UsageError("lambda range must be positive");
  const auto rows = focal_sweep(lo, hi, s.step);
  if (format_or(c, "csv") == "csv") {
    std::ostringstream os;
    write_focal_csv(os, rows);
    emit(c, os.str());
  } else {
    emit(c, focal_json(rows).dump(2) + "\n");
  }
  return kOk;
}

struct ClassifyOpts {
  std::string init;
  std::string em;
};

int cmd_classify(const Common& c, const ClassifyOpts& o) {
  const MetricParams p = metric_from(c);
  if (o.init.empty() == o.em.empty()) throw UsageError("give exactly one of --init or --em");
  std::optional<BodyVector> x;
  IntegralValues iv;
  if (!o.init.empty()) {
    x = body_from(o.init);
    iv = integrals(p, *x);
  } else {
    const auto [e, m] = cli::parse_pair(o.em);
    iv = {e, m};
    require_realizable(p, iv);
  }
  if (format_or(c, "json") != "json") throw UsageError("classify writes json only");
  emit(c, classification_report(p, iv, x).dump(2) + "\n");
  return kOk;
}

struct BlowupOpts {
  std::string init;
  std::size_t directions = 1;
  double theta0 = 1.5707963267948966;
  double radius = 50.0;
  double step = 1e-3;
  std::size_t random = 0;
  bool locate = false;
};

int cmd_blowup(const Common& c, const BlowupOpts& o) {
  const MetricParams p = metric_from(c);
  if (o.init.empty() == (o.random == 0)) throw UsageError("give exactly one of --init or --random");
  if (!(o.radius > 0.0) || !(o.step > 0.0) || o.directions == 0) throw UsageError("bad scan parameters");
  std::vector<BodyVector> inits;
  if (!o.init.empty()) {
    inits.push_back(body_from(o.init));
  } else {
    std::mt19937_64 eng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < o.random; ++k) {
      const double a = u(eng), b = u(eng), cc = u(eng);
      inits.push_back({a, b, cc});
    }
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : inits) {
    nlohmann::json j;
    j["init"] = {x[0], x[1], x[2]};
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : scan_directions(p, complexify(x), o.directions, o.radius, o.step, o.theta0))
      reps.push_back(blowup_report(r));
    j["directions"] = reps;
    if (o.locate) {
      const auto ps = locate_pole(p, complexify(x), std::polar(1.0, o.theta0), o.radius, o.step);
      j["pole"] = {{"found", ps.found}};
      if (ps.found) {
        j["pole"]["zeta"] = {ps.pole.real(), ps.pole.imag()};
        j["pole"]["residue_norm"] = coord_norm(ps.residue);
        j["pole"]["residue_defect"] = ps.residue_defect;
      }
    }
    out.push_back(j);
  }
  if (format_or(c, "json") != "json") throw UsageError("blowup writes json only");
  emit(c, out.dump(2) + "\n");
  return kOk;
}

void add_metric(CLI::App* sub, Common& c) {
  sub->add_option("--lambda", c.lambda, "Eigenvalues a,b,c of A");
  sub->add_option("--berger", c.berger, "Berger parameter: lambda = (1,1,x)");
}

void add_output(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left-invariant metrics on SU(2): curvature, complexified geodesics, focal times"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized inputs")->capture_default_str();

  auto* curv = app.add_subcommand("curvature", "Connection, sectional curvatures and curvature range");
  add_metric(curv, common);
  add_output(curv, common);

  GeodesicOpts gopt;
  auto* geo = app.add_subcommand("geodesic", "Integrate the Euler equations along a complex path");
  add_metric(geo, common);
  add_output(geo, common);
  geo->add_option("--init", gopt.init, "Initial body vector a,b,c");
  geo->add_option("--path", gopt.path, "Waypoints z0,z1,... (e.g. 0,5i)")->capture_default_str();
  geo->add_option("--step", gopt.step, "Step size")->capture_default_str();
  geo->add_option("--integrator", gopt.integrator, "rk4 or dp45")->capture_default_str();
  geo->add_option("--every", gopt.every, "Write every n-th sample")->capture_default_str();
  geo->add_flag("--frame", gopt.frame, "Integrate the SL(2,C) frame as well");
  geo->add_flag("--expect-blowup", gopt.expect_blowup, "A blow-up is the expected outcome");

  SweepOpts sopt;
  auto* sweep = app.add_subcommand("focal-sweep", "Focal time t*(lambda) over a range");
  add_output(sweep, common);
  sweep->add_option("--range", sopt.range, "lo..hi")->capture_default_str();
  sweep->add_option("--step", sopt.step, "Lambda increment")->capture_default_str();

  ClassifyOpts copt;
  auto* cls = app.add_subcommand("classify", "Genericity and class of the integral curve");
  add_metric(cls, common);
  add_output(cls, common);
  cls->add_option("--init", copt.init, "Body vector a,b,c");
  cls->add_option("--em", copt.em, "Integral values e,m");

  BlowupOpts bopt;
  auto* blow = app.add_subcommand("blowup", "Scan complex directions for finite-time blow-up");
  add_metric(blow, common);
  add_output(blow, common);
  blow->add_option("--init", bopt.init, "Body vector a,b,c");
  blow->add_option("--random", bopt.random, "Number of random initial vectors (uses --seed)");
  blow->add_option("--directions", bopt.directions, "Number of directions")->capture_default_str();
  blow->add_option("--theta0", bopt.theta0, "First direction angle")->capture_default_str();
  blow->add_option("--radius", bopt.radius, "Maximal |zeta|")->capture_default_str();
  blow->add_option("--step", bopt.step, "Step size")->capture_default_str();
  blow->add_flag("--locate", bopt.locate, "Also search for the nearest pole");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*curv) return cmd_curvature(common);
    if (*geo) return cmd_geodesic(common, gopt);
    if (*sweep) return cmd_focal_sweep(common, sopt);
    if (*cls) return cmd_classify(common, copt);
    if (*blow) return cmd_blowup(common, bopt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainExit& e) {
    std::cerr << e.message << '\n';
    return kDomain;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistent input: " << e.what() << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
