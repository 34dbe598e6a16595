#include "su2tube/report.hpp"

#include <cstdio>
#include <ostream>

#include "su2tube/connection.hpp"

namespace su2tube {

namespace {

using nlohmann::json;

json to_json(const BodyVector& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json curvature_report(const MetricParams& p) {
  json j;
  j["lambdas"] = p.lambdas();
  j["normalization"] = to_string(p.normalization());

  const ConnectionTable t = build_connection(p);
  json conn = json::array();
  for (std::size_t jx = 0; jx < 3; ++jx) {
    for (std::size_t ix = 0; ix < 3; ++ix) {
      conn.push_back({{"j", jx + 1}, {"i", ix + 1}, {"nabla", to_json(t(jx, ix))}});
    }
  }
  j["connection"] = conn;

  const BodyVector e1 = BodyVector::basis(0), e2 = BodyVector::basis(1), e3 = BodyVector::basis(2);
  j["sectional"] = {{"k12", sectional_curvature(p, e1, e2)},
                    {"k13", sectional_curvature(p, e1, e3)},
                    {"k23", sectional_curvature(p, e2, e3)}};
  if (p.is_berger() && p.lambda(0) == 1.0 && p.normalization() == Normalization::Quarter) {
    const auto b = berger_sectional(p.lambda(2));
    j["berger"] = {{"k12", b.k12}, {"k13", b.k13}};
  }
  const CurvatureRange r = curvature_range(p);
  j["range"] = {{"k_min", r.k_min}, {"k_max", r.k_max}, {"method", r.method}};
  j["has_negative"] = r.has_negative;
  j["nonnegative"] = !r.has_negative;
  return j;
}

json classification_report(const MetricParams& p, const IntegralValues& iv,
                           const std::optional<BodyVector>& x) {
  json j;
  j["lambdas"] = p.lambdas();
  if (x) j["x"] = to_json(*x);
  j["e"] = iv.e_val;
  j["m"] = iv.m_val;
  const Genericity g = is_generic(p, iv);
  j["generic"] = g.generic;
  j["margin"] = g.margin;
  j["margins"] = g.margins;
  const CurveClass c = classify_curve(p, iv);
  j["class"] = to_string(c.tag);
  if (c.tag == CurveTag::SplitConics) {
    j["x3_abs"] = c.x3_abs;
    j["split_axis"] = c.split_axis + 1;
  }
  if (c.genus) j["genus"] = *c.genus;
  if (c.witness) {
    json w = json::array();
    for (const auto& z : c.witness->z) w.push_back(to_json(z));
    j["witness"] = w;
  }
  return j;
}

json blowup_report(const BlowUpReport& r) {
  json j;
  j["outcome"] = to_string(r.outcome);
  j["direction"] = to_json(r.direction);
  j["max_abs"] = r.max_abs;
  j["steps"] = r.steps;
  if (r.outcome == BlowUpReport::Outcome::BlowUp) {
    j["s_star"] = r.s_star;
    j["pole_estimate"] = to_json(r.pole_estimate);
    j["miss_distance"] = r.miss_distance;
  }
  return j;
}

double relative_drift(Complex q, Complex q0) {
  const double a = std::abs(q0);
  return a > 0.0 ? std::abs(q - q0) / a : std::abs(q - q0);
}

void write_trajectory_csv(std::ostream& os, const MetricParams& p,
                          const std::vector<TrajectorySample>& samples) {
  os << "re_zeta,im_zeta,re_a,im_a,re_b,im_b,re_c,im_c,e_drift,m_drift,det_err\n";
  if (samples.empty()) return;
  const Complex e0 = energy(p, samples.front().body);
  const Complex m0 = momentum(p, samples.front().body);
  for (const auto& s : samples) {
    os << format_double(s.zeta.real()) << ',' << format_double(s.zeta.imag());
    for (std::size_t i = 0; i < 3; ++i)
      os << ',' << format_double(s.body[i].real()) << ',' << format_double(s.body[i].imag());
    os << ',' << format_double(relative_drift(energy(p, s.body), e0)) << ','
       << format_double(relative_drift(momentum(p, s.body), m0)) << ','
       << format_double(s.det_error) << '\n';
  }
}

void write_focal_csv(std::ostream& os, const std::vector<FocalRow>& rows) {
  os << "lambda,t_star,residual,delta_min_before_root\n";
  for (const auto& r : rows) {
    os << format_double(r.lambda) << ',';
    if (r.t_star) {
      os << format_double(*r.t_star) << ',' << format_double(r.residual) << ','
         << format_double(r.delta_min_before_root) << '\n';
    } else {
      os << "entire,,\n";
    }
  }
}

json focal_json(const std::vector<FocalRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    json j;
    j["lambda"] = r.lambda;
    if (r.t_star) {
      j["t_star"] = *r.t_star;
      j["residual"] = r.residual;
      j["delta_min_before_root"] = r.delta_min_before_root;
    } else {
      j["t_star"] = "entire";
    }
    a.push_back(j);
  }
  return a;
}

}  // namespace su2tube
