#pragma once

// Serialization of results: JSON reports and full-precision CSV tables.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "su2tube/geodesic.hpp"
#include "su2tube/integrability.hpp"
#include "su2tube/jacobi.hpp"
#include "su2tube/lie.hpp"

namespace su2tube {

/// %.17g: enough digits to round-trip any double.
std::string format_double(double x);

nlohmann::json curvature_report(const MetricParams& p);

/// Genericity, curve class and, when applicable, the split parameter. x is
/// echoed when the integrals came from a vector.
nlohmann::json classification_report(const MetricParams& p, const IntegralValues& iv,
                                     const std::optional<BodyVector>& x = std::nullopt);

nlohmann::json blowup_report(const BlowUpReport& r);

/// Relative change |q - q0| / |q0| (absolute when q0 = 0).
double relative_drift(Complex q, Complex q0);

/// Columns: re_zeta, im_zeta, re_a, im_a, re_b, im_b, re_c, im_c, e_drift,
/// m_drift, det_err. Drifts are relative to the first sample.
void write_trajectory_csv(std::ostream& os, const MetricParams& p,
                          const std::vector<TrajectorySample>& samples);

/// Columns: lambda, t_star, residual, delta_min_before_root. Rows without a
/// focal time read "entire" with the remaining fields empty.
void write_focal_csv(std::ostream& os, const std::vector<FocalRow>& rows);

nlohmann::json focal_json(const std::vector<FocalRow>& rows);

}  // namespace su2tube
