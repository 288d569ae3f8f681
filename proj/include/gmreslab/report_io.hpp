#pragma once

#include <span>
#include <string>

#include "gmreslab/bounds.hpp"
#include "gmreslab/fov.hpp"
#include "gmreslab/generate.hpp"

namespace gmreslab {

/// One report as a JSON object; reals carry 17 significant digits and an
/// absent Elman bound is null.
std::string bounds_report_json(const BoundsReport& r, int indent = 0);

/// {"matrix": <spec>, "reports": [...]}, reports in the given order.
std::string experiment_report_json(const MatrixSpec& spec, std::span<const BoundsReport> reports);

/// Columns: k, gmres_min, gmres_median, gmres_max, worst_case, ideal,
/// starke_rhs, elman_rhs (empty when absent).
std::string curves_csv(std::span<const BoundsReport> reports);

/// Columns: angle, re, im, support_max, support_min.
std::string fov_boundary_csv(const FovBoundary& b);

/// Log10-scale line chart of the curve columns against k.
std::string curves_svg(std::span<const BoundsReport> reports);

}  // namespace gmreslab
