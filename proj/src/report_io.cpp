#include "gmreslab/report_io.hpp"

#include <algorithm>

#include "format.hpp"

namespace gmreslab {

namespace {

std::string pad(int indent) { return std::string(static_cast<std::size_t>(std::max(indent, 0)), ' '); }

const char* boolean(bool b) { return b ? "true" : "false"; }

std::string verdict_json(const Verdict& v) {
  std::string s = "{\"name\": \"" + v.name + "\", \"applicable\": " + boolean(v.applicable);
  if (v.applicable) {
    s += ", \"lhs\": " + json_real(v.lhs) + ", \"rhs\": " + json_real(v.rhs) + ", \"slack\": " + json_real(v.slack) +
         ", \"margin\": " + json_real(v.margin);
  } else {
    s += ", \"lhs\": null, \"rhs\": null, \"slack\": " + json_real(v.slack) + ", \"margin\": null";
  }
  s += ", \"passed\": " + std::string(boolean(v.passed)) + ", \"certified\": " + boolean(v.certified) + "}";
  return s;
}

std::string csv_real(double x) {
  const std::string s = json_real(x);
  return s == "null" ? "" : s;
}

}  // namespace

std::string bounds_report_json(const BoundsReport& r, int indent) {
  const std::string in = pad(indent + 2);
  std::string s = "{\n";
  auto field = [&](const char* name, const std::string& value, bool last = false) {
    s += in + "\"" + name + "\": " + value + (last ? "\n" : ",\n");
  };
  field("k", std::to_string(r.k));
  field("trials", std::to_string(r.trials));
  field("gmres_ratio", json_real(r.gmres_ratio));
  field("gmres_min", json_real(r.gmres_min));
  field("gmres_median", json_real(r.gmres_median));
  field("gmres_max", json_real(r.gmres_max));
  field("worst_case", json_real(r.worst_case));
  field("worst_case_upper", json_real(r.worst_case_upper));
  field("ideal", json_real(r.ideal));
  field("ideal_lower", json_real(r.ideal_lower));
  field("ideal_certified", boolean(r.ideal_certified));
  std::string poly = "[";
  for (std::size_t i = 0; i < r.ideal_polynomial.coeffs.size(); ++i)
    poly += (i ? ", " : "") + json_complex(r.ideal_polynomial.coeffs[i]);
  field("ideal_polynomial", poly + "]");
  field("elman_rhs", r.elman_rhs ? json_real(*r.elman_rhs) : "null");
  field("starke_rhs", json_real(r.starke_rhs));
  field("nu_A", json_real(r.nu_A));
  field("nu_Ainv", json_real(r.nu_Ainv));
  field("lambda_min_M", json_real(r.lambda_min_M));
  field("lambda_max_AHA", json_real(r.lambda_max_AHA));
  std::string verdicts = "[";
  for (std::size_t i = 0; i < r.verdicts.size(); ++i)
    verdicts += (i ? ",\n" : "\n") + pad(indent + 4) + verdict_json(r.verdicts[i]);
  verdicts += r.verdicts.empty() ? "]" : "\n" + in + "]";
  field("verdicts", verdicts, true);
  return s + pad(indent) + "}";
}

std::string experiment_report_json(const MatrixSpec& spec, std::span<const BoundsReport> reports) {
  std::string s = "{\n  \"matrix\": " + matrix_spec_json(spec) + ",\n  \"reports\": [";
  for (std::size_t i = 0; i < reports.size(); ++i) s += (i ? ",\n    " : "\n    ") + bounds_report_json(reports[i], 4);
  s += reports.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return s;
}

std::string curves_csv(std::span<const BoundsReport> reports) {
  std::string s = "k,gmres_min,gmres_median,gmres_max,worst_case,ideal,starke_rhs,elman_rhs\n";
  for (const auto& r : reports) {
    s += std::to_string(r.k) + ',' + csv_real(r.gmres_min) + ',' + csv_real(r.gmres_median) + ',' +
         csv_real(r.gmres_max) + ',' + csv_real(r.worst_case) + ',' + csv_real(r.ideal) + ',' +
         csv_real(r.starke_rhs) + ',' + (r.elman_rhs ? csv_real(*r.elman_rhs) : "") + '\n';
  }
  return s;
}

std::string fov_boundary_csv(const FovBoundary& b) {
  std::string s = "angle,re,im,support_max,support_min\n";
  for (std::size_t i = 0; i < b.points.size(); ++i)
    s += csv_real(b.angles[i]) + ',' + csv_real(b.points[i].real()) + ',' + csv_real(b.points[i].imag()) + ',' +
         csv_real(b.support_max[i]) + ',' + csv_real(b.support_min[i]) + '\n';
  return s;
}

}  // namespace gmreslab
