#include "corrclust/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace corrclust {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_array(std::ostringstream& os, const std::vector<double>& values) {
  os << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ",";
    os << format_real(values[i]);
  }
  os << "]";
}

}  // namespace

std::string solution_to_json(const FractionalSolution& sol, const NormSpec& q) {
  std::ostringstream os;
  os << "{\"schema\":1,\"n\":" << sol.n << ",\"q\":";
  if (q.is_infinite())
    os << "\"inf\"";
  else
    os << format_real(q.q());
  os << ",\"value\":" << format_real(sol.value)
     << ",\"lower_bound\":" << format_real(sol.lower_bound)
     << ",\"value_y_branch\":" << format_real(sol.value_y_branch)
     << ",\"value_z_branch\":" << format_real(sol.value_z_branch) << ",\"x\":[";
  bool first = true;
  for (int u = 0; u < sol.n; ++u)
    for (int v = u + 1; v < sol.n; ++v) {  // upper triangle, row major
      if (!first) os << ",";
      first = false;
      os << format_real(sol.at(u, v));
    }
  os << "],\"y\":";
  append_array(os, sol.y);
  os << ",\"z\":";
  if (sol.z) {
    append_array(os, *sol.z);
  } else {
    os << "null";
  }
  os << "}";
  return os.str();
}

std::string trace_to_json(const DecompositionTrace& trace) {
  std::ostringstream os;
  os << "{\"attempts\":[";
  for (std::size_t i = 0; i < trace.attempts.size(); ++i) {
    const auto& a = trace.attempts[i];
    if (i) os << ",";
    os << "{\"eps\":" << format_real(a.eps) << ",\"M\":" << format_real(a.cap_m)
       << ",\"boundary_size\":" << a.boundary_size
       << ",\"success\":" << (a.success ? "true" : "false") << "}";
  }
  os << "],\"fallback\":" << (trace.fallback ? "true" : "false") << "}";
  return os.str();
}

std::string report_to_json(const RoundingReport& report, const ProfitAudit* audit,
                           const DecompositionTrace* decomposition) {
  std::ostringstream os;
  os << "{\"schema\":1,\"clusters\":[";
  auto clusters = report.clustering.clusters();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < clusters[i].size(); ++j) {
      if (j) os << ",";
      os << clusters[i][j];
    }
    os << "]";
  }
  os << "],\"alg\":";
  append_array(os, report.per_vertex_alg.values);
  os << ",\"y\":";
  append_array(os, report.per_vertex_y);
  os << ",\"ratio\":" << format_real(report.ratio_per_vertex)
     << ",\"objective\":" << format_real(report.objective) << ",\"audit\":";
  if (audit) {
    os << "{\"min_profit\":" << format_real(audit->min_profit)
       << ",\"min_negative_step_profit\":" << format_real(audit->min_negative_step_profit) << "}";
  } else {
    os << "null";
  }
  os << ",\"decomposition\":";
  if (decomposition)
    os << trace_to_json(*decomposition);
  else
    os << "null";
  os << "}";
  return os.str();
}

}  // namespace corrclust
