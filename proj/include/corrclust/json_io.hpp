#pragma once

#include <string>

#include "corrclust/decomposition.hpp"
#include "corrclust/oracle.hpp"
#include "corrclust/relaxation.hpp"
#include "corrclust/rounding.hpp"

namespace corrclust {

// Reals are printed with 17 significant digits so dumps parse back to the
// same doubles. All documents carry "schema": 1.

std::string solution_to_json(const FractionalSolution& sol, const NormSpec& q);

std::string report_to_json(const RoundingReport& report, const ProfitAudit* audit,
                           const DecompositionTrace* decomposition);

std::string trace_to_json(const DecompositionTrace& trace);

std::string format_real(double v);

}  // namespace corrclust
