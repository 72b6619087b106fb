#pragma once

#include <string>
#include <vector>

#include "isosys/analysis.hpp"
#include "isosys/dual.hpp"
#include "isosys/primal.hpp"
#include "isosys/rp2.hpp"

namespace isosys::io {

// All emitters are deterministic for fixed inputs; the optional timestamp
// header is the only run-dependent line.
std::string timestamp_header(bool enabled);

void write_file(const std::string& path, const std::string& content);

// table mirroring the paper layout: N_c, A, P, rho2(0,0)[, 2nu for dual]
std::string table_csv(const std::vector<RunReport>& rows, bool with_nu, bool timestamp);

std::string run_report_json(const RunReport& report);

std::string fit_json(const ExtrapolationFit& fit,
                     const std::vector<std::pair<int, double>>& samples);

std::string geodesics_csv(const std::vector<GeodesicSet>& sets, bool timestamp);

// self-contained SVG of the polygon with iso-lines
std::string geodesics_svg(int n, const std::vector<GeodesicSet>& sets);

std::string comparison_csv(const HemisphereComparison& cmp, bool timestamp);

// (x, y, Omega) at centroids and (x, y, phi1) at vertices
std::string primal_solution_csv(const PrimalSolution& sol, bool timestamp);
std::string dual_solution_csv(const DualSolution& sol, bool timestamp);

}  // namespace isosys::io
