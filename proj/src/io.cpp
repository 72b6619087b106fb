#include "isosys/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isosys::io {

namespace {

std::string fmt(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::string timestamp_header(bool enabled) {
    if (!enabled) return "";
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "# generated: %Y-%m-%dT%H:%M:%SZ\n", std::gmtime(&t));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string table_csv(const std::vector<RunReport>& rows, bool with_nu, bool timestamp) {
    std::ostringstream os;
    os << timestamp_header(timestamp);
    os << "N_c,A,P,rho2_origin" << (with_nu ? ",2nu" : "") << "\n";
    for (const RunReport& r : rows) {
        os << r.resolution << "," << fmt(r.area) << "," << fmt(r.perimeter) << ","
           << fmt(r.rho2_origin);
        if (with_nu) os << "," << fmt(2.0 * r.nu);
        os << "\n";
    }
    return os.str();
}

std::string run_report_json(const RunReport& r) {
    std::ostringstream os;
    os << "{\n"
       << "  \"schema_version\": 1,\n"
       << "  \"n\": " << r.n << ",\n"
       << "  \"resolution\": " << r.resolution << ",\n"
       << "  \"kind\": \"" << r.kind << "\",\n"
       << "  \"area\": " << fmt(r.area, "%.12g") << ",\n"
       << "  \"perimeter\": " << fmt(r.perimeter, "%.12g") << ",\n"
       << "  \"edge_length\": " << fmt(r.edge_length, "%.12g") << ",\n"
       << "  \"nu\": " << fmt(r.nu, "%.12g") << ",\n"
       << "  \"rho2_origin\": " << fmt(r.rho2_origin, "%.12g") << ",\n"
       << "  \"residuals\": {\n"
       << "    \"area_minus_n_nu\": " << fmt(r.res_area_nu, "%.6g") << ",\n"
       << "    \"perimeter_minus_4A\": " << fmt(r.res_perimeter_area, "%.6g") << ",\n"
       << "    \"edge_minus_2nu\": " << fmt(r.res_edge_nu, "%.6g") << ",\n"
       << "    \"dual_primal_gap\": " << (std::isnan(r.dual_primal_gap)
                                              ? std::string("null")
                                              : fmt(r.dual_primal_gap, "%.6g"))
       << "\n  },\n"
       << "  \"pass\": {\n"
       << "    \"area_nu\": " << (r.pass_area_nu ? "true" : "false") << ",\n"
       << "    \"perimeter_area\": " << (r.pass_perimeter_area ? "true" : "false") << "\n  },\n"
       << "  \"seconds\": " << fmt(r.seconds, "%.3f") << "\n"
       << "}\n";
    return os.str();
}

std::string fit_json(const ExtrapolationFit& fit,
                     const std::vector<std::pair<int, double>>& samples) {
    std::ostringstream os;
    os << "{\n  \"schema_version\": 1,\n  \"quantity\": \"" << fit.quantity << "\",\n"
       << "  \"samples\": [";
    for (size_t i = 0; i < samples.size(); ++i) {
        os << (i ? "," : "") << "[" << samples[i].first << "," << fmt(samples[i].second, "%.12g")
           << "]";
    }
    os << "],\n  \"a\": " << fmt(fit.a, "%.12g") << ",\n  \"b\": " << fmt(fit.b, "%.12g")
       << ",\n  \"b_defined\": " << (fit.b_defined ? "true" : "false")
       << ",\n  \"q_star\": " << fmt(fit.q_star, "%.12g") << "\n}\n";
    return os.str();
}

std::string geodesics_csv(const std::vector<GeodesicSet>& sets, bool timestamp) {
    std::ostringstream os;
    os << timestamp_header(timestamp);
    os << "band,level,polyline,point,x,y\n";
    for (const GeodesicSet& s : sets) {
        int pl = 0;
        for (const auto& line : s.polylines) {
            int pt = 0;
            for (const Vec2& p : line)
                os << s.band << "," << fmt(s.level) << "," << pl << "," << pt++ << ","
                   << fmt(p.x) << "," << fmt(p.y) << "\n";
            ++pl;
        }
    }
    return os.str();
}

std::string geodesics_svg(int n, const std::vector<GeodesicSet>& sets) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-650 -650 1300 1300\">\n"
       << "<g transform=\"scale(1,-1)\">\n";
    PolygonSpec poly = build_polygon(n);
    os << "<polygon points=\"";
    for (const Vec2& v : poly.vertices) os << fmt(v.x * 1000, "%.2f") << "," << fmt(v.y * 1000, "%.2f") << " ";
    os << "\" style=\"fill:none;stroke:#000000;stroke-width:3\"/>\n";
    for (const GeodesicSet& s : sets) {
        const char* color = palette[(s.band - 1) % 8];
        for (const auto& line : s.polylines) {
            os << "<polyline points=\"";
            for (const Vec2& p : line)
                os << fmt(p.x * 1000, "%.2f") << "," << fmt(p.y * 1000, "%.2f") << " ";
            os << "\" style=\"fill:none;stroke:" << color << ";stroke-width:1.5\"/>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string comparison_csv(const HemisphereComparison& cmp, bool timestamp) {
    std::ostringstream os;
    os << timestamp_header(timestamp);
    os << "x,y,rho2_dual,rho2_hemisphere,abs_deviation\n";
    for (const auto& row : cmp.rows)
        os << fmt(row.p.x) << "," << fmt(row.p.y) << "," << fmt(row.rho2_dual) << ","
           << fmt(row.rho2_hemisphere) << "," << fmt(std::abs(row.rho2_dual - row.rho2_hemisphere))
           << "\n";
    os << "# max_deviation(|z|<=0.35)," << fmt(cmp.max_deviation) << "\n";
    os << "# mean_deviation(|z|<=0.35)," << fmt(cmp.mean_deviation) << "\n";
    return os.str();
}

std::string primal_solution_csv(const PrimalSolution& sol, bool timestamp) {
    std::ostringstream os;
    os << timestamp_header(timestamp);
    os << "site,x,y,value\n";
    const Mesh& m = *sol.mesh;
    for (int t = 0; t < m.plaquette_count(); ++t)
        os << "omega," << fmt(m.centroids[t].x) << "," << fmt(m.centroids[t].y) << ","
           << fmt(sol.omega.values[t]) << "\n";
    for (int v = 0; v < m.vertex_count(); ++v)
        os << "phi1," << fmt(m.vertices[v].x) << "," << fmt(m.vertices[v].y) << ","
           << fmt(sol.phi1.values[v]) << "\n";
    return os.str();
}

std::string dual_solution_csv(const DualSolution& sol, bool timestamp) {
    std::ostringstream os;
    os << timestamp_header(timestamp);
    os << "site,x,y,value\n";
    const Mesh& m = *sol.mesh;
    for (int t = 0; t < m.plaquette_count(); ++t)
        os << "rho2," << fmt(m.centroids[t].x) << "," << fmt(m.centroids[t].y) << ","
           << fmt(sol.rho.values[t] * sol.rho.values[t]) << "\n";
    for (int v = 0; v < m.vertex_count(); ++v)
        os << "varphi1," << fmt(m.vertices[v].x) << "," << fmt(m.vertices[v].y) << ","
           << fmt(sol.varphi1.values[v]) << "\n";
    return os.str();
}

}  // namespace isosys::io
