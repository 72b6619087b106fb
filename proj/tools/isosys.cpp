// Command-line front end: extremal isosystolic metrics on regular 2n-gons.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "isosys/analysis.hpp"
#include "isosys/io.hpp"
#include "isosys/parallel.hpp"
#include "isosys/rp2.hpp"
#include "isosys/variational.hpp"

namespace fs = std::filesystem;
using namespace isosys;

namespace {

struct CommonOpts {
    int n = 3;
    double tol = 1e-7;
    int max_iter = 200000;
    uint64_t seed = 0;
    std::string outdir;
    bool no_timestamp = false;
    bool serial = false;
    std::string scheme = "auto";

    std::string out() const {
        if (!outdir.empty()) return outdir;
        const char* env = std::getenv("ISOSYS_OUTPUT_DIR");
        return env ? env : ".";
    }
    bool stamp() const { return !no_timestamp; }
};

MeshScheme pick_scheme(const std::string& name, int n) {
    if (name == "general") return MeshScheme::GeneralSimilar;
    if (name == "hexagon") return MeshScheme::HexagonParallelogram;
    // auto: the paper's hexagon discretization for n = 3, general otherwise
    return n == 3 ? MeshScheme::HexagonParallelogram : MeshScheme::GeneralSimilar;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

SolveOptions solver_options(const CommonOpts& c) {
    SolveOptions opt;
    opt.tol = c.tol;
    opt.max_iter = c.max_iter;
    opt.seed = c.seed;
    return opt;
}

int run_solve(const CommonOpts& c, const std::string& nc_list, const std::string& kind,
              bool emit_solutions, const std::string& trace) {
    par::set_parallel(!c.serial);
    fs::create_directories(c.out());
    const bool do_primal = kind == "primal" || kind == "both";
    const bool do_dual = kind == "dual" || kind == "both";
    std::vector<RunReport> primal_rows, dual_rows;
    bool all_converged = true;
    for (int Nc : parse_int_list(nc_list)) {
        Mesh mesh = make_domain_mesh(c.n, Nc, pick_scheme(c.scheme, c.n));
        SolveOptions opt = solver_options(c);
        if (!trace.empty())
            opt.trace_path = (fs::path(c.out()) /
                              ("trace_n" + std::to_string(c.n) + "_nc" + std::to_string(Nc) + ".csv"))
                                 .string();
        PrimalSolution psol;
        DualSolution dsol;
        auto t0 = std::chrono::steady_clock::now();
        if (do_primal) {
            psol = solve_primal(mesh, c.n, c.tol, &opt);
            all_converged = all_converged && psol.diagnostics.converged;
        }
        if (do_dual) {
            dsol = solve_dual(mesh, c.n, c.tol, &opt);
            all_converged = all_converged && dsol.diagnostics.converged;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (do_dual) {
            RunReport r = check_identities(do_primal ? &psol : nullptr, dsol, c.n);
            r.seconds = secs;
            dual_rows.push_back(r);
            io::write_file((fs::path(c.out()) / ("report_dual_n" + std::to_string(c.n) + "_nc" +
                                                 std::to_string(Nc) + ".json"))
                               .string(),
                           io::run_report_json(r));
            if (emit_solutions)
                io::write_file((fs::path(c.out()) / ("solution_dual_n" + std::to_string(c.n) +
                                                     "_nc" + std::to_string(Nc) + ".csv"))
                                   .string(),
                               io::dual_solution_csv(dsol, c.stamp()));
        }
        if (do_primal) {
            RunReport r;
            r.n = c.n;
            r.resolution = Nc;
            r.kind = "primal";
            r.area = psol.objective;
            r.perimeter = perimeter(psol.omega, mesh, c.n);
            r.edge_length = r.perimeter / (2.0 * c.n);
            // origin estimate from the centroids nearest the origin
            double dmin = 1e300;
            for (const Vec2& cc : mesh.centroids) dmin = std::min(dmin, cc.norm());
            double sum = 0.0;
            int cnt = 0;
            for (int t = 0; t < mesh.plaquette_count(); ++t)
                if (mesh.centroids[t].norm() <= dmin + 1e-12) {
                    sum += psol.omega.values[t];
                    ++cnt;
                }
            r.rho2_origin = sum / cnt;
            r.seconds = secs;
            primal_rows.push_back(r);
            io::write_file((fs::path(c.out()) / ("report_primal_n" + std::to_string(c.n) + "_nc" +
                                                 std::to_string(Nc) + ".json"))
                               .string(),
                           io::run_report_json(r));
            if (emit_solutions)
                io::write_file((fs::path(c.out()) / ("solution_primal_n" + std::to_string(c.n) +
                                                     "_nc" + std::to_string(Nc) + ".csv"))
                                   .string(),
                               io::primal_solution_csv(psol, c.stamp()));
        }
        std::string line = "n=" + std::to_string(c.n) + " N_c=" + std::to_string(Nc);
        if (do_primal) line += "  primal A=" + std::to_string(psol.objective);
        if (do_dual) line += "  dual A=" + std::to_string(dsol.objective);
        std::printf("%s\n", line.c_str());
    }
    if (!primal_rows.empty())
        io::write_file((fs::path(c.out()) / ("table_primal_n" + std::to_string(c.n) + ".csv")).string(),
                       io::table_csv(primal_rows, false, c.stamp()));
    if (!dual_rows.empty())
        io::write_file((fs::path(c.out()) / ("table_dual_n" + std::to_string(c.n) + ".csv")).string(),
                       io::table_csv(dual_rows, true, c.stamp()));
    return all_converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal isosystolic metrics on regular 2n-gons"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    CommonOpts c;
    app.add_option("--tol", c.tol, "solver tolerance");
    app.add_option("--max-iter", c.max_iter, "solver iteration cap");
    app.add_option("--seed", c.seed, "deterministic seed");
    app.add_option("--out", c.outdir, "output directory (default $ISOSYS_OUTPUT_DIR or .)");
    app.add_flag("--no-timestamp", c.no_timestamp, "suppress timestamp header lines");
    app.add_flag("--serial", c.serial, "force the serial reference kernels");
    app.add_option("--scheme", c.scheme, "mesh scheme: auto|general|hexagon")
        ->check(CLI::IsMember({"auto", "general", "hexagon"}));

    auto* solve_cmd = app.add_subcommand("solve", "solve primal/dual programs");
    std::string nc_list = "2,4,8,16", kind = "both", trace;
    bool emit_solutions = false;
    solve_cmd->add_option("--n", c.n, "polygon half-count n (P_2n)")->required();
    solve_cmd->add_option("--nc", nc_list, "comma-separated N_c list");
    solve_cmd->add_option("--kind", kind)->check(CLI::IsMember({"primal", "dual", "both"}));
    solve_cmd->add_flag("--emit-solutions", emit_solutions, "dump solution fields as CSV");
    solve_cmd->add_option("--trace", trace, "write iteration traces (any value enables)");

    auto* geo_cmd = app.add_subcommand("geodesics", "extract iso-lines of the dual potentials");
    int geo_nc = 16;
    std::string levels_str = "0.1,0.25,0.4", bands_str;
    geo_cmd->add_option("--n", c.n)->required();
    geo_cmd->add_option("--nc", geo_nc);
    geo_cmd->add_option("--levels", levels_str, "levels as fractions of nu/2, in (-1,1)");
    geo_cmd->add_option("--bands", bands_str, "band list (default: all)");

    auto* conv_cmd = app.add_subcommand("converge", "extrapolate a quantity to N_c -> infinity");
    std::string conv_nc = "2,4,8,16,32", quantity = "A", conv_kind = "dual";
    conv_cmd->add_option("--n", c.n)->required();
    conv_cmd->add_option("--nc", conv_nc);
    conv_cmd->add_option("--quantity", quantity)->check(CLI::IsMember({"A", "P", "rho0", "nu"}));
    conv_cmd->add_option("--kind", conv_kind)->check(CLI::IsMember({"primal", "dual"}));

    auto* rp2_cmd = app.add_subcommand("rp2-check", "sum-rule and metric identities on RP2");
    int grid = 10, rp2_bands = 8;
    rp2_cmd->add_option("--n", c.n);
    rp2_cmd->add_option("--grid", grid);
    rp2_cmd->add_option("--bands", rp2_bands);

    auto* var_cmd = app.add_subcommand("variational-check", "verify the new variational principle");
    int var_points = 50, var_bands = 3;
    var_cmd->add_option("--n", c.n);
    var_cmd->add_option("--points", var_points);
    var_cmd->add_option("--bands", var_bands);

    auto* cmp_cmd = app.add_subcommand("compare-rp2", "dual metric vs hemisphere metric");
    int cmp_nc = 16;
    cmp_cmd->add_option("--n", c.n)->required();
    cmp_cmd->add_option("--nc", cmp_nc);

    CLI11_PARSE(app, argc, argv);
    par::set_parallel(!c.serial);
    fs::create_directories(c.out());

    try {
        if (*solve_cmd) return run_solve(c, nc_list, kind, emit_solutions, trace);

        if (*geo_cmd) {
            Mesh mesh = make_domain_mesh(c.n, geo_nc, pick_scheme(c.scheme, c.n));
            DualSolution dsol = solve_dual(mesh, c.n, c.tol);
            std::vector<int> bands;
            if (bands_str.empty())
                for (int a = 1; a <= c.n; ++a) bands.push_back(a);
            else
                bands = parse_int_list(bands_str);
            std::vector<GeodesicSet> all;
            for (int a : bands) {
                std::vector<double> levels;
                for (double f : parse_double_list(levels_str)) levels.push_back(f * dsol.nu / 2.0);
                auto sets = extract_geodesics(dsol, a, levels);
                for (auto& s : sets) {
                    if (s.out_of_range)
                        std::fprintf(stderr, "warning: level %g outside (-nu/2, nu/2)\n", s.level);
                    all.push_back(std::move(s));
                }
            }
            io::write_file((fs::path(c.out()) / "geodesics.csv").string(),
                           io::geodesics_csv(all, c.stamp()));
            io::write_file((fs::path(c.out()) / "geodesics.svg").string(),
                           io::geodesics_svg(c.n, all));
            return dsol.diagnostics.converged ? 0 : 3;
        }

        if (*conv_cmd) {
            std::vector<std::pair<int, double>> samples;
            bool all_conv = true;
            for (int Nc : parse_int_list(conv_nc)) {
                Mesh mesh = make_domain_mesh(c.n, Nc, pick_scheme(c.scheme, c.n));
                double value = 0.0;
                if (conv_kind == "dual") {
                    DualSolution d = solve_dual(mesh, c.n, c.tol);
                    all_conv = all_conv && d.diagnostics.converged;
                    if (quantity == "A") value = d.objective;
                    else if (quantity == "P") value = perimeter(metric_from_dual(d), mesh, c.n);
                    else if (quantity == "rho0") value = rho2_origin(d);
                    else value = d.nu;
                } else {
                    PrimalSolution p = solve_primal(mesh, c.n, c.tol);
                    all_conv = all_conv && p.diagnostics.converged;
                    if (quantity == "A") value = p.objective;
                    else if (quantity == "P") value = perimeter(p.omega, mesh, c.n);
                    else if (quantity == "rho0") {
                        double dmin = 1e300;
                        for (const Vec2& cc : mesh.centroids) dmin = std::min(dmin, cc.norm());
                        double sum = 0.0;
                        int cnt = 0;
                        for (int t = 0; t < mesh.plaquette_count(); ++t)
                            if (mesh.centroids[t].norm() <= dmin + 1e-12) {
                                sum += p.omega.values[t];
                                ++cnt;
                            }
                        value = sum / cnt;
                    } else
                        throw std::invalid_argument("quantity nu requires --kind dual");
                }
                samples.push_back({Nc, value});
                std::printf("N_c=%d %s=%.6f\n", Nc, quantity.c_str(), value);
            }
            ExtrapolationFit fit = extrapolate(samples, quantity);
            io::write_file((fs::path(c.out()) / ("converge_" + quantity + "_n" +
                                                 std::to_string(c.n) + ".json"))
                               .string(),
                           io::fit_json(fit, samples));
            std::printf("q_star=%.6f b=%.3f\n", fit.q_star, fit.b);
            return all_conv ? 0 : 3;
        }

        if (*rp2_cmd) {
            if (c.n < 1) throw std::invalid_argument("rp2-check: n must be >= 1");
            double max_sum_rule = 0.0;
            for (int i = 1; i <= grid; ++i) {
                for (int j = 1; j <= grid; ++j) {
                    double r = 0.47 * i / (grid + 1.0);
                    double th = 2.0 * M_PI * j / (grid + 1.0);
                    DiskPoint p{r * std::cos(th), r * std::sin(th)};
                    max_sum_rule = std::max(max_sum_rule, std::abs(sum_rule(p, c.n) - M_PI / c.n));
                }
            }
            double max_h = 0.0;
            const double nu = 2.0 / (M_PI * c.n);
            for (int b = 0; b < rp2_bands; ++b) {
                double phi0 = M_PI * (b + 0.5) / rp2_bands;
                DiskPoint p{0.21, -0.13};
                double h1 = band_density(p, {phi0}, nu);
                double h2 = 0.5 * M_PI * nu * std::cos(band_tilde_phi(p, {phi0})) /
                            std::sin(M_PI * band_length_coordinate(p, {phi0}));
                max_h = std::max(max_h, std::abs(h1 - h2));
            }
            double area = hemisphere_disk_area();
            std::ostringstream os;
            os << "{\n  \"schema_version\": 1,\n  \"n\": " << c.n
               << ",\n  \"grid\": " << grid
               << ",\n  \"max_sum_rule_residual\": " << max_sum_rule
               << ",\n  \"max_density_consistency\": " << max_h
               << ",\n  \"rho2_origin\": " << hemisphere_rho2({0, 0})
               << ",\n  \"disk_area\": " << area
               << ",\n  \"disk_area_minus_2_over_pi\": " << area - 2.0 / M_PI << "\n}\n";
            io::write_file((fs::path(c.out()) / "rp2_check.json").string(), os.str());
            std::printf("sum-rule max residual %.3e, disk area %.10f\n", max_sum_rule, area);
            return max_sum_rule < 1e-8 ? 0 : 4;
        }

        if (*var_cmd) {
            std::mt19937_64 rng(c.seed ? c.seed : 20260810ULL);
            std::uniform_real_distribution<double> uni(0.05, 0.95);
            double max_new = 0.0, max_harm = 0.0, max_feom = 0.0;
            const double bands[3] = {0.3, 1.1, 2.0};
            int accepted = 0;
            while (accepted < var_points) {
                double X = uni(rng), Y = uni(rng);
                double cx = std::cos(M_PI * X), cy = std::cos(M_PI * Y);
                if (cx * cx + cy * cy > 0.81) continue;
                ++accepted;
                for (int b = 0; b < var_bands; ++b) {
                    double phi0 = bands[b % 3];
                    BandDerivatives d = z_band(X, Y, phi0);
                    MetricOffDiagonal f = rp2_off_diagonal(X, Y);
                    LagrangeMultiplier lam = multiplier_field(X, Y, phi0, c.n);
                    max_new = std::max(max_new, std::abs(new_eom_residual(d, f, lam)));
                    max_harm = std::max(max_harm,
                                        std::abs(d.Z_XX + d.Z_YY + 2.0 * f.f * d.Z_XY));
                }
            }
            std::uniform_real_distribution<double> disk(-0.4, 0.4);
            for (int i = 0; i < 20; ++i) {
                double x = disk(rng), y = disk(rng);
                if (x * x + y * y > 0.2 || std::abs(y) < 1e-3 || std::abs(x) < 1e-3) continue;
                max_feom = std::max(max_feom,
                                    std::abs(f_eom_integral({x, y}, c.n) + M_PI / c.n));
            }
            std::ostringstream os;
            os << "{\n  \"schema_version\": 1,\n  \"n\": " << c.n
               << ",\n  \"points\": " << var_points
               << ",\n  \"max_new_eom_residual\": " << max_new
               << ",\n  \"max_harmonic_identity\": " << max_harm
               << ",\n  \"max_f_eom_residual\": " << max_feom << "\n}\n";
            io::write_file((fs::path(c.out()) / "variational_check.json").string(), os.str());
            std::printf("new-EOM max residual %.3e\n", max_new);
            return max_new < 1e-8 ? 0 : 4;
        }

        if (*cmp_cmd) {
            Mesh mesh = make_domain_mesh(c.n, cmp_nc, pick_scheme(c.scheme, c.n));
            DualSolution d = solve_dual(mesh, c.n, c.tol);
            HemisphereComparison cmp = polygon_vs_hemisphere(d, mesh, c.n);
            io::write_file((fs::path(c.out()) / ("compare_rp2_n" + std::to_string(c.n) + ".csv")).string(),
                           io::comparison_csv(cmp, c.stamp()));
            std::printf("max dev %.4f mean dev %.4f (inner |z|<=0.35)\n", cmp.max_deviation,
                        cmp.mean_deviation);
            return d.diagnostics.converged ? 0 : 3;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
