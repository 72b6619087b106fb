#include "isosys/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "isosys/parallel.hpp"

namespace isosys {

namespace {

// splitmix64, deterministic seeding for the power iteration
uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void apply_K(const ConvexProgram& p, const std::vector<double>& x, std::vector<double>& out) {
    par::parallel_for(static_cast<std::size_t>(p.rows()), [&](std::size_t r) {
        double acc = p.offset[r];
        for (int k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) acc += p.val[k] * x[p.col_idx[k]];
        out[r] = acc;
    });
}

void apply_Kt(const ConvexProgram& p, const std::vector<double>& y, std::vector<double>& out) {
    par::parallel_for(static_cast<std::size_t>(p.num_vars), [&](std::size_t c) {
        double acc = 0.0;
        for (int k = p.ct_ptr[c]; k < p.ct_ptr[c + 1]; ++k) acc += p.ct_val[k] * y[p.ct_row[k]];
        out[c] = acc;
    });
}

constexpr int kMaxBands = 32;

// prox of lambda * w * max_b |v_b|^2 at x (nb 2-vectors)
void prox_max_square(double* vx, int nb, double w, double lambda) {
    double s[kMaxBands];
    for (int b = 0; b < nb; ++b) s[b] = std::hypot(vx[2 * b], vx[2 * b + 1]);
    double sorted[kMaxBands];
    std::copy(s, s + nb, sorted);
    std::sort(sorted, sorted + nb, std::greater<double>());
    double t = 0.0, csum = 0.0;
    for (int m = 1; m <= nb; ++m) {
        csum += sorted[m - 1];
        t = csum / (m + 2.0 * w * lambda);
        bool ok_in = sorted[m - 1] >= t - 1e-15;
        bool ok_out = (m == nb) || (sorted[m] <= t + 1e-15);
        if (ok_in && ok_out) break;
    }
    for (int b = 0; b < nb; ++b) {
        if (s[b] > t && s[b] > 0.0) {
            double f = t / s[b];
            vx[2 * b] *= f;
            vx[2 * b + 1] *= f;
        }
    }
}

// prox of lambda * w * (sum_b |v_b|)^2 at x
void prox_sum_square(double* vx, int nb, double w, double lambda) {
    double s[kMaxBands];
    for (int b = 0; b < nb; ++b) s[b] = std::hypot(vx[2 * b], vx[2 * b + 1]);
    double sorted[kMaxBands];
    std::copy(s, s + nb, sorted);
    std::sort(sorted, sorted + nb, std::greater<double>());
    const double c2 = 2.0 * w * lambda;
    double S = 0.0, csum = 0.0;
    for (int m = 1; m <= nb; ++m) {
        csum += sorted[m - 1];
        double Sm = csum / (1.0 + c2 * m);
        bool ok_in = sorted[m - 1] > c2 * Sm - 1e-18;
        bool ok_out = (m == nb) || (sorted[m] <= c2 * Sm + 1e-18);
        S = Sm;
        if (ok_in && ok_out) break;
    }
    for (int b = 0; b < nb; ++b) {
        double u = std::max(0.0, s[b] - c2 * S);
        double f = (s[b] > 0.0) ? u / s[b] : 0.0;
        vx[2 * b] *= f;
        vx[2 * b + 1] *= f;
    }
}

// Huber variant of the sum-square prox: norms |v| replaced by
// sqrt(|v|^2+eps^2)-eps. The softened sum S solves a scalar fixed point;
// S -> sum_b h(u_b(S)) is decreasing, so bisection brackets it.
void prox_sum_square_huber(double* vx, int nb, double w, double lambda, double eps) {
    double s[kMaxBands], u[kMaxBands];
    for (int b = 0; b < nb; ++b) s[b] = std::hypot(vx[2 * b], vx[2 * b + 1]);
    auto solve_u = [&](double S) {
        double c = 2.0 * w * lambda * S;
        for (int b = 0; b < nb; ++b) {
            double x = s[b];
            double t = x;
            for (int it = 0; it < 40; ++it) {  // solve t + c t/sqrt(t^2+eps^2) = x
                double rt = std::sqrt(t * t + eps * eps);
                double f = t + c * t / rt - x;
                double df = 1.0 + c * eps * eps / (rt * rt * rt);
                double step = f / df;
                t -= step;
                if (t < 0.0) t = 0.0;
                if (std::abs(step) < 1e-17 * (1.0 + t)) break;
            }
            u[b] = t;
        }
        double soft = 0.0;
        for (int b = 0; b < nb; ++b) soft += std::sqrt(u[b] * u[b] + eps * eps) - eps;
        return soft;
    };
    double hi = 0.0;
    for (int b = 0; b < nb; ++b) hi += std::sqrt(s[b] * s[b] + eps * eps) - eps;
    double lo = 0.0;
    for (int it = 0; it < 80 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (solve_u(mid) >= mid)
            lo = mid;
        else
            hi = mid;
    }
    solve_u(0.5 * (lo + hi));
    for (int b = 0; b < nb; ++b) {
        double f = (s[b] > 0.0) ? u[b] / s[b] : 0.0;
        vx[2 * b] *= f;
        vx[2 * b + 1] *= f;
    }
}

double norm_estimate(const ConvexProgram& p, uint64_t seed) {
    std::vector<double> v(p.num_vars), kv(p.rows()), ktkv(p.num_vars);
    uint64_t s = seed ^ 0x5bf03635ULL;
    for (auto& vi : v) vi = (splitmix(s) >> 11) * 0x1.0p-53 - 0.5;
    double lam = 1.0;
    for (int it = 0; it < 200; ++it) {
        apply_K(p, v, kv);
        for (int r = 0; r < p.rows(); ++r) kv[r] -= p.offset[r];
        apply_Kt(p, kv, ktkv);
        double nrm = 0.0;
        for (double x : ktkv) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) return 1.0;
        lam = nrm;
        for (int c = 0; c < p.num_vars; ++c) v[c] = ktkv[c] / nrm;
    }
    return std::sqrt(lam) * 1.02;
}

}  // namespace

void ConvexProgram::add_row(const std::vector<std::pair<int, double>>& entries, double off) {
    for (const auto& [c, v] : entries) {
        if (v == 0.0) continue;
        col_idx.push_back(c);
        val.push_back(v);
    }
    row_ptr.push_back(static_cast<int>(col_idx.size()));
    offset.push_back(off);
}

void ConvexProgram::finalize() {
    ct_ptr.assign(num_vars + 1, 0);
    for (int c : col_idx) ++ct_ptr[c + 1];
    for (int c = 0; c < num_vars; ++c) ct_ptr[c + 1] += ct_ptr[c];
    ct_row.resize(col_idx.size());
    ct_val.resize(col_idx.size());
    std::vector<int> fill(ct_ptr.begin(), ct_ptr.end() - 1);
    for (int r = 0; r < rows(); ++r) {
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            int pos = fill[col_idx[k]]++;
            ct_row[pos] = r;
            ct_val[pos] = val[k];
        }
    }
}

bool ConvexProgram::well_formed() const {
    if (nbands <= 0 || nbands > kMaxBands) return false;
    if (rows() != groups() * nbands * 2) return false;
    if (static_cast<int>(x0.size()) != num_vars) return false;
    for (int c : col_idx)
        if (c < 0 || c >= num_vars) return false;
    return ct_ptr.size() == static_cast<size_t>(num_vars) + 1;
}

std::vector<double> group_norms(const ConvexProgram& p, const std::vector<double>& x) {
    std::vector<double> v(p.rows());
    apply_K(p, x, v);
    std::vector<double> norms(static_cast<std::size_t>(p.groups()) * p.nbands);
    for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = std::hypot(v[2 * i], v[2 * i + 1]);
    return norms;
}

double objective_value(const ConvexProgram& p, const std::vector<double>& x) {
    auto norms = group_norms(p, x);
    const int nb = p.nbands;
    double quad = par::block_sum(static_cast<std::size_t>(p.groups()), [&](std::size_t g) {
        if (p.kind == ProgramKind::MinMaxSquare) {
            double m = 0.0;
            for (int b = 0; b < nb; ++b) m = std::max(m, norms[g * nb + b]);
            return p.group_weight[g] * m * m;
        }
        double s = 0.0;
        for (int b = 0; b < nb; ++b) s += norms[g * nb + b];
        return p.group_weight[g] * s * s;
    });
    if (p.kind == ProgramKind::MinMaxSquare) return quad;
    return p.nu_objective_coeff * (p.nu_col >= 0 ? x[p.nu_col] : 0.0) - quad;
}

SolveResult solve(const ConvexProgram& p, const SolveOptions& opt) {
    if (opt.tol <= 0.0) throw std::invalid_argument("solve: tol must be positive");
    if (!p.well_formed()) throw std::invalid_argument("solve: malformed program");

    const double L = norm_estimate(p, opt.seed);
    const double tau = 1.0 / L;
    const double sigma = 1.0 / L;
    const int nb = p.nbands;
    const std::size_t ngroups = p.groups();

    std::vector<double> x = p.x0, xbar = p.x0, xprev(p.num_vars);
    std::vector<double> y(p.rows(), 0.0), z(p.rows()), ktv(p.num_vars);

    FILE* trace = nullptr;
    if (!opt.trace_path.empty()) {
        trace = std::fopen(opt.trace_path.c_str(), "w");
        if (trace) std::fprintf(trace, "iteration,objective,residual\n");
    }

    SolveResult res;
    double obj_prev = objective_value(p, x);
    double last_change = 1.0;
    int stable_checks = 0;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        // dual ascent step with Moreau prox
        apply_K(p, xbar, z);
        par::parallel_for(static_cast<std::size_t>(p.rows()),
                          [&](std::size_t r) { z[r] = y[r] + sigma * z[r]; });
        par::parallel_for(ngroups, [&](std::size_t g) {
            double local[2 * kMaxBands];
            for (int b = 0; b < 2 * nb; ++b) local[b] = z[g * 2 * nb + b] / sigma;
            if (p.kind == ProgramKind::MinMaxSquare)
                prox_max_square(local, nb, p.group_weight[g], 1.0 / sigma);
            else if (opt.huber_eps > 0.0)
                prox_sum_square_huber(local, nb, p.group_weight[g], 1.0 / sigma, opt.huber_eps);
            else
                prox_sum_square(local, nb, p.group_weight[g], 1.0 / sigma);
            for (int b = 0; b < 2 * nb; ++b) y[g * 2 * nb + b] = z[g * 2 * nb + b] - sigma * local[b];
        });
        // primal descent step (objective linear part enters here)
        std::swap(xprev, x);
        apply_Kt(p, y, ktv);
        par::parallel_for(static_cast<std::size_t>(p.num_vars), [&](std::size_t c) {
            double v = xprev[c] - tau * ktv[c];
            x[c] = v;
            xbar[c] = 2.0 * v - xprev[c];
        });
        if (p.nu_col >= 0) {
            x[p.nu_col] += tau * p.nu_objective_coeff;
            xbar[p.nu_col] += 2.0 * tau * p.nu_objective_coeff;
        }

        if ((it + 1) % opt.check_every == 0) {
            double obj = objective_value(p, x);
            last_change = std::abs(obj - obj_prev) / std::max(1.0, std::abs(obj));
            if (trace) std::fprintf(trace, "%d,%.12e,%.3e\n", it + 1, obj, last_change);
            obj_prev = obj;
            if (last_change <= opt.tol) {
                if (++stable_checks >= 3) {
                    ++it;
                    break;
                }
            } else {
                stable_checks = 0;
            }
        }
    }
    if (trace) std::fclose(trace);

    res.x = x;
    res.objective = objective_value(p, x);
    res.iterations = it;
    res.tol_achieved = last_change;
    res.converged = stable_checks >= 3;
    res.feasibility_residual = 0.0;  // cone slots are reconstructed tight
    return res;
}

}  // namespace isosys
