#include "croppest/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "croppest/bifurcation.hpp"
#include "croppest/equilibria.hpp"
#include "croppest/errors.hpp"
#include "croppest/integrate.hpp"
#include "croppest/optimal_control.hpp"

namespace croppest::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const BlowUpError& e) {
        err << "error: integration blew up at t = " << num(e.time()) << ": " << e.what() << '\n';
        return kBlowUp;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kConfigFailure;
    }
}

void write_state(std::ostream& out, const State& s) {
    out << num(s.X) << ',' << num(s.S) << ',' << num(s.I) << ',' << num(s.A);
}

void write_equilibrium_row(std::ostream& out, const ModelParams& p, const Equilibrium& eq, const std::string& r0_col) {
    const auto report = classify(p, eq);
    out << to_string(eq.kind) << ",1,";
    write_state(out, eq.point);
    out << ',' << num(eq.residual_norm) << ',' << to_string(report.verdict) << ','
        << num(report.eigen.max_real_part) << ',' << r0_col << ",\n";
}

void write_missing_row(std::ostream& out, EquilibriumKind kind, const std::string& reason) {
    out << to_string(kind) << ",0,,,,,,,,," << quoted(reason) << '\n';
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        const auto grid = TimeGrid::from_step(0.0, cfg.tf, cfg.dt);
        const auto traj = rk4_forward([&](double, const State& y) { return rhs_uncontrolled(cfg.params, y); },
                                      cfg.initial, grid);
        out << "t,X,S,I,A\n";
        for (std::size_t i = 0; i < traj.nodes.size(); ++i) {
            out << num(grid.time(i)) << ',';
            write_state(out, traj.nodes[i]);
            out << '\n';
        }
        return kSuccess;
    });
}

int cmd_equilibria(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        const ModelParams& p = cfg.params;
        out << "kind,exists,X,S,I,A,residual,verdict,max_real_eig,R0,note\n";
        write_equilibrium_row(out, p, axial(p), "");
        write_equilibrium_row(out, p, pest_free(p), num(r0(p)));

        const auto e2 = susceptible_free(p);
        if (const auto* eq = std::get_if<Equilibrium>(&e2))
            write_equilibrium_row(out, p, *eq, "");
        else
            write_missing_row(out, EquilibriumKind::SusceptibleFree, std::get<Nonexistence>(e2).reason);

        const auto bounds = default_search_bounds(p);
        const auto roots = coexistence(p, bounds);
        if (roots.empty())
            write_missing_row(out, EquilibriumKind::Coexistence,
                              "no admissible root for A in [" + num(bounds.lo) + ", " + num(bounds.hi) + "]");
        for (const auto& eq : roots) write_equilibrium_row(out, p, eq, "");
        return kSuccess;
    });
}

int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err, std::ostream* hopf_out,
                  const HopfScanOptions& hopf) {
    return guarded(err, [&] {
        cfg.validate();
        const ModelParams& p = cfg.params;
        std::vector<Equilibrium> points{axial(p), pest_free(p)};
        if (const auto e2 = susceptible_free(p); std::holds_alternative<Equilibrium>(e2))
            points.push_back(std::get<Equilibrium>(e2));
        for (const auto& eq : coexistence(p)) points.push_back(eq);

        out << "kind,X,S,I,A,C1,C2,C3,C4,C1C2_minus_C3,hurwitz3,rh_stable,verdict,max_real_eig,pure_imaginary,"
               "re1,im1,re2,im2,re3,im3,re4,im4,closed_form_discrepancy\n";
        for (const auto& eq : points) {
            const auto rep = classify(p, eq);
            const auto& m = rep.routh_hurwitz.margins;
            out << to_string(eq.kind) << ',';
            write_state(out, eq.point);
            out << ',' << num(rep.char_poly.c1) << ',' << num(rep.char_poly.c2) << ',' << num(rep.char_poly.c3) << ','
                << num(rep.char_poly.c4) << ',' << num(m.c1c2_minus_c3) << ',' << num(m.hurwitz3) << ','
                << (rep.routh_hurwitz.is_stable ? 1 : 0) << ',' << to_string(rep.verdict) << ','
                << num(rep.eigen.max_real_part) << ',' << (rep.eigen.pure_imaginary_pair ? 1 : 0);
            for (const auto& z : rep.eigen.eigenvalues) out << ',' << num(z.real()) << ',' << num(z.imag());
            out << ',' << (rep.closed_form_eigenvalues ? num(rep.closed_form_discrepancy) : "") << '\n';
        }

        if (hopf_out) {
            const auto scan = hopf_scan(p, hopf);
            std::vector<HopfCandidate> all = scan.candidates;
            all.insert(all.end(), scan.rejected.begin(), scan.rejected.end());
            std::sort(all.begin(), all.end(),
                      [](const auto& a, const auto& b) { return a.alpha_star < b.alpha_star; });
            *hopf_out << "alpha_star,alpha_lo,alpha_hi,psi_lo,psi_hi,psi_star,transversality_slope,omega,accepted\n";
            for (const auto& c : all)
                *hopf_out << num(c.alpha_star) << ',' << num(c.alpha_bracket[0]) << ',' << num(c.alpha_bracket[1])
                          << ',' << num(c.psi_values[0]) << ',' << num(c.psi_values[1]) << ','
                          << num(c.psi_at_star) << ',' << num(c.transversality_slope) << ',' << num(c.omega) << ','
                          << (c.accepted ? 1 : 0) << '\n';
            if (!scan.diagnostic.empty()) err << "hopf scan: " << scan.diagnostic << '\n';
        }
        return kSuccess;
    });
}

int cmd_bifurcate(const RunConfig& cfg, const BifurcateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        if (!ModelParams::member(opts.parameter))
            throw ConfigError("unknown sweep parameter '" + opts.parameter + "'");
        SweepSpec spec;
        spec.parameter = opts.parameter;
        spec.tf = cfg.tf;
        spec.dt = cfg.dt;
        spec.transient_fraction = opts.transient_fraction;
        spec.initial_state = cfg.initial;
        if (opts.steps == 0) {
            spec.values = {opts.from};
        } else {
            for (std::size_t k = 0; k < opts.steps; ++k)
                spec.values.push_back(opts.from + (opts.to - opts.from) * static_cast<double>(k) /
                                                      static_cast<double>(opts.steps));
            spec.values.push_back(opts.to);
        }

        const auto rows = run_sweep(cfg.params, spec, opts.threads);
        out << "value,failed,X_min,X_max,S_min,S_max,I_min,I_max,A_min,A_max,pest_free_verdict,"
               "coexistence_verdicts,note\n";
        std::size_t failures = 0;
        for (const auto& row : rows) {
            out << num(row.parameter_value) << ',' << (row.failed ? 1 : 0);
            if (row.failed) {
                ++failures;
                out << ",,,,,,,,,,," << quoted(row.failure) << '\n';
                continue;
            }
            const auto& lo = row.tail_min;
            const auto& hi = row.tail_max;
            out << ',' << num(lo.X) << ',' << num(hi.X) << ',' << num(lo.S) << ',' << num(hi.S) << ',' << num(lo.I)
                << ',' << num(hi.I) << ',' << num(lo.A) << ',' << num(hi.A) << ','
                << to_string(row.pest_free_verdict) << ',';
            for (std::size_t k = 0; k < row.coexistence.size(); ++k)
                out << (k ? ";" : "") << to_string(row.coexistence[k].verdict);
            out << ",\n";
        }
        if (failures) err << "warning: " << failures << " of " << rows.size() << " rows failed\n";
        return kSuccess;
    });
}

int cmd_optimize(const RunConfig& cfg, const OptimizeOptions& opts, std::ostream& out, std::ostream* history,
                 std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        SweepOptions so;
        so.grid = TimeGrid::from_step(0.0, cfg.tf, cfg.dt);
        so.max_iterations = opts.max_iterations;
        so.tolerance = opts.tolerance;
        so.relaxation_theta = opts.relaxation_theta;
        so.freeze_u1 = opts.freeze_u1;
        so.freeze_u2 = opts.freeze_u2;
        const auto sol = solve(cfg.params, cfg.weights, cfg.initial, so);

        out << "t,X,S,I,A,u1,u2,p1,p2,p3,p4\n";
        for (std::size_t i = 0; i < sol.controls.size(); ++i) {
            const auto& u = sol.controls[i];
            const auto& q = sol.costates[i];
            out << num(so.grid.time(i)) << ',';
            write_state(out, sol.states.nodes[i]);
            out << ',' << num(u.u1) << ',' << num(u.u2) << ',' << num(q.p1) << ',' << num(q.p2) << ',' << num(q.p3)
                << ',' << num(q.p4) << '\n';
        }
        if (history) {
            *history << "iter,J,control_change\n";
            for (std::size_t k = 0; k < sol.objective_history.size(); ++k)
                *history << k + 1 << ',' << num(sol.objective_history[k]) << ','
                         << num(sol.control_change_history[k]) << '\n';
        }

        err << (sol.converged ? "converged" : "not converged") << " after " << sol.iterations_used
            << " iterations; J = " << num(sol.objective) << ", stationarity residual = "
            << num(sol.stationarity_residual) << '\n';
        return sol.converged ? kSuccess : kNotConverged;
    });
}

}  // namespace croppest::cli
