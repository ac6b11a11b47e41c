#include "scalewave/leader.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scalewave/norms.hpp"

namespace scalewave
{
    namespace
    {
        std::vector<double> sub(const std::vector<double> & a, const std::vector<double> & b)
        {
            std::vector<double> out(a.size());
            for (size_t i = 0; i < a.size(); ++i)
                out[i] = a[i] - b[i];
            return out;
        }

        // Inner product of the dual space H_0^1 x L2.
        double dual_inner(const DualVariable & a, const DualVariable & b, double dy)
        {
            return inner_h01_omega(a.f0, b.f0, dy) + inner_l2_omega(a.f1, b.f1, dy);
        }

        double dual_norm(const DualVariable & a, double dy)
        {
            return std::sqrt(std::max(dual_inner(a, a, dy), 0.0));
        }

        DualVariable dual_axpy(const DualVariable & x, double alpha, const DualVariable & d)
        {
            DualVariable out = x;
            for (size_t i = 0; i < out.f0.size(); ++i)
            {
                out.f0[i] += alpha * d.f0[i];
                out.f1[i] += alpha * d.f1[i];
            }
            return out;
        }

        // Norm shrinkage: x * max(0, 1 - w / ||x||), the proximal map of w||.||.
        void shrink(std::vector<double> & x, double weight, double norm)
        {
            const double factor = norm <= weight ? 0.0 : 1.0 - weight / norm;
            for (double & v : x)
                v *= factor;
        }

        struct SmoothEval
        {
            double value = 0.0;
            DualVariable gradient;       ///< Riesz-mapped, lives in H_0^1 x L2
            DualVariable functional;     ///< raw L2 representatives of the derivative
            std::vector<double> control; ///< A* f, the adjoint-trace control
        };
    } // namespace

    AffinePart solve_affine_part(const WaveModel & model, const SpaceTimeField * v2, double sigma,
                                 double tol, double relaxation, int max_iter)
    {
        AffinePart out;
        const Grid & g = model.grid;
        if (!v2)
        {
            // Zero tracking target: the silent-leader response vanishes.
            out.v0_field = SpaceTimeField(g);
            out.p0_field = SpaceTimeField(g);
            out.terminal_position.assign(g.nx + 1, 0.0);
            out.terminal_velocity.assign(g.nx + 1, 0.0);
            return out;
        }
        const std::vector<double> zero_w1(g.nt + 1, 0.0);
        std::vector<double> w2;
        try
        {
            OptimalitySystemSolution sol =
                solve_optimality_core(model, sigma, zero_w1, v2, tol, relaxation, max_iter);
            out.v0_field = sol.v;
            out.p0_field = sol.p;
            out.iterations = sol.iterations;
            w2 = sol.w2.samples;
        }
        catch (const NoConvergence &)
        {
            // Fixed point not contracting for this sigma; same system through CG.
            FollowerSolution sol = solve_follower_core(model, sigma, zero_w1, v2, tol, max_iter);
            out.v0_field = sol.v;
            out.p0_field = sol.p;
            out.iterations = sol.iterations;
            w2 = sol.w2.samples;
        }
        std::vector<double> grad = j2_gradient_core(model, sigma, zero_w1, v2, w2);
        out.residual = norm_l2_sigma(grad, g.dt) / sigma;
        TerminalPair term = terminal_of(out.v0_field, g);
        out.terminal_position = term.position;
        out.terminal_velocity = term.velocity;
        return out;
    }

    std::pair<std::vector<double>, std::vector<double>>
    apply_terminal_map(const WaveModel & model, double sigma, double delta,
                       const std::vector<double> & w1, double inner_tol, int inner_max_iter,
                       std::vector<double> * warm_start)
    {
        const std::vector<double> * guess =
            (warm_start && !warm_start->empty()) ? warm_start : nullptr;
        FollowerSolution sol =
            solve_follower_core(model, sigma, w1, nullptr, inner_tol, inner_max_iter, guess);
        if (warm_start)
            *warm_start = sol.w2.samples;
        TerminalPair term = terminal_of(sol.v, model.grid);
        std::vector<double> eta(term.velocity);
        std::vector<double> zeta(term.position.size());
        for (size_t j = 0; j < zeta.size(); ++j)
        {
            eta[j] += delta * term.position[j];
            zeta[j] = -term.position[j];
        }
        return {std::move(eta), std::move(zeta)};
    }

    CascadeSolution solve_adjoint_cascade(const WaveModel & model, double sigma,
                                          const std::vector<double> & f0, const std::vector<double> & f1,
                                          double tol, int max_iter, double relaxation,
                                          const std::vector<double> * warm_start)
    {
        const Grid & g = model.grid;
        const BoundarySide seg2 = model.geom.follower_side();
        SpaceTimeField zero_rhs(g);
        AdjointField pure = march_backward_transpose(model.coeffs, g, zero_rhs, f0, f1);
        const std::vector<double> d = conormal_trace(pure, g, seg2).samples;
        const double d_norm = norm_l2_sigma(d, g.dt);
        const double target = tol * std::max(1.0, d_norm);

        auto apply_gram = [&](const std::vector<double> & u) {
            SpaceTimeField lifted = boundary_to_state(model.coeffs, g, seg2, u);
            AdjointField adj = march_backward_transpose(model.coeffs, g, scale_kn(model, lifted));
            return conormal_trace(adj, g, seg2).samples;
        };
        auto fixed_point_residual = [&](const std::vector<double> & u, const std::vector<double> & gu) {
            std::vector<double> r(u.size());
            for (size_t i = 0; i < u.size(); ++i)
                r[i] = sigma * u[i] + gu[i] + d[i];
            return norm_l2_sigma(r, g.dt);
        };

        std::vector<double> u(g.nt + 1, 0.0);
        if (warm_start)
            u = *warm_start;

        CascadeSolution out;
        int used = 0;
        double res = 0.0, prev_res = 0.0;
        const int picard_budget = std::min(24, max_iter);
        bool stalled = false;
        for (; used < picard_budget; ++used)
        {
            const std::vector<double> gu = apply_gram(u);
            res = fixed_point_residual(u, gu);
            if (res <= target)
                break;
            if (used >= 2 && res > 0.9 * prev_res)
            {
                stalled = true;
                break;
            }
            prev_res = res;
            for (size_t i = 0; i < u.size(); ++i)
                u[i] = (1.0 - relaxation) * u[i] + relaxation * (-(gu[i] + d[i]) / sigma);
        }
        if (res > target || stalled)
        {
            // Krylov fallback on the fixed-point residual: the reduced operator
            // sigma I + Gram is symmetric positive definite on the trace space.
            std::vector<double> neg_d(d.size());
            for (size_t i = 0; i < d.size(); ++i)
                neg_d[i] = -d[i];
            CgResult cg = cg_sigma(
                [&](const std::vector<double> & w) {
                    std::vector<double> gw = apply_gram(w);
                    for (size_t i = 0; i < gw.size(); ++i)
                        gw[i] += sigma * w[i];
                    return gw;
                },
                neg_d, u, g.dt, target, max_iter);
            u = cg.x;
            used += cg.iterations;
            if (!cg.converged)
                throw NoConvergence("cascade: fixed point and CG both exhausted the budget", u,
                                    cg.history);
        }

        out.feedback_trace = u;
        out.psi = boundary_to_state(model.coeffs, g, seg2, u);
        out.phi = march_backward_transpose(model.coeffs, g, scale_kn(model, out.psi), f0, f1);
        out.iterations = used;
        out.residual = fixed_point_residual(u, conormal_trace(out.phi, g, seg2).samples) /
                       std::max(1.0, d_norm);
        return out;
    }

    BoundaryControl apply_terminal_map_adjoint(const WaveModel & model, double sigma, double delta,
                                               const DualVariable & f, double inner_tol,
                                               int inner_max_iter)
    {
        std::vector<double> f1s = f.f1;
        if (delta != 0.0)
            for (size_t j = 0; j < f1s.size(); ++j)
                f1s[j] -= delta * f.f0[j];
        CascadeSolution cas =
            solve_adjoint_cascade(model, sigma, f.f0, f1s, inner_tol, inner_max_iter);
        BoundaryControl out = conormal_trace(cas.phi, model.grid, model.geom.leader_side());
        for (double & x : out.samples)
            x = -x;
        return out;
    }

    namespace
    {
        // One smooth-part evaluation: value, raw derivative representatives and
        // the Riesz-mapped gradient. Warm starts are threaded through so the
        // inner solves stay cheap along the iteration path.
        SmoothEval smooth_eval(const WaveModel & model, double sigma, double delta,
                               const std::vector<double> & c0, const std::vector<double> & c1,
                               const DualVariable & f, const LeaderOptions & opts,
                               std::vector<double> * cascade_warm, std::vector<double> * terminal_warm,
                               bool need_gradient)
        {
            const Grid & g = model.grid;
            std::vector<double> f1s = f.f1;
            if (delta != 0.0)
                for (size_t j = 0; j < f1s.size(); ++j)
                    f1s[j] -= delta * f.f0[j];
            CascadeSolution cas = solve_adjoint_cascade(model, sigma, f.f0, f1s, opts.inner_tol,
                                                        opts.inner_max_iter, opts.relaxation,
                                                        cascade_warm && !cascade_warm->empty()
                                                            ? cascade_warm
                                                            : nullptr);
            if (cascade_warm)
                *cascade_warm = cas.feedback_trace;

            SmoothEval out;
            out.control = conormal_trace(cas.phi, g, model.geom.leader_side()).samples;
            for (double & x : out.control)
                x = -x; // adjoint-map orientation
            const double wn = norm_l2_sigma(out.control, g.dt);
            out.value = 0.5 * wn * wn + inner_l2_omega(c0, f.f1, g.dy) - inner_l2_omega(c1, f.f0, g.dy);

            if (need_gradient)
            {
                auto [eta, zeta] = apply_terminal_map(model, sigma, delta, out.control, opts.inner_tol,
                                                      opts.inner_max_iter, terminal_warm);
                // derivative representatives: l0 = -eta - c1, l1 = -zeta + c0
                out.functional.f0.assign(eta.size(), 0.0);
                out.functional.f1.assign(zeta.size(), 0.0);
                for (size_t j = 0; j < eta.size(); ++j)
                {
                    out.functional.f0[j] = -eta[j] - c1[j];
                    out.functional.f1[j] = -zeta[j] + c0[j];
                }
                // pairings are interior; clamp the ends so the Riesz solve
                // sees homogeneous data
                out.functional.f0.front() = out.functional.f0.back() = 0.0;
                out.functional.f1.front() = out.functional.f1.back() = 0.0;
                out.gradient.f0 = riesz_h01(out.functional.f0, g.dy);
                out.gradient.f1 = out.functional.f1;
            }
            return out;
        }

        double rho_terms(const ControllabilityTarget & target, const DualVariable & f, double dy)
        {
            return target.rho1 * norm_h01_omega(f.f0, dy) + target.rho0 * norm_l2_omega(f.f1, dy);
        }

        DualVariable prox_step(const DualVariable & z, double tau, const ControllabilityTarget & target,
                               double dy)
        {
            DualVariable out = z;
            shrink(out.f0, tau * target.rho1, norm_h01_omega(out.f0, dy));
            shrink(out.f1, tau * target.rho0, norm_l2_omega(out.f1, dy));
            return out;
        }
    } // namespace

    double dual_functional(const WaveModel & model, double sigma, double delta,
                           const AffinePart & affine, const ControllabilityTarget & target,
                           const DualVariable & f, double inner_tol, int inner_max_iter)
    {
        LeaderOptions opts;
        opts.inner_tol = inner_tol;
        opts.inner_max_iter = inner_max_iter;
        const std::vector<double> c0 = sub(target.v0_target, affine.terminal_position);
        const std::vector<double> c1 = sub(target.v1_target, affine.terminal_velocity);
        SmoothEval ev = smooth_eval(model, sigma, delta, c0, c1, f, opts, nullptr, nullptr, false);
        return ev.value + rho_terms(target, f, model.grid.dy);
    }

    LeaderResult minimize_dual(const ScaleFunction & k, const Grid & grid, const Geometry & geom,
                               const SpaceTimeField * v2, const ControllabilityTarget & target,
                               double sigma, double delta, const LeaderOptions & opts)
    {
        const bool time_ok = holmgren_time_ok(grid.T, geom);
        if (!time_ok && !opts.override_holmgren)
            throw HolmgrenViolation("leader: horizon fails T > 2 d(Omega, Gamma_0); "
                                    "pass the override to proceed anyway");
        if (geom.mode != SplitMode::Additive && !opts.override_holmgren)
            throw ConfigError("leader: additive boundary decomposition required "
                              "(override downgrades this to a warning)");
        if (!(target.rho0 > 0.0 && target.rho1 > 0.0))
            throw ConfigError("leader: target ball radii must be positive");

        WaveModel model(k, grid, geom);
        AffinePart affine = solve_affine_part(model, v2, sigma, opts.inner_tol, opts.relaxation,
                                              std::max(opts.inner_max_iter, 200));
        const std::vector<double> c0 = sub(target.v0_target, affine.terminal_position);
        const std::vector<double> c1 = sub(target.v1_target, affine.terminal_velocity);
        const double dy = grid.dy;

        std::vector<double> cascade_warm, terminal_warm;

        // Curvature estimate of the smooth part by power iteration on the
        // Riesz-mapped Hessian f -> Riesz(A(A* f)).
        double curvature = 0.0;
        {
            std::mt19937_64 gen(0x5ca1ab1eULL);
            std::normal_distribution<double> dist;
            DualVariable h(grid.nx + 1);
            for (int j = 1; j < grid.nx; ++j)
            {
                h.f0[j] = dist(gen);
                h.f1[j] = dist(gen);
            }
            double hn = dual_norm(h, dy);
            for (auto & x : h.f0) x /= hn;
            for (auto & x : h.f1) x /= hn;
            for (int it = 0; it < 12; ++it)
            {
                std::vector<double> f1s = h.f1;
                if (delta != 0.0)
                    for (size_t j = 0; j < f1s.size(); ++j)
                        f1s[j] -= delta * h.f0[j];
                CascadeSolution cas = solve_adjoint_cascade(model, sigma, h.f0, f1s, opts.inner_tol,
                                                            opts.inner_max_iter, opts.relaxation,
                                                            cascade_warm.empty() ? nullptr : &cascade_warm);
                cascade_warm = cas.feedback_trace;
                std::vector<double> u = conormal_trace(cas.phi, grid, geom.leader_side()).samples;
                for (double & x : u) x = -x;
                auto [eta, zeta] = apply_terminal_map(model, sigma, delta, u, opts.inner_tol,
                                                      opts.inner_max_iter);
                DualVariable z(grid.nx + 1);
                for (int j = 1; j < grid.nx; ++j)
                {
                    z.f0[j] = -eta[j];
                    z.f1[j] = -zeta[j];
                }
                z.f0.front() = z.f0.back() = 0.0;
                z.f0 = riesz_h01(z.f0, dy);
                curvature = dual_inner(z, h, dy);
                const double zn = dual_norm(z, dy);
                if (zn < 1e-300)
                    break;
                for (size_t j = 0; j < z.f0.size(); ++j)
                {
                    h.f0[j] = z.f0[j] / zn;
                    h.f1[j] = z.f1[j] / zn;
                }
            }
            cascade_warm.clear();
        }
        double tau = curvature > 1e-14 ? 1.0 / curvature : 1.0;

        LeaderResult result;
        result.holmgren_ok = time_ok;

        DualVariable x(grid.nx + 1), y(grid.nx + 1);
        double t_mom = 1.0;
        SmoothEval ev_x = smooth_eval(model, sigma, delta, c0, c1, x, opts, &cascade_warm,
                                      &terminal_warm, false);
        double Dx = ev_x.value + rho_terms(target, x, dy);
        result.objective_history.push_back(Dx);
        result.best_lower_bound = -Dx;

        int stagnant = 0;
        bool converged = false;
        int it = 0;
        for (; it < opts.max_iter; ++it)
        {
            SmoothEval ev_y =
                smooth_eval(model, sigma, delta, c0, c1, y, opts, &cascade_warm, &terminal_warm, true);
            DualVariable cand;
            double S_cand = 0.0;
            for (int bt = 0; bt < 60; ++bt)
            {
                cand = prox_step(dual_axpy(y, -tau, ev_y.gradient), tau, target, dy);
                SmoothEval ev_c = smooth_eval(model, sigma, delta, c0, c1, cand, opts, &cascade_warm,
                                              &terminal_warm, false);
                S_cand = ev_c.value;
                DualVariable diff = dual_axpy(cand, -1.0, y);
                const double lin = inner_l2_omega(ev_y.functional.f0, diff.f0, dy) +
                                   inner_l2_omega(ev_y.functional.f1, diff.f1, dy);
                const double quad = dual_inner(diff, diff, dy) / (2.0 * tau);
                if (S_cand <= ev_y.value + lin + quad + 1e-12 * (1.0 + std::abs(S_cand)))
                    break;
                tau *= 0.5;
            }
            double D_cand = S_cand + rho_terms(target, cand, dy);

            if (D_cand > Dx)
            {
                // monotone guard: plain proximal step from the last accepted point
                SmoothEval ev_xx = smooth_eval(model, sigma, delta, c0, c1, x, opts, &cascade_warm,
                                               &terminal_warm, true);
                DualVariable cand2 = prox_step(dual_axpy(x, -tau, ev_xx.gradient), tau, target, dy);
                SmoothEval ev_c2 = smooth_eval(model, sigma, delta, c0, c1, cand2, opts, &cascade_warm,
                                               &terminal_warm, false);
                const double D2 = ev_c2.value + rho_terms(target, cand2, dy);
                if (D2 <= Dx)
                {
                    cand = cand2;
                    D_cand = D2;
                }
                else
                {
                    cand = x;
                    D_cand = Dx;
                }
                t_mom = 1.0;
            }

            // adaptive restart: momentum reset when it points uphill
            DualVariable dir_new = dual_axpy(cand, -1.0, x);
            DualVariable dir_y = dual_axpy(y, -1.0, cand);
            if (dual_inner(dir_y, dir_new, dy) > 0.0)
                t_mom = 1.0;

            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
            y = dual_axpy(cand, (t_mom - 1.0) / t_next, dir_new);
            t_mom = t_next;

            const double D_prev = Dx;
            x = cand;
            Dx = D_cand;
            result.objective_history.push_back(Dx);
            result.best_lower_bound = std::max(result.best_lower_bound, -Dx);

            if (std::abs(D_prev - Dx) <= opts.tol * std::max(1.0, std::abs(Dx)))
                ++stagnant;
            else
                stagnant = 0;
            if (stagnant >= opts.patience)
            {
                converged = true;
                ++it;
                break;
            }
        }
        result.iterations = it;
        if (!converged)
        {
            std::vector<double> flat = x.f0;
            flat.insert(flat.end(), x.f1.begin(), x.f1.end());
            throw NoConvergence("leader: proximal gradient exhausted max_iter", flat,
                                result.objective_history);
        }

        result.f_star = x;
        result.dual = Dx;

        // Leader extraction: the conormal trace of the cascade at the optimum.
        std::vector<double> f1s = x.f1;
        if (delta != 0.0)
            for (size_t j = 0; j < f1s.size(); ++j)
                f1s[j] -= delta * x.f0[j];
        CascadeSolution cas = solve_adjoint_cascade(model, sigma, x.f0, f1s, opts.inner_tol,
                                                    opts.inner_max_iter, opts.relaxation,
                                                    cascade_warm.empty() ? nullptr : &cascade_warm);
        result.w1 = BoundaryControl(geom.leader_side(), grid.nt);
        result.w1.samples = conormal_trace(cas.phi, grid, geom.leader_side()).samples;

        FollowerSolution follower = solve_follower_core(model, sigma, result.w1.samples, v2,
                                                        opts.inner_tol, opts.inner_max_iter);
        result.w2 = follower.w2;
        result.terminal = terminal_of(follower.v, grid);
        result.dist0 = norm_l2_omega(sub(result.terminal.position, target.v0_target), dy);
        result.dist1 = norm_hm1_omega(sub(result.terminal.velocity, target.v1_target), dy);
        const double wn = norm_l2_sigma(result.w1.samples, grid.dt);
        result.primal = 0.5 * wn * wn;
        result.gap = result.primal + result.dual;
        return result;
    }

    double check_variational_inequality(const Grid & grid, const ControllabilityTarget & target,
                                        const LeaderResult & result,
                                        const std::vector<DualVariable> & directions)
    {
        const double dy = grid.dy;
        const std::vector<double> lin0 = sub(result.terminal.velocity, target.v1_target);
        const std::vector<double> lin1 = sub(result.terminal.position, target.v0_target);
        const double n0 = norm_h01_omega(result.f_star.f0, dy);
        const double n1 = norm_l2_omega(result.f_star.f1, dy);
        double worst = 0.0;
        bool first = true;
        for (const DualVariable & probe : directions)
        {
            const double value = inner_l2_omega(lin0, sub(probe.f0, result.f_star.f0), dy) -
                                 inner_l2_omega(lin1, sub(probe.f1, result.f_star.f1), dy) +
                                 target.rho1 * (norm_h01_omega(probe.f0, dy) - n0) +
                                 target.rho0 * (norm_l2_omega(probe.f1, dy) - n1);
            if (first || value < worst)
            {
                worst = value;
                first = false;
            }
        }
        return worst;
    }

    OptimalitySystemReport assemble_leader_optimality_system(const ScaleFunction & k, const Grid & grid,
                                                             const Geometry & geom,
                                                             const SpaceTimeField * v2,
                                                             const DualVariable & f_star, double sigma,
                                                             double delta, double tol)
    {
        WaveModel model(k, grid, geom);
        OptimalitySystemReport rep;

        std::vector<double> f1s = f_star.f1;
        if (delta != 0.0)
            for (size_t j = 0; j < f1s.size(); ++j)
                f1s[j] -= delta * f_star.f0[j];
        CascadeSolution cas = solve_adjoint_cascade(model, sigma, f_star.f0, f1s, tol, 4000);
        rep.phi = cas.phi;
        rep.psi = cas.psi;
        rep.w1 = BoundaryControl(geom.leader_side(), grid.nt);
        rep.w1.samples = conormal_trace(cas.phi, grid, geom.leader_side()).samples;

        // The coupled state/adjoint through the independent fixed-point path.
        OptimalitySystemSolution sys =
            solve_optimality_core(model, sigma, rep.w1.samples, v2, tol, 0.5, 4000);
        rep.v = sys.v;
        rep.p = sys.p;
        rep.w2 = sys.w2;

        SpaceTimeField zero(grid);
        const SpaceTimeField & v2ref = v2 ? *v2 : zero;
        (void)v2ref;

        rep.residuals["state_stencil"] =
            residual_pde(rep.v, model.coeffs, grid, nullptr, StencilKind::Forward);
        SpaceTimeField misfit = tracking_rhs(model, rep.v, v2);
        rep.residuals["state_adjoint_stencil"] =
            residual_pde(rep.p, model.coeffs, grid, &misfit, StencilKind::Adjoint);
        SpaceTimeField kn_psi = scale_kn(model, rep.psi);
        rep.residuals["cascade_phi_stencil"] = residual_pde(
            rep.phi.field, model.coeffs, grid, &kn_psi, StencilKind::Adjoint, f_star.f0, f1s);
        rep.residuals["cascade_psi_stencil"] =
            residual_pde(rep.psi, model.coeffs, grid, nullptr, StencilKind::Forward);

        std::vector<double> euler =
            j2_gradient_core(model, sigma, rep.w1.samples, v2, rep.w2.samples);
        rep.residuals["follower_euler"] = norm_l2_sigma(euler, grid.dt);

        std::vector<double> feedback = conormal_trace(cas.phi, grid, geom.follower_side()).samples;
        for (size_t m = 0; m < feedback.size(); ++m)
            feedback[m] = sigma * cas.feedback_trace[m] + feedback[m];
        rep.residuals["cascade_feedback"] = norm_l2_sigma(feedback, grid.dt);
        return rep;
    }
} // namespace scalewave
