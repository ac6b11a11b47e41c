#include "scalewave/follower.hpp"

#include <cmath>

#include "scalewave/norms.hpp"

namespace scalewave
{
    FollowerProblem::FollowerProblem(const ScaleFunction & k_, const Grid & grid_, const Geometry & geom_,
                                     BoundaryControl w1_, SpaceTimeField v2_, double sigma_)
        : k(k_), grid(grid_), geom(geom_), w1(std::move(w1_)), v2(std::move(v2_)), sigma(sigma_)
    {
        if (!(sigma > 0.0))
            throw ConfigError("follower: sigma must be positive");
        if (static_cast<int>(w1.samples.size()) != grid.nt + 1)
            throw ConfigError("follower: w1 must have nt+1 samples");
        if (v2.nx() != grid.nx || v2.nt() != grid.nt)
            throw ConfigError("follower: v2 shape must match the grid");
    }

    namespace
    {
        std::vector<double> control_rhs(const WaveModel & model, double sigma,
                                        const std::vector<double> & w1, const SpaceTimeField * v2)
        {
            // -gradient at w2 = 0: the misfit of the leader-only state.
            (void)sigma;
            std::vector<double> zero(model.grid.nt + 1, 0.0);
            SpaceTimeField vbar = march_controlled(model, w1, zero);
            AdjointField adj =
                march_backward_transpose(model.coeffs, model.grid, tracking_rhs(model, vbar, v2));
            BoundaryControl ct = conormal_trace(adj, model.grid, model.geom.follower_side());
            std::vector<double> rhs(ct.samples.size());
            for (size_t i = 0; i < rhs.size(); ++i)
                rhs[i] = -ct.samples[i];
            return rhs;
        }
    } // namespace

    FollowerSolution solve_follower_core(const WaveModel & model, double sigma,
                                         const std::vector<double> & w1, const SpaceTimeField * v2,
                                         double tol, int max_iter,
                                         const std::vector<double> * initial_guess)
    {
        const std::vector<double> rhs = control_rhs(model, sigma, w1, v2);
        const double rhs_norm = norm_l2_sigma(rhs, model.grid.dt);
        std::vector<double> x0(model.grid.nt + 1, 0.0);
        if (initial_guess)
            x0 = *initial_guess;
        CgResult cg = cg_sigma(
            [&](const std::vector<double> & w) { return follower_operator_apply(model, sigma, w); },
            rhs, x0, model.grid.dt, tol * std::max(1.0, rhs_norm), max_iter);
        if (!cg.converged)
            throw NoConvergence("follower: conjugate gradients exhausted max_iter", cg.x, cg.history);

        FollowerSolution sol;
        sol.w2 = BoundaryControl(model.geom.follower_side(), model.grid.nt);
        sol.w2.samples = cg.x;
        sol.iterations = cg.iterations;
        sol.v = march_controlled(model, w1, cg.x);
        AdjointField adj =
            march_backward_transpose(model.coeffs, model.grid, tracking_rhs(model, sol.v, v2));
        sol.p = adj.field;
        const BoundaryControl ct = conormal_trace(adj, model.grid, model.geom.follower_side());
        std::vector<double> grad = ct.samples;
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] += sigma * cg.x[i];
        sol.euler_residual = norm_l2_sigma(grad, model.grid.dt);
        sol.j2 = j2_value_core(model, sigma, w1, v2, cg.x);
        return sol;
    }

    double j2_value_core(const WaveModel & model, double sigma, const std::vector<double> & w1,
                         const SpaceTimeField * v2, const std::vector<double> & w2)
    {
        SpaceTimeField v = march_controlled(model, w1, w2);
        double misfit = 0.0;
        for (int m = 0; m <= model.grid.nt; ++m)
        {
            const double w = model.coeffs.kn(m);
            for (int j = 1; j < model.grid.nx; ++j)
            {
                const double d = v(m, j) - (v2 ? (*v2)(m, j) : 0.0);
                misfit += w * d * d;
            }
        }
        misfit *= model.grid.dy * model.grid.dt;
        const double w2n = norm_l2_sigma(w2, model.grid.dt);
        return 0.5 * misfit + 0.5 * sigma * w2n * w2n;
    }

    std::vector<double> j2_gradient_core(const WaveModel & model, double sigma,
                                         const std::vector<double> & w1, const SpaceTimeField * v2,
                                         const std::vector<double> & w2)
    {
        SpaceTimeField v = march_controlled(model, w1, w2);
        AdjointField adj = march_backward_transpose(model.coeffs, model.grid, tracking_rhs(model, v, v2));
        BoundaryControl ct = conormal_trace(adj, model.grid, model.geom.follower_side());
        std::vector<double> grad = ct.samples;
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] += sigma * w2[i];
        return grad;
    }

    double j2_value(const FollowerProblem & problem, const BoundaryControl & w2)
    {
        WaveModel model(problem.k, problem.grid, problem.geom);
        return j2_value_core(model, problem.sigma, problem.w1.samples, &problem.v2, w2.samples);
    }

    BoundaryControl j2_gradient(const FollowerProblem & problem, const BoundaryControl & w2)
    {
        WaveModel model(problem.k, problem.grid, problem.geom);
        BoundaryControl out(problem.geom.follower_side(), problem.grid.nt);
        out.samples = j2_gradient_core(model, problem.sigma, problem.w1.samples, &problem.v2, w2.samples);
        return out;
    }

    FollowerSolution solve_follower(const FollowerProblem & problem, double tol, int max_iter,
                                    const std::vector<double> * initial_guess)
    {
        WaveModel model(problem.k, problem.grid, problem.geom);
        return solve_follower_core(model, problem.sigma, problem.w1.samples, &problem.v2, tol, max_iter,
                                   initial_guess);
    }

    OptimalitySystemSolution solve_optimality_core(const WaveModel & model, double sigma,
                                                   const std::vector<double> & w1,
                                                   const SpaceTimeField * v2, double tol,
                                                   double relaxation, int max_iter)
    {
        if (!(relaxation > 0.0 && relaxation <= 1.0))
            throw ConfigError("follower: relaxation must lie in (0, 1]");
        const int nt = model.grid.nt;
        std::vector<double> w(nt + 1, 0.0);
        std::vector<double> history;

        OptimalitySystemSolution out;
        for (int it = 0; it < max_iter; ++it)
        {
            out.v = march_controlled(model, w1, w);
            AdjointField adj =
                march_backward_transpose(model.coeffs, model.grid, tracking_rhs(model, out.v, v2));
            out.p = adj.field;
            const BoundaryControl ct = conormal_trace(adj, model.grid, model.geom.follower_side());
            double delta = 0.0;
            for (int m = 0; m <= nt; ++m)
            {
                const double w_new = (1.0 - relaxation) * w[m] - relaxation / sigma * ct.samples[m];
                delta += (w_new - w[m]) * (w_new - w[m]);
                w[m] = w_new;
            }
            delta = std::sqrt(model.grid.dt * delta) / relaxation;
            history.push_back(delta);
            out.iterations = it + 1;
            if (delta <= tol * std::max(1.0, norm_l2_sigma(w, model.grid.dt)))
            {
                out.w2 = BoundaryControl(model.geom.follower_side(), nt);
                out.w2.samples = w;
                out.residual_history = history;
                // refresh the fields at the final trace
                out.v = march_controlled(model, w1, w);
                AdjointField final_adj =
                    march_backward_transpose(model.coeffs, model.grid, tracking_rhs(model, out.v, v2));
                out.p = final_adj.field;
                return out;
            }
            // A growing update signals the fixed point stopped contracting for
            // this sigma; bail out with the history so callers can relax.
            if (history.size() >= 4 && history[history.size() - 1] > 4.0 * history[history.size() - 4] &&
                history.back() > 1e3)
                throw NoConvergence(
                    "follower: fixed-point iteration diverging; reduce relaxation or use the CG path", w,
                    history);
        }
        throw NoConvergence("follower: fixed-point iteration exhausted max_iter; "
                            "reduce relaxation or use the CG path",
                            w, history);
    }

    OptimalitySystemSolution solve_optimality_system(const FollowerProblem & problem, double tol,
                                                     double relaxation, int max_iter)
    {
        WaveModel model(problem.k, problem.grid, problem.geom);
        return solve_optimality_core(model, problem.sigma, problem.w1.samples, &problem.v2, tol,
                                     relaxation, max_iter);
    }
} // namespace scalewave
