#include "scalewave/diagnostics.hpp"

#include <cmath>
#include <random>

#include "scalewave/norms.hpp"

namespace scalewave
{
    double euler_residual(const FollowerProblem & problem, const BoundaryControl & w2)
    {
        const BoundaryControl grad = j2_gradient(problem, w2);
        return norm_l2_sigma(grad.samples, problem.grid.dt);
    }

    CheckReport duality_identity_check(const WaveModel & model, double sigma, double delta,
                                       int n_samples, std::uint64_t seed, double inner_tol)
    {
        std::mt19937_64 gen(seed);
        std::normal_distribution<double> dist;
        const Grid & g = model.grid;
        CheckReport rep;
        rep.check = "terminal_duality_identity";
        rep.seed = seed;
        rep.samples = n_samples;

        for (int s = 0; s < n_samples; ++s)
        {
            std::vector<double> w(g.nt + 1);
            for (double & x : w)
                x = dist(gen);
            DualVariable f(g.nx + 1);
            for (int j = 1; j < g.nx; ++j)
            {
                f.f0[j] = dist(gen);
                f.f1[j] = dist(gen);
            }
            auto [eta, zeta] = apply_terminal_map(model, sigma, delta, w, inner_tol, 4000);
            const double pairing =
                inner_l2_omega(eta, f.f0, g.dy) + inner_l2_omega(zeta, f.f1, g.dy);
            const BoundaryControl astar = apply_terminal_map_adjoint(model, sigma, delta, f, inner_tol, 4000);
            const double trace_pair = inner_l2_sigma(w, astar.samples, g.dt);
            const double violation =
                std::abs(pairing + trace_pair) / std::max(std::abs(pairing) + std::abs(trace_pair), 1e-30);
            rep.max_violation = std::max(rep.max_violation, violation);
        }
        rep.pass = rep.max_violation <= 1e-10;
        return rep;
    }

    CheckReport transpose_identity_check(const WaveModel & model, int n_samples, std::uint64_t seed)
    {
        std::mt19937_64 gen(seed);
        std::normal_distribution<double> dist;
        const Grid & g = model.grid;
        CheckReport rep;
        rep.check = "trace_transpose_identity";
        rep.seed = seed;
        rep.samples = n_samples;

        for (int s = 0; s < n_samples; ++s)
        {
            const BoundarySide seg = (s % 2 == 0) ? BoundarySide::Right : BoundarySide::Left;
            std::vector<double> w(g.nt + 1);
            for (double & x : w)
                x = dist(gen);
            SpaceTimeField r(g);
            for (int m = 0; m <= g.nt; ++m)
                for (int j = 1; j < g.nx; ++j)
                    r(m, j) = dist(gen);

            const SpaceTimeField bw = boundary_to_state(model.coeffs, g, seg, w);
            const double lhs = inner_q(bw, r, g);
            const AdjointField adj = march_backward_transpose(model.coeffs, g, r);
            const BoundaryControl ct = conormal_trace(adj, g, seg);
            const double rhs = inner_l2_sigma(w, ct.samples, g.dt);
            const double scale = norm_l2_sigma(w, g.dt) * norm_q(r, g);
            const double violation = std::abs(lhs - rhs) / std::max(scale, 1e-30);
            rep.max_violation = std::max(rep.max_violation, violation);
        }
        rep.pass = rep.max_violation <= 1e-12;
        return rep;
    }

    double manufactured_solution(double y, double t)
    {
        return std::sin(M_PI * y) * std::cos(M_PI * t);
    }

    double manufactured_source(const ScaleFunction & k, int n, double y, double t)
    {
        const double kv = k.value(t);
        const double kp = k.derivative(t);
        const Coefficients co = eval_coefficients(k, y, t, n);
        const double a_y = -2.0 * kp * kp * y / (kv * kv);
        const double s = std::sin(M_PI * y), c = std::cos(M_PI * y);
        const double ct = std::cos(M_PI * t), st = std::sin(M_PI * t);
        const double v_tt = -M_PI * M_PI * s * ct;
        const double v_y = M_PI * c * ct;
        const double v_yy = -M_PI * M_PI * s * ct;
        const double vp_y = -M_PI * M_PI * c * st;
        const double Lv = -(a_y * v_y + co.a * v_yy) + co.b * vp_y + co.c * v_y;
        return v_tt + Lv;
    }

    ConvergenceReport convergence_study(const ScaleFunction & k, const Geometry & geom, double T,
                                        const std::vector<std::pair<int, int>> & levels)
    {
        ConvergenceReport rep;
        for (const auto & [nx, nt] : levels)
        {
            const Grid grid(nx, nt, T);
            const CoefficientTable coeffs(k, grid, geom.n);
            SpaceTimeField source(grid);
            for (int m = 0; m <= nt; ++m)
                for (int j = 1; j < nx; ++j)
                    source(m, j) = manufactured_source(k, geom.n, grid.y(j), grid.t(m));
            InitialData init;
            init.position.resize(nx + 1);
            init.velocity.assign(nx + 1, 0.0);
            for (int j = 0; j <= nx; ++j)
                init.position[j] = manufactured_solution(grid.y(j), 0.0);
            const std::vector<double> zero(nt + 1, 0.0);
            const SpaceTimeField v = march_forward(coeffs, grid, zero, zero, &source, init);
            double err = 0.0;
            for (int m = 0; m <= nt; ++m)
                for (int j = 0; j <= nx; ++j)
                    err = std::max(err, std::abs(v(m, j) - manufactured_solution(grid.y(j), grid.t(m))));
            rep.levels.emplace_back(nx, nt);
            rep.errors.push_back(err);
        }
        for (size_t i = 0; i + 1 < rep.errors.size(); ++i)
            rep.rates.push_back(std::log2(rep.errors[i] / rep.errors[i + 1]));
        return rep;
    }
} // namespace scalewave
