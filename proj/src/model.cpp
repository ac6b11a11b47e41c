#include "scalewave/model.hpp"

#include <cmath>

namespace scalewave
{
    SpaceTimeField march_controlled(const WaveModel & model, const std::vector<double> & w1,
                                    const std::vector<double> & w2)
    {
        const Grid & g = model.grid;
        std::vector<double> left(g.nt + 1, 0.0), right(g.nt + 1, 0.0);
        auto add_trace = [&](BoundarySide side, const std::vector<double> & w) {
            std::vector<double> & dst = side == BoundarySide::Left ? left : right;
            for (int m = 0; m <= g.nt; ++m)
                dst[m] += w[m];
        };
        add_trace(model.geom.leader_side(), w1);
        add_trace(model.geom.follower_side(), w2);
        InitialData init{std::vector<double>(g.nx + 1, 0.0), std::vector<double>(g.nx + 1, 0.0)};
        return march_forward(model.coeffs, g, left, right, nullptr, init);
    }

    SpaceTimeField tracking_rhs(const WaveModel & model, const SpaceTimeField & v,
                                const SpaceTimeField * v2)
    {
        SpaceTimeField r(model.grid);
        for (int m = 0; m <= model.grid.nt; ++m)
        {
            const double w = model.coeffs.kn(m);
            for (int j = 0; j <= model.grid.nx; ++j)
                r(m, j) = w * (v(m, j) - (v2 ? (*v2)(m, j) : 0.0));
        }
        return r;
    }

    SpaceTimeField scale_kn(const WaveModel & model, const SpaceTimeField & f)
    {
        SpaceTimeField r(model.grid);
        for (int m = 0; m <= model.grid.nt; ++m)
        {
            const double w = model.coeffs.kn(m);
            for (int j = 0; j <= model.grid.nx; ++j)
                r(m, j) = w * f(m, j);
        }
        return r;
    }

    std::vector<double> follower_operator_apply(const WaveModel & model, double sigma,
                                                const std::vector<double> & w)
    {
        const BoundarySide seg = model.geom.follower_side();
        SpaceTimeField lifted = boundary_to_state(model.coeffs, model.grid, seg, w);
        AdjointField adj = march_backward_transpose(model.coeffs, model.grid, scale_kn(model, lifted));
        BoundaryControl ct = conormal_trace(adj, model.grid, seg);
        std::vector<double> out = ct.samples;
        for (size_t i = 0; i < out.size(); ++i)
            out[i] += sigma * w[i];
        return out;
    }

    CgResult cg_sigma(const std::function<std::vector<double>(const std::vector<double> &)> & apply,
                      const std::vector<double> & rhs, const std::vector<double> & x0, double dt,
                      double tol, int max_iter)
    {
        CgResult out;
        out.x = x0;
        std::vector<double> r = rhs;
        if (!out.x.empty())
        {
            const std::vector<double> ax = apply(out.x);
            for (size_t i = 0; i < r.size(); ++i)
                r[i] -= ax[i];
        }
        std::vector<double> p = r;
        double rr = dt * dot(r, r);
        const double target = tol;
        out.history.push_back(std::sqrt(rr));
        for (int it = 0; it < max_iter; ++it)
        {
            if (std::sqrt(rr) <= target)
            {
                out.converged = true;
                break;
            }
            const std::vector<double> ap = apply(p);
            const double pap = dt * dot(p, ap);
            if (!(pap > 0.0))
                break; // operator lost positivity numerically
            const double alpha = rr / pap;
            axpy(alpha, p, out.x);
            axpy(-alpha, ap, r);
            const double rr_new = dt * dot(r, r);
            out.history.push_back(std::sqrt(rr_new));
            const double beta = rr_new / rr;
            rr = rr_new;
            for (size_t i = 0; i < p.size(); ++i)
                p[i] = r[i] + beta * p[i];
            out.iterations = it + 1;
        }
        out.residual_norm = std::sqrt(rr);
        out.converged = out.residual_norm <= target;
        return out;
    }
} // namespace scalewave
