#ifndef SCALEWAVE_MODEL_HPP
#define SCALEWAVE_MODEL_HPP

#include <functional>
#include <optional>
#include <vector>

#include "scalewave/grid.hpp"
#include "scalewave/scale.hpp"
#include "scalewave/wave.hpp"

namespace scalewave
{
    /// @brief Grid, geometry and tabulated coefficients bundled for the solvers.
    struct WaveModel
    {
        WaveModel(const ScaleFunction & k, const Grid & grid_, const Geometry & geom_,
                  double cfl_limit = 0.9)
            : grid(grid_), geom(geom_), coeffs(k, grid_, geom_.n, cfl_limit)
        {
        }

        Grid grid;
        Geometry geom;
        CoefficientTable coeffs;
    };

    /// March the controlled state from rest: leader trace on its segment,
    /// follower trace on its segment; in additive mode the two add on the
    /// shared endpoint.
    SpaceTimeField march_controlled(const WaveModel & model, const std::vector<double> & w1,
                                    const std::vector<double> & w2);

    /// r(m, j) = k(t_m)^n * (v - v2)(m, j); v2 may be null for a zero target.
    SpaceTimeField tracking_rhs(const WaveModel & model, const SpaceTimeField & v,
                                const SpaceTimeField * v2);

    /// Scale every level of a field by k(t_m)^n.
    SpaceTimeField scale_kn(const WaveModel & model, const SpaceTimeField & f);

    /// The reduced follower operator sigma*w + B2^T W B2 w on one segment
    /// trace; self-adjoint and positive definite in the Sigma inner product.
    std::vector<double> follower_operator_apply(const WaveModel & model, double sigma,
                                                const std::vector<double> & w);

    struct CgResult
    {
        std::vector<double> x;
        int iterations = 0;
        double residual_norm = 0.0;
        bool converged = false;
        std::vector<double> history;
    };

    /// Plain conjugate gradients in the Sigma inner product for a
    /// self-adjoint positive definite trace operator.
    CgResult cg_sigma(const std::function<std::vector<double>(const std::vector<double> &)> & apply,
                      const std::vector<double> & rhs, const std::vector<double> & x0, double dt,
                      double tol, int max_iter);
} // namespace scalewave

#endif
