#ifndef SCALEWAVE_FOLLOWER_HPP
#define SCALEWAVE_FOLLOWER_HPP

#include <optional>
#include <vector>

#include "scalewave/model.hpp"

namespace scalewave
{
    /// @brief Data of the follower's tracking problem for a fixed leader.
    ///
    /// The follower minimizes
    ///   J2(w1, w2) = 1/2 iint_Q k^n(t) (v - v2)^2 + sigma/2 ||w2||^2_Sigma2
    /// over its boundary trace, with v the state driven by both controls.
    struct FollowerProblem
    {
        FollowerProblem(const ScaleFunction & k_, const Grid & grid_, const Geometry & geom_,
                        BoundaryControl w1_, SpaceTimeField v2_, double sigma_);

        ScaleFunction k;
        Grid grid;
        Geometry geom;
        BoundaryControl w1;
        SpaceTimeField v2;
        double sigma;
    };

    struct FollowerSolution
    {
        BoundaryControl w2;
        SpaceTimeField v;
        SpaceTimeField p; ///< adjoint state of the tracking misfit
        double j2 = 0.0;
        double euler_residual = 0.0;
        int iterations = 0;
    };

    double j2_value(const FollowerProblem & problem, const BoundaryControl & w2);

    /// Gradient of J2 in the Sigma inner product: sigma*w2 plus the conormal
    /// trace of the adjoint on the follower segment. Zero gradient is the
    /// discrete Euler equation of the tracking problem.
    BoundaryControl j2_gradient(const FollowerProblem & problem, const BoundaryControl & w2);

    /// Conjugate gradients on the strictly convex quadratic; the returned
    /// iterate has gradient norm below tol * max(1, ||rhs||).
    FollowerSolution solve_follower(const FollowerProblem & problem, double tol, int max_iter,
                                    const std::vector<double> * initial_guess = nullptr);

    struct OptimalitySystemSolution
    {
        SpaceTimeField v;
        SpaceTimeField p;
        BoundaryControl w2;
        int iterations = 0;
        std::vector<double> residual_history;
    };

    /// Relaxed Picard iteration on the coupled state/adjoint system with the
    /// follower feedback trace; independent cross-check of solve_follower.
    OptimalitySystemSolution solve_optimality_system(const FollowerProblem & problem, double tol,
                                                     double relaxation = 0.5, int max_iter = 500);

    // Model-level cores reused by the leader solver.
    FollowerSolution solve_follower_core(const WaveModel & model, double sigma,
                                         const std::vector<double> & w1, const SpaceTimeField * v2,
                                         double tol, int max_iter,
                                         const std::vector<double> * initial_guess = nullptr);
    OptimalitySystemSolution solve_optimality_core(const WaveModel & model, double sigma,
                                                   const std::vector<double> & w1,
                                                   const SpaceTimeField * v2, double tol,
                                                   double relaxation, int max_iter);
    double j2_value_core(const WaveModel & model, double sigma, const std::vector<double> & w1,
                         const SpaceTimeField * v2, const std::vector<double> & w2);
    std::vector<double> j2_gradient_core(const WaveModel & model, double sigma,
                                         const std::vector<double> & w1, const SpaceTimeField * v2,
                                         const std::vector<double> & w2);
} // namespace scalewave

#endif
