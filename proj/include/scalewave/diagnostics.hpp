#ifndef SCALEWAVE_DIAGNOSTICS_HPP
#define SCALEWAVE_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scalewave/follower.hpp"
#include "scalewave/leader.hpp"
#include "scalewave/model.hpp"

namespace scalewave
{
    /// Machine-readable outcome of one verification check.
    struct CheckReport
    {
        std::string check;
        std::uint64_t seed = 0;
        int samples = 0;
        double max_violation = 0.0;
        bool pass = false;
    };

    /// Norm of the follower gradient at a candidate solution.
    double euler_residual(const FollowerProblem & problem, const BoundaryControl & w2);

    /// Random-pair test of the terminal duality identity
    ///   <<A w, f>> + <w, A* f>_Sigma = 0.
    /// Returns the worst relative violation over n_samples pairs.
    CheckReport duality_identity_check(const WaveModel & model, double sigma, double delta,
                                       int n_samples, std::uint64_t seed, double inner_tol = 1e-12);

    /// Random-pair test of the trace/source transpose identity
    ///   <B w, r>_Q = <w, B* r>_Sigma.
    CheckReport transpose_identity_check(const WaveModel & model, int n_samples, std::uint64_t seed);

    struct ConvergenceReport
    {
        std::vector<std::pair<int, int>> levels;
        std::vector<double> errors;
        std::vector<double> rates; ///< log2 of successive error ratios
    };

    /// Manufactured-solution study: v = sin(pi y) cos(pi t) with the source
    /// induced by the configured scaling, measured in the global max norm.
    /// For constant k = 1 the source vanishes and this is the classical
    /// standing wave.
    ConvergenceReport convergence_study(const ScaleFunction & k, const Geometry & geom, double T,
                                        const std::vector<std::pair<int, int>> & levels);

    /// Exact solution used by convergence_study and its source term.
    double manufactured_solution(double y, double t);
    double manufactured_source(const ScaleFunction & k, int n, double y, double t);
} // namespace scalewave

#endif
