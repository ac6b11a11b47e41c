#ifndef SCALEWAVE_LEADER_HPP
#define SCALEWAVE_LEADER_HPP

#include <map>
#include <string>
#include <vector>

#include "scalewave/follower.hpp"
#include "scalewave/model.hpp"

namespace scalewave
{
    /// @brief Terminal balls the controlled state must reach.
    ///
    /// v1_target is the L2 representative of the velocity target measured in
    /// the discrete H^{-1} norm.
    struct ControllabilityTarget
    {
        std::vector<double> v0_target;
        std::vector<double> v1_target;
        double rho0 = 0.0;
        double rho1 = 0.0;
    };

    /// Dual variable of the terminal constraints: f0 in H_0^1, f1 in L2.
    struct DualVariable
    {
        DualVariable() = default;
        explicit DualVariable(int nodes) : f0(nodes, 0.0), f1(nodes, 0.0) {}
        std::vector<double> f0;
        std::vector<double> f1;
    };

    /// Coupled adjoint pair: phi marched backward from the dual data with the
    /// follower feedback trace carried by the forward companion psi.
    struct CascadeSolution
    {
        AdjointField phi;
        SpaceTimeField psi;
        std::vector<double> feedback_trace; ///< psi's trace on the follower segment
        int iterations = 0;
        double residual = 0.0;
    };

    /// w1-independent offset of the optimality system (the tracking response
    /// to v2 with a silent leader) and its terminal data.
    struct AffinePart
    {
        SpaceTimeField v0_field;
        SpaceTimeField p0_field;
        std::vector<double> terminal_position;
        std::vector<double> terminal_velocity;
        int iterations = 0;
        double residual = 0.0;
    };

    struct LeaderOptions
    {
        double tol = 1e-8;          ///< relative objective stagnation threshold
        int max_iter = 500;         ///< proximal-gradient iteration budget
        double relaxation = 0.5;    ///< damping of the inner fixed-point solves
        bool override_holmgren = false;
        double inner_tol = 1e-12;   ///< tolerance of the inner CG solves
        int inner_max_iter = 2000;
        int patience = 3;           ///< stagnant iterations required to stop
        bool collect_history = true;
    };

    struct LeaderResult
    {
        DualVariable f_star;
        BoundaryControl w1;
        BoundaryControl w2;
        TerminalPair terminal;
        double dist0 = 0.0;
        double dist1 = 0.0;
        double primal = 0.0;
        double dual = 0.0;
        double gap = 0.0;
        int iterations = 0;
        bool holmgren_ok = false;
        std::vector<double> objective_history;
        double best_lower_bound = 0.0; ///< max over iterates of -dual(f)
    };

    /// Solve the silent-leader coupled pair by relaxed Picard iteration, with
    /// a CG fallback when the fixed point stops contracting.
    AffinePart solve_affine_part(const WaveModel & model, const SpaceTimeField * v2, double sigma,
                                 double tol, double relaxation = 0.5, int max_iter = 500);

    /// Map a leader trace to the terminal data pair
    ///   ( g'(T) + delta g(T),  -g(T) )
    /// of its follower-coupled state from rest.
    std::pair<std::vector<double>, std::vector<double>>
    apply_terminal_map(const WaveModel & model, double sigma, double delta,
                       const std::vector<double> & w1, double inner_tol = 1e-12,
                       int inner_max_iter = 2000, std::vector<double> * warm_start = nullptr);

    /// Solve the adjoint cascade from dual terminal data (f0, f1): backward
    /// field with tracking source fed by its own forward companion through
    /// the follower feedback trace. Picard first, CG on stagnation.
    CascadeSolution solve_adjoint_cascade(const WaveModel & model, double sigma,
                                          const std::vector<double> & f0, const std::vector<double> & f1,
                                          double tol, int max_iter, double relaxation = 0.5,
                                          const std::vector<double> * warm_start = nullptr);

    /// Exact discrete adjoint of apply_terminal_map under the terminal duality
    /// pairing: the negated conormal trace of the cascade on the leader
    /// segment, with the delta shift folded into the terminal data.
    BoundaryControl apply_terminal_map_adjoint(const WaveModel & model, double sigma, double delta,
                                               const DualVariable & f, double inner_tol = 1e-12,
                                               int inner_max_iter = 2000);

    /// Value of the dual objective
    ///   1/2 ||A* f||^2 + (v0 - v0T, f1) - (v1 - v0T', f0) + rho1 ||f0||_H01 + rho0 ||f1||_L2.
    double dual_functional(const WaveModel & model, double sigma, double delta,
                           const AffinePart & affine, const ControllabilityTarget & target,
                           const DualVariable & f, double inner_tol = 1e-12, int inner_max_iter = 2000);

    /// Monotone proximal-gradient (FISTA) minimization of the dual, leader
    /// extraction, follower response, terminal distances and duality gap.
    LeaderResult minimize_dual(const ScaleFunction & k, const Grid & grid, const Geometry & geom,
                               const SpaceTimeField * v2, const ControllabilityTarget & target,
                               double sigma, double delta, const LeaderOptions & opts);

    /// Most negative value of the first-order optimality inequality over the
    /// given probe directions; zero at the optimum itself.
    double check_variational_inequality(const Grid & grid, const ControllabilityTarget & target,
                                        const LeaderResult & result,
                                        const std::vector<DualVariable> & directions);

    struct OptimalitySystemReport
    {
        AdjointField phi;
        SpaceTimeField psi;
        SpaceTimeField v;
        SpaceTimeField p;
        BoundaryControl w1;
        BoundaryControl w2;
        std::map<std::string, double> residuals;
    };

    /// Assemble the full four-field optimality system at a given dual point
    /// and report the discrete residual of every equation and coupling.
    OptimalitySystemReport assemble_leader_optimality_system(const ScaleFunction & k, const Grid & grid,
                                                             const Geometry & geom,
                                                             const SpaceTimeField * v2,
                                                             const DualVariable & f_star, double sigma,
                                                             double delta, double tol);
} // namespace scalewave

#endif
