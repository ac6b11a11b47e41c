#ifndef SCALEWAVE_WAVE_HPP
#define SCALEWAVE_WAVE_HPP

#include <optional>
#include <vector>

#include "scalewave/grid.hpp"
#include "scalewave/scale.hpp"

namespace scalewave
{
    /// @brief Coefficients of L tabulated on the grid.
    ///
    /// a is stored at half nodes (y_{j+1/2}, t_m), b and c at nodes. The
    /// constructor checks hyperbolicity (a > 0 everywhere sampled) and the
    /// CFL margin dt * max(sqrt a) / dy <= cfl_limit.
    class CoefficientTable
    {
    public:
        CoefficientTable(const ScaleFunction & k, const Grid & grid, int n, double cfl_limit = 0.9);

        double a_half(int m, int i) const { return a_half_[static_cast<size_t>(m) * nx_ + i]; }
        double b(int m, int j) const { return b_[static_cast<size_t>(m) * (nx_ + 1) + j]; }
        double c(int m, int j) const { return c_[static_cast<size_t>(m) * (nx_ + 1) + j]; }
        /// k(t_m)^n, the tracking weight of the cost integrals.
        double kn(int m) const { return kn_[m]; }
        double k_value(int m) const { return k_[m]; }

        int nx() const { return nx_; }
        int nt() const { return nt_; }
        int n() const { return n_; }
        double dy() const { return dy_; }
        double dt() const { return dt_; }
        double max_sqrt_a() const { return max_sqrt_a_; }

    private:
        int nx_, nt_, n_;
        double dy_, dt_;
        double max_sqrt_a_;
        std::vector<double> a_half_, b_, c_, kn_, k_;
    };

    /// Initial data for the forward march.
    struct InitialData
    {
        std::vector<double> position; ///< v(.,0), nx+1 nodes
        std::vector<double> velocity; ///< v'(.,0), nx+1 nodes
    };

    /// @brief Semi-implicit leapfrog march for v'' + Lv = f.
    ///
    /// Conservative 3-point stencil for (a v_y)_y with a at half nodes; the
    /// b v'_y coupling is centered in time, b*(D_y v^{m+1} - D_y v^{m-1})/(2 dt),
    /// which costs one tridiagonal solve per step. First step is the
    /// second-order Taylor start. Boundary columns carry the traces exactly.
    SpaceTimeField march_forward(const CoefficientTable & coeffs, const Grid & grid,
                                 const std::vector<double> & left_trace,
                                 const std::vector<double> & right_trace,
                                 const SpaceTimeField * source, const InitialData & init);

    /// Control-to-state primitive: zero initial data, zero source, one trace.
    SpaceTimeField boundary_to_state(const CoefficientTable & coeffs, const Grid & grid,
                                     BoundarySide segment, const std::vector<double> & trace);

    /// @brief Output of the transpose (adjoint) sweep.
    ///
    /// field holds the multiplier values normalized to approximate the
    /// continuous adjoint state; flux_left/flux_right hold the boundary
    /// multipliers, whose dt-normalization is the discrete conormal trace.
    struct AdjointField
    {
        SpaceTimeField field;
        std::vector<double> flux_left;
        std::vector<double> flux_right;
    };

    /// @brief Exact transpose of the forward march, swept in reverse time.
    ///
    /// Solves the multiplier system of the forward scheme for the functional
    ///   sum_Q dy dt rhs * v  +  <v'(T), terminal_position> - <v(T), terminal_velocity>,
    /// which is the discrete adjoint problem p'' + L*p = rhs with terminal
    /// data (p(T), p'(T)) = (terminal_position, terminal_velocity). Pass empty
    /// terminal vectors for homogeneous data.
    AdjointField march_backward_transpose(const CoefficientTable & coeffs, const Grid & grid,
                                          const SpaceTimeField & rhs,
                                          const std::vector<double> & terminal_position = {},
                                          const std::vector<double> & terminal_velocity = {});

    /// Discrete conormal trace of an adjoint field on one boundary segment;
    /// exact transpose of boundary_to_state under the Q and Sigma pairings.
    BoundaryControl conormal_trace(const AdjointField & adjoint, const Grid & grid, BoundarySide segment);

    /// Terminal position (last level) and velocity by the one-sided
    /// second-order difference (3 v^nt - 4 v^{nt-1} + v^{nt-2}) / (2 dt).
    TerminalPair terminal_of(const SpaceTimeField & field, const Grid & grid);

    /// Q-inner product: dy dt * sum over interior nodes, all time levels.
    double inner_q(const SpaceTimeField & u, const SpaceTimeField & v, const Grid & grid);
    double norm_q(const SpaceTimeField & u, const Grid & grid);

    /// Relative drift of the conserved leapfrog energy
    ///   E^{m+1/2} = 1/2 ||(v^{m+1}-v^m)/dt||^2 + 1/2 a(v^{m+1}, v^m)
    /// over the whole march (meaningful for constant k, zero data).
    double energy_drift(const CoefficientTable & coeffs, const Grid & grid, const SpaceTimeField & v);

    enum class StencilKind
    {
        Forward, ///< residual of the forward scheme for v'' + Lv = f
        Adjoint  ///< residual of the transpose equations for p'' + L*p = rhs
    };

    /// Max interior residual of the named discrete equations on a field.
    /// Forward: stencil rows m = 1..nt-1. Adjoint: transpose slots m = 1..nt,
    /// terminal functional included; PDE-normalized.
    double residual_pde(const SpaceTimeField & field, const CoefficientTable & coeffs,
                        const Grid & grid, const SpaceTimeField * rhs, StencilKind which,
                        const std::vector<double> & terminal_position = {},
                        const std::vector<double> & terminal_velocity = {});
} // namespace scalewave

#endif
