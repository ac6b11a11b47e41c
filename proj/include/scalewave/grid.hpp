#ifndef SCALEWAVE_GRID_HPP
#define SCALEWAVE_GRID_HPP

#include <cstddef>
#include <vector>

#include "scalewave/errors.hpp"
#include "scalewave/scale.hpp"

namespace scalewave
{
    /// @brief Uniform grid on the cylinder [0,1] x [0,T].
    ///
    /// nx cells in space, nt steps in time. The CFL margin for the explicit
    /// part of the stencil is checked against the actual coefficients when a
    /// coefficient table is built, not here.
    struct Grid
    {
        Grid(int nx_, int nt_, double T_);

        int nx;
        int nt;
        double T;
        double dy;
        double dt;

        double y(int j) const { return j * dy; }
        double t(int m) const { return m * dt; }
        int nodes() const { return nx + 1; }
        int levels() const { return nt + 1; }
    };

    /// @brief Discrete function on the space-time grid, indexed (time level m, node j).
    class SpaceTimeField
    {
    public:
        SpaceTimeField() = default;
        explicit SpaceTimeField(const Grid & grid)
            : nx_(grid.nx), nt_(grid.nt), values_((grid.nt + 1) * (grid.nx + 1), 0.0)
        {
        }

        double & operator()(int m, int j) { return values_[static_cast<size_t>(m) * (nx_ + 1) + j]; }
        double operator()(int m, int j) const { return values_[static_cast<size_t>(m) * (nx_ + 1) + j]; }

        int nx() const { return nx_; }
        int nt() const { return nt_; }

        std::vector<double> & data() { return values_; }
        const std::vector<double> & data() const { return values_; }

        /// Copy of one time level (all nx+1 nodes).
        std::vector<double> level(int m) const;

    private:
        int nx_ = 0;
        int nt_ = 0;
        std::vector<double> values_;
    };

    /// @brief Time series of trace values on one boundary point, length nt+1.
    struct BoundaryControl
    {
        BoundaryControl() = default;
        BoundaryControl(BoundarySide segment_, int nt)
            : segment(segment_), samples(static_cast<size_t>(nt) + 1, 0.0)
        {
        }

        BoundarySide segment = BoundarySide::Right;
        std::vector<double> samples;
    };

    /// @brief Terminal position and velocity of a marched field.
    struct TerminalPair
    {
        std::vector<double> position;
        std::vector<double> velocity;
    };

    // Linear algebra helpers shared by the solvers.
    double dot(const std::vector<double> & a, const std::vector<double> & b);
    void axpy(double alpha, const std::vector<double> & x, std::vector<double> & y);
} // namespace scalewave

#endif
