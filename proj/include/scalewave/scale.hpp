#ifndef SCALEWAVE_SCALE_HPP
#define SCALEWAVE_SCALE_HPP

#include <string>
#include <vector>

#include "scalewave/errors.hpp"

namespace scalewave
{
    enum class ScaleFamily
    {
        Constant,   ///< k(t) = c
        Linear,     ///< k(t) = c0 + c1*t
        Sinusoidal, ///< k(t) = offset + amplitude*sin(frequency*t)
        Sampled     ///< cubic spline through uniform samples on [0, horizon]
    };

    /// @brief The domain scaling k(t) together with its first two derivatives.
    ///
    /// Every coefficient of the cylinder operator is a closed form in
    /// (k, k', k''), so this class is the single source of the geometry.
    /// Construction validates, on a dense sample of [0, horizon]:
    ///   k > 0  and  sup |k'| < 1  (uniform coercivity of the principal part).
    class ScaleFunction
    {
    public:
        /// Analytic families. For Sinusoidal, params = {amplitude, frequency, offset}
        /// meaning k(t) = offset + amplitude*sin(frequency*t). For Linear,
        /// params = {c0, c1}; for Constant, params = {c}.
        ScaleFunction(ScaleFamily family, std::vector<double> params, double horizon);

        /// Sampled family: values and first-derivative samples on a uniform grid
        /// over [0, horizon]. The derivative samples must agree with finite
        /// differences of the values to relative tolerance 1e-6 (smoothness
        /// surrogate). Interpolation is a clamped cubic spline, so k'' stays
        /// continuous.
        static ScaleFunction sampled(std::vector<double> values, std::vector<double> derivatives,
                                     double horizon);

        double value(double t) const;
        double derivative(double t) const;
        double second_derivative(double t) const;

        ScaleFamily family() const { return family_; }
        const std::vector<double> & params() const { return params_; }
        double horizon() const { return horizon_; }

        /// Largest sup|k'| seen during validation; strictly below 1 by construction.
        double max_derivative() const { return max_abs_derivative_; }

    private:
        ScaleFunction() = default;
        void validate() const;

        ScaleFamily family_ = ScaleFamily::Constant;
        std::vector<double> params_;
        double horizon_ = 1.0;
        double max_abs_derivative_ = 0.0;

        // Sampled family only: spline coefficients per interval.
        std::vector<double> samples_;
        std::vector<double> spline_b_, spline_c_, spline_d_;
        double sample_dt_ = 0.0;
    };

    enum class BoundarySide
    {
        Left,
        Right
    };

    enum class ControlBoundary
    {
        Left,
        Right,
        Both
    };

    enum class SplitMode
    {
        Disjoint, ///< leader and follower act on different boundary points
        Additive  ///< leader and follower traces add on the same boundary point
    };

    /// @brief Control geometry on the unit interval.
    ///
    /// n is the dimension parameter entering the coefficient formulas only;
    /// the solver itself is one-dimensional. Disjoint mode requires both
    /// endpoints (leader left, follower right); additive mode requires a
    /// single endpoint carrying the summed trace.
    struct Geometry
    {
        Geometry(int n_, ControlBoundary gamma0_, SplitMode mode_);

        int n = 1;
        ControlBoundary gamma0 = ControlBoundary::Right;
        SplitMode mode = SplitMode::Additive;

        BoundarySide leader_side() const;
        BoundarySide follower_side() const;

        /// Distance sup_{x in Omega} d(x, Gamma_0): 1 for a single endpoint,
        /// 1/2 when both endpoints are controlled.
        double control_distance() const;
    };

    /// Coefficients of the cylinder operator at one point:
    ///   L v = -(a v_y)_y + b v'_y + c v_y.
    struct Coefficients
    {
        double a;
        double b;
        double c;
    };

    /// Lower-order coefficients of the formal adjoint at one point:
    ///   L* p = -(a p_y)_y + b p'_y + b0 p' + c_drift p_y + c0 p,
    /// with the same principal coefficient a as L.
    struct AdjointCoefficients
    {
        double b;
        double b0;
        double c_drift;
        double c0;
    };

    /// Evaluate (a, b, c) at (y, t). Throws HyperbolicityViolation if a <= 0.
    Coefficients eval_coefficients(const ScaleFunction & k, double y, double t, int n);

    /// Evaluate the lower-order adjoint coefficients at (y, t).
    AdjointCoefficients eval_adjoint_coefficients(const ScaleFunction & k, double y, double t, int n);

    /// Horizon gate T > 2 d(Omega, Gamma_0); strict inequality.
    bool holmgren_time_ok(double T, const Geometry & geom);

    /// Evaluate u(x, t_m) = v(x / k(t_m), t_m) with linear interpolation
    /// between the nodes of row m of the field. Throws OutOfDomain when
    /// x > k(t_m). Declared here; defined with the field type available.
    class SpaceTimeField;
    struct Grid;
    double pull_back_state(const SpaceTimeField & v, const Grid & grid, const ScaleFunction & k,
                           double x, int time_level);
} // namespace scalewave

#endif
