#include "scalewave/scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "scalewave/grid.hpp"

namespace scalewave
{
    namespace
    {
        constexpr int kValidationSamples = 2048;
    }

    ScaleFunction::ScaleFunction(ScaleFamily family, std::vector<double> params, double horizon)
        : family_(family), params_(std::move(params)), horizon_(horizon)
    {
        if (horizon_ <= 0.0)
            throw ConfigError("scale: horizon must be positive");
        size_t expected = 0;
        switch (family_)
        {
        case ScaleFamily::Constant: expected = 1; break;
        case ScaleFamily::Linear: expected = 2; break;
        case ScaleFamily::Sinusoidal: expected = 3; break;
        case ScaleFamily::Sampled:
            throw ConfigError("scale: use ScaleFunction::sampled for the sampled family");
        }
        if (params_.size() != expected)
            throw ConfigError("scale: wrong parameter count for family");
        validate();
    }

    ScaleFunction ScaleFunction::sampled(std::vector<double> values, std::vector<double> derivatives,
                                         double horizon)
    {
        if (horizon <= 0.0)
            throw ConfigError("scale: horizon must be positive");
        const size_t n = values.size();
        if (n < 4 || derivatives.size() != n)
            throw ConfigError("scale: sampled family needs >= 4 matching value/derivative samples");

        const double h = horizon / static_cast<double>(n - 1);

        // Smoothness surrogate: the supplied derivatives must agree with
        // fourth-order finite differences of the values (relative 1e-6).
        double scale = 1.0;
        for (double d : derivatives) scale = std::max(scale, std::abs(d));
        for (size_t i = 2; i + 2 < n; ++i)
        {
            const double fd = (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2]) / (12.0 * h);
            if (std::abs(fd - derivatives[i]) > 1e-6 * scale)
                throw ConfigError("scale: sampled derivatives inconsistent with finite differences of values");
        }

        ScaleFunction k;
        k.family_ = ScaleFamily::Sampled;
        k.horizon_ = horizon;
        k.samples_ = std::move(values);
        k.sample_dt_ = h;

        // Clamped cubic spline: end slopes from the supplied derivatives.
        // Solve the standard tridiagonal system for the second-derivative knots.
        const size_t m = n;
        std::vector<double> rhs(m), diag(m), sub(m), sup(m), M(m);
        diag[0] = 2.0 * h;
        sup[0] = h;
        rhs[0] = 6.0 * ((k.samples_[1] - k.samples_[0]) / h - derivatives.front());
        for (size_t i = 1; i + 1 < m; ++i)
        {
            sub[i] = h;
            diag[i] = 4.0 * h;
            sup[i] = h;
            rhs[i] = 6.0 * ((k.samples_[i + 1] - 2.0 * k.samples_[i] + k.samples_[i - 1]) / h);
        }
        sub[m - 1] = h;
        diag[m - 1] = 2.0 * h;
        rhs[m - 1] = 6.0 * (derivatives.back() - (k.samples_[m - 1] - k.samples_[m - 2]) / h);
        for (size_t i = 1; i < m; ++i)
        {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        M[m - 1] = rhs[m - 1] / diag[m - 1];
        for (size_t i = m - 1; i-- > 0;)
            M[i] = (rhs[i] - sup[i] * M[i + 1]) / diag[i];

        k.spline_b_.resize(m - 1);
        k.spline_c_.resize(m - 1);
        k.spline_d_.resize(m - 1);
        for (size_t i = 0; i + 1 < m; ++i)
        {
            k.spline_c_[i] = M[i] / 2.0;
            k.spline_d_[i] = (M[i + 1] - M[i]) / (6.0 * h);
            k.spline_b_[i] = (k.samples_[i + 1] - k.samples_[i]) / h - h * (2.0 * M[i] + M[i + 1]) / 6.0;
        }

        k.validate();
        return k;
    }

    void ScaleFunction::validate() const
    {
        double max_d = 0.0;
        for (int i = 0; i <= kValidationSamples; ++i)
        {
            const double t = horizon_ * static_cast<double>(i) / kValidationSamples;
            const double k = value(t);
            if (!(k > 0.0))
                throw HyperbolicityViolation("scale: k(t) must stay positive on [0, T]");
            max_d = std::max(max_d, std::abs(derivative(t)));
        }
        if (!(max_d < 1.0))
            throw HyperbolicityViolation("scale: sup |k'(t)| must stay below 1 on [0, T]");
        const_cast<ScaleFunction *>(this)->max_abs_derivative_ = max_d;
    }

    double ScaleFunction::value(double t) const
    {
        switch (family_)
        {
        case ScaleFamily::Constant: return params_[0];
        case ScaleFamily::Linear: return params_[0] + params_[1] * t;
        case ScaleFamily::Sinusoidal: return params_[2] + params_[0] * std::sin(params_[1] * t);
        case ScaleFamily::Sampled:
        {
            const size_t last = samples_.size() - 2;
            size_t i = static_cast<size_t>(std::clamp(t / sample_dt_, 0.0, static_cast<double>(last)));
            i = std::min(i, last);
            const double s = t - static_cast<double>(i) * sample_dt_;
            return samples_[i] + s * (spline_b_[i] + s * (spline_c_[i] + s * spline_d_[i]));
        }
        }
        return 1.0;
    }

    double ScaleFunction::derivative(double t) const
    {
        switch (family_)
        {
        case ScaleFamily::Constant: return 0.0;
        case ScaleFamily::Linear: return params_[1];
        case ScaleFamily::Sinusoidal: return params_[0] * params_[1] * std::cos(params_[1] * t);
        case ScaleFamily::Sampled:
        {
            const size_t last = samples_.size() - 2;
            size_t i = static_cast<size_t>(std::clamp(t / sample_dt_, 0.0, static_cast<double>(last)));
            i = std::min(i, last);
            const double s = t - static_cast<double>(i) * sample_dt_;
            return spline_b_[i] + s * (2.0 * spline_c_[i] + 3.0 * s * spline_d_[i]);
        }
        }
        return 0.0;
    }

    double ScaleFunction::second_derivative(double t) const
    {
        switch (family_)
        {
        case ScaleFamily::Constant: return 0.0;
        case ScaleFamily::Linear: return 0.0;
        case ScaleFamily::Sinusoidal:
            return -params_[0] * params_[1] * params_[1] * std::sin(params_[1] * t);
        case ScaleFamily::Sampled:
        {
            const size_t last = samples_.size() - 2;
            size_t i = static_cast<size_t>(std::clamp(t / sample_dt_, 0.0, static_cast<double>(last)));
            i = std::min(i, last);
            const double s = t - static_cast<double>(i) * sample_dt_;
            return 2.0 * spline_c_[i] + 6.0 * s * spline_d_[i];
        }
        }
        return 0.0;
    }

    Geometry::Geometry(int n_, ControlBoundary gamma0_, SplitMode mode_)
        : n(n_), gamma0(gamma0_), mode(mode_)
    {
        if (n < 1)
            throw ConfigError("geometry: dimension parameter n must be >= 1");
        if (mode == SplitMode::Disjoint && gamma0 != ControlBoundary::Both)
            throw ConfigError("geometry: disjoint split needs gamma0 = both (leader left, follower right)");
        if (mode == SplitMode::Additive && gamma0 == ControlBoundary::Both)
            throw ConfigError("geometry: additive split needs a single controlled endpoint");
    }

    BoundarySide Geometry::leader_side() const
    {
        if (mode == SplitMode::Disjoint)
            return BoundarySide::Left;
        return gamma0 == ControlBoundary::Left ? BoundarySide::Left : BoundarySide::Right;
    }

    BoundarySide Geometry::follower_side() const
    {
        if (mode == SplitMode::Disjoint)
            return BoundarySide::Right;
        return gamma0 == ControlBoundary::Left ? BoundarySide::Left : BoundarySide::Right;
    }

    double Geometry::control_distance() const
    {
        return gamma0 == ControlBoundary::Both ? 0.5 : 1.0;
    }

    Coefficients eval_coefficients(const ScaleFunction & k, double y, double t, int n)
    {
        const double kv = k.value(t);
        const double kp = k.derivative(t);
        const double kpp = k.second_derivative(t);
        Coefficients out;
        out.a = (1.0 - kp * kp * y * y) / (kv * kv);
        out.b = -2.0 * kp * y / kv;
        out.c = ((1.0 - n) * kp * kp - kpp * kv) * y / (kv * kv);
        if (!(out.a > 0.0))
            throw HyperbolicityViolation("coefficients: a(y,t) <= 0");
        return out;
    }

    AdjointCoefficients eval_adjoint_coefficients(const ScaleFunction & k, double y, double t, int n)
    {
        const double kv = k.value(t);
        const double kp = k.derivative(t);
        const double kpp = k.second_derivative(t);
        const double a = (1.0 - kp * kp * y * y) / (kv * kv);
        if (!(a > 0.0))
            throw HyperbolicityViolation("adjoint coefficients: a(y,t) <= 0");
        AdjointCoefficients out;
        out.b = -2.0 * kp * y / kv;
        out.b0 = -2.0 * n * kp / kv;
        out.c_drift = ((n + 1.0) * kp * kp - kpp * kv) * y / (kv * kv);
        out.c0 = (n * (n + 1.0) * kp * kp - n * kpp * kv) / (kv * kv);
        return out;
    }

    bool holmgren_time_ok(double T, const Geometry & geom)
    {
        return T > 2.0 * geom.control_distance();
    }

    double pull_back_state(const SpaceTimeField & v, const Grid & grid, const ScaleFunction & k,
                           double x, int time_level)
    {
        const int nx = v.nx();
        if (time_level < 0 || time_level > v.nt())
            throw OutOfDomain("pull_back: time level outside the grid");
        const double kv = k.value(grid.t(time_level));
        if (x < 0.0 || x > kv * (1.0 + 1e-12))
            throw OutOfDomain("pull_back: x outside the moving domain");
        const double y = std::clamp(x / kv, 0.0, 1.0);
        const double dy = 1.0 / nx;
        int j = std::min(static_cast<int>(y / dy), nx - 1);
        const double s = (y - j * dy) / dy;
        return (1.0 - s) * v(time_level, j) + s * v(time_level, j + 1);
    }
} // namespace scalewave
