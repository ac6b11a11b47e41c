#ifndef SCALEWAVE_ERRORS_HPP
#define SCALEWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace scalewave
{
    /// Invalid or inconsistent run configuration (bad schema, unknown keys,
    /// grid limits, incompatible geometry).
    class ConfigError : public std::runtime_error
    {
    public:
        explicit ConfigError(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// The principal coefficient a(y,t) is not positive at a queried point,
    /// i.e. the scaled problem is no longer hyperbolic.
    class HyperbolicityViolation : public std::runtime_error
    {
    public:
        explicit HyperbolicityViolation(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// Time step too large for the explicit part of the scheme.
    class CflViolation : public std::runtime_error
    {
    public:
        explicit CflViolation(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// A per-step tridiagonal system lost invertibility.
    class SingularStep : public std::runtime_error
    {
    public:
        explicit SingularStep(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// Pull-back evaluated at a point outside the moving domain.
    class OutOfDomain : public std::runtime_error
    {
    public:
        explicit OutOfDomain(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// H_0^1 quantity requested for data with nonzero end values.
    class NonhomogeneousBoundary : public std::runtime_error
    {
    public:
        explicit NonhomogeneousBoundary(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// Time horizon too short for the unique-continuation gate.
    class HolmgrenViolation : public std::runtime_error
    {
    public:
        explicit HolmgrenViolation(const std::string & msg) : std::runtime_error(msg) {}
    };

    /// Iterative solver ran out of iterations. Carries the best iterate and
    /// the residual history so callers can diagnose or continue.
    class NoConvergence : public std::runtime_error
    {
    public:
        NoConvergence(const std::string & msg, std::vector<double> best_iterate_,
                      std::vector<double> residual_history_)
            : std::runtime_error(msg),
              best_iterate(std::move(best_iterate_)),
              residual_history(std::move(residual_history_))
        {
        }

        std::vector<double> best_iterate;
        std::vector<double> residual_history;
    };
} // namespace scalewave

#endif
