#include "scalewave/norms.hpp"

#include <cmath>

#include "scalewave/errors.hpp"

namespace scalewave
{
    namespace
    {
        // Solve -z'' = v on the interior nodes with homogeneous Dirichlet ends,
        // standard second-order stencil. Input and output are full nodal vectors.
        std::vector<double> dirichlet_poisson(const std::vector<double> & v, double dy)
        {
            const int n = static_cast<int>(v.size()) - 2; // interior count
            std::vector<double> z(v.size(), 0.0);
            if (n <= 0)
                return z;
            const double h2 = dy * dy;
            std::vector<double> diag(n, 2.0 / h2), rhs(n);
            for (int i = 0; i < n; ++i)
                rhs[i] = v[i + 1];
            const double off = -1.0 / h2;
            for (int i = 1; i < n; ++i)
            {
                const double w = off / diag[i - 1];
                diag[i] -= w * off;
                rhs[i] -= w * rhs[i - 1];
            }
            rhs[n - 1] /= diag[n - 1];
            for (int i = n - 2; i >= 0; --i)
                rhs[i] = (rhs[i] - off * rhs[i + 1]) / diag[i];
            for (int i = 0; i < n; ++i)
                z[i + 1] = rhs[i];
            return z;
        }
    } // namespace

    double norm_l2_omega(const std::vector<double> & v, double dy)
    {
        double s = 0.0;
        for (size_t j = 1; j + 1 < v.size(); ++j)
            s += v[j] * v[j];
        return std::sqrt(dy * s);
    }

    double norm_h01_omega(const std::vector<double> & v, double dy)
    {
        if (v.front() != 0.0 || v.back() != 0.0)
            throw NonhomogeneousBoundary("norm_h01: end values must vanish");
        double s = 0.0;
        for (size_t j = 0; j + 1 < v.size(); ++j)
        {
            const double d = (v[j + 1] - v[j]) / dy;
            s += d * d;
        }
        return std::sqrt(dy * s);
    }

    double norm_hm1_omega(const std::vector<double> & v, double dy)
    {
        const std::vector<double> z = dirichlet_poisson(v, dy);
        double s = 0.0;
        for (size_t j = 1; j + 1 < v.size(); ++j)
            s += v[j] * z[j];
        return std::sqrt(std::max(dy * s, 0.0));
    }

    double norm_l2_sigma(const std::vector<double> & w, double dt)
    {
        double s = 0.0;
        for (double x : w)
            s += x * x;
        return std::sqrt(dt * s);
    }

    double inner_l2_omega(const std::vector<double> & u, const std::vector<double> & v, double dy)
    {
        double s = 0.0;
        for (size_t j = 1; j + 1 < u.size(); ++j)
            s += u[j] * v[j];
        return dy * s;
    }

    double inner_h01_omega(const std::vector<double> & u, const std::vector<double> & v, double dy)
    {
        double s = 0.0;
        for (size_t j = 0; j + 1 < u.size(); ++j)
            s += ((u[j + 1] - u[j]) / dy) * ((v[j + 1] - v[j]) / dy);
        return dy * s;
    }

    double inner_l2_sigma(const std::vector<double> & u, const std::vector<double> & w, double dt)
    {
        double s = 0.0;
        for (size_t i = 0; i < u.size(); ++i)
            s += u[i] * w[i];
        return dt * s;
    }

    std::vector<double> riesz_h01(const std::vector<double> & v, double dy)
    {
        return dirichlet_poisson(v, dy);
    }
} // namespace scalewave
