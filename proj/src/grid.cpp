#include "scalewave/grid.hpp"

namespace scalewave
{
    Grid::Grid(int nx_, int nt_, double T_) : nx(nx_), nt(nt_), T(T_)
    {
        if (nx < 8)
            throw ConfigError("grid: nx must be at least 8");
        if (nt < 16)
            throw ConfigError("grid: nt must be at least 16");
        if (!(T > 0.0))
            throw ConfigError("grid: horizon must be positive");
        dy = 1.0 / nx;
        dt = T / nt;
    }

    std::vector<double> SpaceTimeField::level(int m) const
    {
        std::vector<double> out(nx_ + 1);
        for (int j = 0; j <= nx_; ++j)
            out[j] = (*this)(m, j);
        return out;
    }

    double dot(const std::vector<double> & a, const std::vector<double> & b)
    {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    }

    void axpy(double alpha, const std::vector<double> & x, std::vector<double> & y)
    {
        for (size_t i = 0; i < x.size(); ++i)
            y[i] += alpha * x[i];
    }
} // namespace scalewave
