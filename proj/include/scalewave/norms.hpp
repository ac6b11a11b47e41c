#ifndef SCALEWAVE_NORMS_HPP
#define SCALEWAVE_NORMS_HPP

#include <vector>

#include "scalewave/grid.hpp"

namespace scalewave
{
    // Discrete spaces on the unit interval. Vectors hold all nx+1 nodal
    // values; L2 sums run over interior nodes, H_0^1 uses one-sided
    // differences of homogeneous data, and H^{-1} is realized through the
    // inverse discrete Dirichlet Laplacian (one tridiagonal solve).

    double norm_l2_omega(const std::vector<double> & v, double dy);
    double norm_h01_omega(const std::vector<double> & v, double dy);
    double norm_hm1_omega(const std::vector<double> & v, double dy);
    double norm_l2_sigma(const std::vector<double> & w, double dt);

    double inner_l2_omega(const std::vector<double> & u, const std::vector<double> & v, double dy);
    double inner_h01_omega(const std::vector<double> & u, const std::vector<double> & v, double dy);
    double inner_l2_sigma(const std::vector<double> & u, const std::vector<double> & w, double dt);

    /// Solve -z'' = v (discrete Dirichlet Laplacian) for the Riesz
    /// representative of an H_0^1 functional given by its L2 representation:
    /// <riesz(v), g>_{H01} = <v, g>_{L2} holds exactly for every discrete g.
    std::vector<double> riesz_h01(const std::vector<double> & v, double dy);
} // namespace scalewave

#endif
