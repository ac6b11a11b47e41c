#include "scalewave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace scalewave
{
    namespace
    {
        // Thomas solve for the per-step system
        //   (1/dt^2) x_j + lower_j x_{j-1} + upper_j x_{j+1} = rhs_j,  j = 1..nx-1.
        void solve_tridiagonal(int n, double diag, const std::vector<double> & lower,
                               const std::vector<double> & upper, std::vector<double> & rhs,
                               std::vector<double> & work)
        {
            work.assign(n, 0.0);
            double piv = diag;
            if (std::abs(piv) < 1e-300)
                throw SingularStep("march: singular tridiagonal pivot");
            work[0] = upper[0] / piv;
            rhs[0] /= piv;
            for (int i = 1; i < n; ++i)
            {
                piv = diag - lower[i] * work[i - 1];
                if (std::abs(piv) < 1e-13 * std::abs(diag))
                    throw SingularStep("march: singular tridiagonal pivot");
                work[i] = upper[i] / piv;
                rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / piv;
            }
            for (int i = n - 2; i >= 0; --i)
                rhs[i] -= work[i] * rhs[i + 1];
        }
    } // namespace

    CoefficientTable::CoefficientTable(const ScaleFunction & k, const Grid & grid, int n, double cfl_limit)
        : nx_(grid.nx), nt_(grid.nt), n_(n), dy_(grid.dy), dt_(grid.dt)
    {
        a_half_.resize(static_cast<size_t>(nt_ + 1) * nx_);
        b_.resize(static_cast<size_t>(nt_ + 1) * (nx_ + 1));
        c_.resize(static_cast<size_t>(nt_ + 1) * (nx_ + 1));
        kn_.resize(nt_ + 1);
        k_.resize(nt_ + 1);

        double max_a = 0.0;
        for (int m = 0; m <= nt_; ++m)
        {
            const double t = grid.t(m);
            const double kv = k.value(t);
            k_[m] = kv;
            kn_[m] = std::pow(kv, n_);
            for (int i = 0; i < nx_; ++i)
            {
                const double y = (i + 0.5) * dy_;
                const Coefficients co = eval_coefficients(k, y, t, n_);
                a_half_[static_cast<size_t>(m) * nx_ + i] = co.a;
                max_a = std::max(max_a, co.a);
            }
            for (int j = 0; j <= nx_; ++j)
            {
                const Coefficients co = eval_coefficients(k, grid.y(j), t, n_);
                b_[static_cast<size_t>(m) * (nx_ + 1) + j] = co.b;
                c_[static_cast<size_t>(m) * (nx_ + 1) + j] = co.c;
                max_a = std::max(max_a, co.a);
            }
        }
        max_sqrt_a_ = std::sqrt(max_a);
        if (dt_ * max_sqrt_a_ / dy_ > cfl_limit * (1.0 + 1e-12))
            throw CflViolation("grid: dt * max(sqrt a) / dy exceeds the CFL margin");
    }

    // Forward scheme, interior stencil at (m, j), m = 1..nt-1:
    //   (v^{m+1} - 2 v^m + v^{m-1})_j / dt^2
    //   - [a_{j+1/2}(v^m_{j+1}-v^m_j) - a_{j-1/2}(v^m_j-v^m_{j-1})] / dy^2
    //   + b^m_j (D0 v^{m+1} - D0 v^{m-1})_j / (2 dt)
    //   + c^m_j (D0 v^m)_j  =  f^m_j
    // with D0 the centered difference. Taylor start for level 1.

    SpaceTimeField march_forward(const CoefficientTable & co, const Grid & grid,
                                 const std::vector<double> & left_trace,
                                 const std::vector<double> & right_trace,
                                 const SpaceTimeField * source, const InitialData & init)
    {
        const int nx = grid.nx;
        const int nt = grid.nt;
        const double dy = grid.dy;
        const double dt = grid.dt;
        const double idt2 = 1.0 / (dt * dt);
        const double idy2 = 1.0 / (dy * dy);

        if (static_cast<int>(left_trace.size()) != nt + 1 || static_cast<int>(right_trace.size()) != nt + 1)
            throw ConfigError("march: traces must have nt+1 samples");
        if (static_cast<int>(init.position.size()) != nx + 1 || static_cast<int>(init.velocity.size()) != nx + 1)
            throw ConfigError("march: initial data must have nx+1 nodes");

        SpaceTimeField v(grid);
        auto f = [&](int m, int j) { return source ? (*source)(m, j) : 0.0; };

        for (int j = 0; j <= nx; ++j)
            v(0, j) = init.position[j];
        v(0, 0) = left_trace[0];
        v(0, nx) = right_trace[0];

        // Taylor start: v^1 = v^0 + dt v1 + dt^2/2 (f - L_h v)^0 with v'(0) = v1.
        for (int j = 1; j < nx; ++j)
        {
            const double ah = (co.a_half(0, j) * (v(0, j + 1) - v(0, j)) -
                               co.a_half(0, j - 1) * (v(0, j) - v(0, j - 1))) * idy2;
            const double d0v = (v(0, j + 1) - v(0, j - 1)) / (2.0 * dy);
            const double d0v1 = (init.velocity[j + 1] - init.velocity[j - 1]) / (2.0 * dy);
            v(1, j) = v(0, j) + dt * init.velocity[j] +
                      0.5 * dt * dt * (f(0, j) + ah - co.b(0, j) * d0v1 - co.c(0, j) * d0v);
        }
        v(1, 0) = left_trace[1];
        v(1, nx) = right_trace[1];

        std::vector<double> rhs(nx - 1), lower(nx - 1), upper(nx - 1), work;
        for (int m = 1; m < nt; ++m)
        {
            for (int j = 1; j < nx; ++j)
            {
                const double ah = (co.a_half(m, j) * (v(m, j + 1) - v(m, j)) -
                                   co.a_half(m, j - 1) * (v(m, j) - v(m, j - 1))) * idy2;
                const double d0vm = (v(m, j + 1) - v(m, j - 1)) / (2.0 * dy);
                const double d0prev = (v(m - 1, j + 1) - v(m - 1, j - 1)) / (2.0 * dy);
                rhs[j - 1] = (2.0 * v(m, j) - v(m - 1, j)) * idt2 + ah - co.c(m, j) * d0vm +
                             co.b(m, j) / (2.0 * dt) * d0prev + f(m, j);
                const double w = co.b(m, j) / (4.0 * dt * dy);
                lower[j - 1] = -w;
                upper[j - 1] = w;
            }
            // Known boundary values of the unknown level enter through the
            // implicit b-coupling; move them to the right-hand side.
            rhs[0] += co.b(m, 1) / (4.0 * dt * dy) * left_trace[m + 1];
            rhs[nx - 2] -= co.b(m, nx - 1) / (4.0 * dt * dy) * right_trace[m + 1];

            solve_tridiagonal(nx - 1, idt2, lower, upper, rhs, work);
            for (int j = 1; j < nx; ++j)
                v(m + 1, j) = rhs[j - 1];
            v(m + 1, 0) = left_trace[m + 1];
            v(m + 1, nx) = right_trace[m + 1];
        }
        return v;
    }

    SpaceTimeField boundary_to_state(const CoefficientTable & coeffs, const Grid & grid,
                                     BoundarySide segment, const std::vector<double> & trace)
    {
        std::vector<double> zero_trace(grid.nt + 1, 0.0);
        InitialData init{std::vector<double>(grid.nx + 1, 0.0), std::vector<double>(grid.nx + 1, 0.0)};
        if (segment == BoundarySide::Left)
            return march_forward(coeffs, grid, trace, zero_trace, nullptr, init);
        return march_forward(coeffs, grid, zero_trace, trace, nullptr, init);
    }

    // ------------------------------------------------------------------
    // Transpose sweep.
    //
    // Multipliers of the forward equations: lam^m (stencil row centered at
    // level m, unknown level m+1), lam_half (Taylor start row), and the
    // boundary-row multipliers which become the conormal flux. The slot
    // equation at level l collects every forward equation referencing v^l;
    // solving slots from nt downward gives one transposed tridiagonal solve
    // per step.
    // ------------------------------------------------------------------

    namespace
    {
        struct TransposeWork
        {
            // lam(m, j) for m = 1..nt-1 interior j; lam_half(j) for the start row.
            std::vector<double> lam;
            std::vector<double> lam_half;
        };

        // Functional slot values: dy dt rhs at interior slots plus the
        // terminal pairing  <v'(T), pT> - <v(T), pTv>  expanded through the
        // one-sided terminal-velocity formula.
        double slot_functional(const SpaceTimeField & rhs, const Grid & grid,
                               const std::vector<double> & pT, const std::vector<double> & pTv,
                               int m, int j)
        {
            const double dy = grid.dy;
            const double dt = grid.dt;
            double F = dy * dt * rhs(m, j);
            if (!pT.empty())
            {
                if (m == grid.nt)
                    F += dy * (1.5 / dt * pT[j] - pTv[j]);
                else if (m == grid.nt - 1)
                    F += dy * (-2.0 / dt) * pT[j];
                else if (m == grid.nt - 2)
                    F += dy * (0.5 / dt) * pT[j];
            }
            return F;
        }
    } // namespace

    AdjointField march_backward_transpose(const CoefficientTable & co, const Grid & grid,
                                          const SpaceTimeField & rhs,
                                          const std::vector<double> & terminal_position,
                                          const std::vector<double> & terminal_velocity)
    {
        const int nx = grid.nx;
        const int nt = grid.nt;
        const double dy = grid.dy;
        const double dt = grid.dt;
        const double idt2 = 1.0 / (dt * dt);
        const double idy2 = 1.0 / (dy * dy);

        std::vector<double> pT = terminal_position;
        std::vector<double> pTv = terminal_velocity;
        if (pT.empty() != pTv.empty())
            throw ConfigError("transpose: give both terminal arrays or neither");
        if (!pT.empty() && (static_cast<int>(pT.size()) != nx + 1 || static_cast<int>(pTv.size()) != nx + 1))
            throw ConfigError("transpose: terminal data must have nx+1 nodes");

        TransposeWork w;
        w.lam.assign(static_cast<size_t>(nt + 1) * (nx + 1), 0.0);
        w.lam_half.assign(nx + 1, 0.0);
        auto lam = [&](int m, int j) -> double & { return w.lam[static_cast<size_t>(m) * (nx + 1) + j]; };

        std::vector<double> r(nx - 1), lower(nx - 1), upper(nx - 1), work;

        // Interior slot at level l references:
        //   E^{l-1} (unknown level):  (1/dt^2) I + (1/(2dt)) Bc^{l-1}
        //   E^l     (center level):  -(2/dt^2) I - A_h^l + Cc^l
        //   E^{l+1} (past level):     (1/dt^2) I - (1/(2dt)) Bc^{l+1}
        // so the transposed recursion solves for lam^{l-1} given lam^l, lam^{l+1}.
        auto gather_center = [&](int l, int j) {
            // (G^l)^T lam^l at interior node j, zero-padded at the boundary.
            const double lj = lam(l, j);
            const double ljm = (j - 1 >= 1) ? lam(l, j - 1) : 0.0;
            const double ljp = (j + 1 <= nx - 1) ? lam(l, j + 1) : 0.0;
            const double ahT = (co.a_half(l, j) * (ljp - lj) - co.a_half(l, j - 1) * (lj - ljm)) * idy2;
            const double ccT = (co.c(l, j - 1) * ljm - co.c(l, j + 1) * ljp) / (2.0 * dy);
            return -2.0 * idt2 * lj - ahT + ccT;
        };
        auto gather_past = [&](int l, int j) {
            // (H^l)^T lam^l: E^l references its past level with (1/dt^2) I - (1/(2dt)) Bc^l.
            const double lj = lam(l, j);
            const double ljm = (j - 1 >= 1) ? lam(l, j - 1) : 0.0;
            const double ljp = (j + 1 <= nx - 1) ? lam(l, j + 1) : 0.0;
            const double bcT = (co.b(l, j - 1) * ljm - co.b(l, j + 1) * ljp) / (2.0 * dy);
            return idt2 * lj - bcT / (2.0 * dt);
        };

        for (int l = nt; l >= 2; --l)
        {
            for (int j = 1; j < nx; ++j)
            {
                double F = slot_functional(rhs, grid, pT, pTv, l, j);
                if (l <= nt - 1)
                    F -= gather_center(l, j);
                if (l + 1 <= nt - 1)
                    F -= gather_past(l + 1, j);
                r[j - 1] = F;
                // Transposed per-step matrix: row j picks the neighbours'
                // implicit couplings of the forward system at level l-1.
                const double wl = (j - 1 >= 1) ? co.b(l - 1, j - 1) / (4.0 * dt * dy) : 0.0;
                const double wu = (j + 1 <= nx - 1) ? co.b(l - 1, j + 1) / (4.0 * dt * dy) : 0.0;
                lower[j - 1] = wl;
                upper[j - 1] = -wu;
            }
            solve_tridiagonal(nx - 1, idt2, lower, upper, r, work);
            for (int j = 1; j < nx; ++j)
                lam(l - 1, j) = r[j - 1];
        }

        // Slot 1: the Taylor-start row carries the identity on level 1.
        for (int j = 1; j < nx; ++j)
        {
            double F = slot_functional(rhs, grid, pT, pTv, 1, j);
            F -= gather_center(1, j);
            if (2 <= nt - 1)
                F -= gather_past(2, j);
            w.lam_half[j] = F;
        }

        // Boundary multipliers = conormal flux. Every forward equation that
        // references a boundary value contributes with its coefficient.
        AdjointField out;
        out.field = SpaceTimeField(grid);
        out.flux_left.assign(nt + 1, 0.0);
        out.flux_right.assign(nt + 1, 0.0);

        for (int m = 0; m <= nt; ++m)
        {
            double fl = 0.0, fr = 0.0;
            if (m >= 1 && m <= nt - 1)
            {
                fl -= lam(m, 1) * (-co.a_half(m, 0) * idy2 - co.c(m, 1) / (2.0 * dy));
                fr -= lam(m, nx - 1) * (-co.a_half(m, nx - 1) * idy2 + co.c(m, nx - 1) / (2.0 * dy));
            }
            if (m + 1 >= 1 && m + 1 <= nt - 1)
            {
                // E^{m+1} references v^m through its past-level b-coupling.
                fl -= lam(m + 1, 1) * (co.b(m + 1, 1) / (4.0 * dt * dy));
                fr -= lam(m + 1, nx - 1) * (-co.b(m + 1, nx - 1) / (4.0 * dt * dy));
            }
            if (m - 1 >= 1 && m - 1 <= nt - 1)
            {
                // E^{m-1} references v^m through its unknown-level b-coupling.
                fl -= lam(m - 1, 1) * (-co.b(m - 1, 1) / (4.0 * dt * dy));
                fr -= lam(m - 1, nx - 1) * (co.b(m - 1, nx - 1) / (4.0 * dt * dy));
            }
            if (m == 0)
            {
                fl -= w.lam_half[1] * (-0.5 * dt * dt * (co.a_half(0, 0) * idy2 + co.c(0, 1) / (2.0 * dy)));
                fr -= w.lam_half[nx - 1] *
                      (-0.5 * dt * dt * (co.a_half(0, nx - 1) * idy2 - co.c(0, nx - 1) / (2.0 * dy)));
            }
            out.flux_left[m] = fl;
            out.flux_right[m] = fr;
        }

        // Normalize multipliers into a field approximating the adjoint state.
        for (int m = 1; m <= nt - 1; ++m)
            for (int j = 1; j < nx; ++j)
                out.field(m, j) = lam(m, j) / (dy * dt);
        for (int j = 1; j < nx; ++j)
            out.field(0, j) = w.lam_half[j] * dt / dy;
        if (!pT.empty())
            for (int j = 1; j < nx; ++j)
                out.field(nt, j) = pT[j];
        return out;
    }

    BoundaryControl conormal_trace(const AdjointField & adjoint, const Grid & grid, BoundarySide segment)
    {
        BoundaryControl out(segment, grid.nt);
        const std::vector<double> & flux =
            segment == BoundarySide::Left ? adjoint.flux_left : adjoint.flux_right;
        for (int m = 0; m <= grid.nt; ++m)
            out.samples[m] = flux[m] / grid.dt;
        return out;
    }

    TerminalPair terminal_of(const SpaceTimeField & field, const Grid & grid)
    {
        const int nx = grid.nx;
        const int nt = grid.nt;
        TerminalPair out;
        out.position = field.level(nt);
        out.velocity.assign(nx + 1, 0.0);
        for (int j = 0; j <= nx; ++j)
            out.velocity[j] =
                (3.0 * field(nt, j) - 4.0 * field(nt - 1, j) + field(nt - 2, j)) / (2.0 * grid.dt);
        return out;
    }

    double inner_q(const SpaceTimeField & u, const SpaceTimeField & v, const Grid & grid)
    {
        double s = 0.0;
        for (int m = 0; m <= grid.nt; ++m)
            for (int j = 1; j < grid.nx; ++j)
                s += u(m, j) * v(m, j);
        return s * grid.dy * grid.dt;
    }

    double norm_q(const SpaceTimeField & u, const Grid & grid)
    {
        return std::sqrt(inner_q(u, u, grid));
    }

    double energy_drift(const CoefficientTable & co, const Grid & grid, const SpaceTimeField & v)
    {
        const int nx = grid.nx;
        const double dy = grid.dy;
        const double dt = grid.dt;
        double e0 = 0.0, max_dev = 0.0;
        for (int m = 0; m < grid.nt; ++m)
        {
            double kin = 0.0;
            for (int j = 1; j < nx; ++j)
            {
                const double d = (v(m + 1, j) - v(m, j)) / dt;
                kin += d * d;
            }
            double pot = 0.0;
            for (int i = 0; i < nx; ++i)
            {
                const double gu = (v(m + 1, i + 1) - v(m + 1, i)) / dy;
                const double gl = (v(m, i + 1) - v(m, i)) / dy;
                pot += co.a_half(m, i) * gu * gl;
            }
            const double e = 0.5 * dy * (kin + pot);
            if (m == 0)
                e0 = e;
            max_dev = std::max(max_dev, std::abs(e - e0));
        }
        return max_dev / std::max(std::abs(e0), 1e-300);
    }

    double residual_pde(const SpaceTimeField & field, const CoefficientTable & co, const Grid & grid,
                        const SpaceTimeField * rhs, StencilKind which,
                        const std::vector<double> & terminal_position,
                        const std::vector<double> & terminal_velocity)
    {
        const int nx = grid.nx;
        const int nt = grid.nt;
        const double dy = grid.dy;
        const double dt = grid.dt;
        const double idt2 = 1.0 / (dt * dt);
        const double idy2 = 1.0 / (dy * dy);
        double worst = 0.0;

        if (which == StencilKind::Forward)
        {
            for (int m = 1; m < nt; ++m)
                for (int j = 1; j < nx; ++j)
                {
                    const double ah = (co.a_half(m, j) * (field(m, j + 1) - field(m, j)) -
                                       co.a_half(m, j - 1) * (field(m, j) - field(m, j - 1))) * idy2;
                    const double d0m = (field(m, j + 1) - field(m, j - 1)) / (2.0 * dy);
                    const double d0p = (field(m + 1, j + 1) - field(m + 1, j - 1)) / (2.0 * dy);
                    const double d0q = (field(m - 1, j + 1) - field(m - 1, j - 1)) / (2.0 * dy);
                    const double res = (field(m + 1, j) - 2.0 * field(m, j) + field(m - 1, j)) * idt2 -
                                       ah + co.b(m, j) * (d0p - d0q) / (2.0 * dt) + co.c(m, j) * d0m -
                                       (rhs ? (*rhs)(m, j) : 0.0);
                    worst = std::max(worst, std::abs(res));
                }
            return worst;
        }

        // Adjoint: rebuild the multipliers from the normalized field and
        // evaluate the transpose slot equations, PDE-normalized by dy dt.
        SpaceTimeField zero;
        const SpaceTimeField & r = rhs ? *rhs : (zero = SpaceTimeField(grid));
        auto lam = [&](int m, int j) {
            if (m >= 1 && m <= nt - 1)
                return field(m, j) * dy * dt;
            return 0.0;
        };
        auto lam_half = [&](int j) { return field(0, j) * dy / dt; };

        for (int l = 1; l <= nt; ++l)
            for (int j = 1; j < nx; ++j)
            {
                double acc = 0.0;
                // (T^{l-1})^T lam^{l-1}  (for l = 1 the start-row identity).
                if (l == 1)
                {
                    acc += lam_half(j);
                }
                else
                {
                    const double ljm = (j - 1 >= 1) ? lam(l - 1, j - 1) : 0.0;
                    const double ljp = (j + 1 <= nx - 1) ? lam(l - 1, j + 1) : 0.0;
                    acc += idt2 * lam(l - 1, j);
                    acc += ljm * co.b(l - 1, j - 1) / (4.0 * dt * dy);
                    acc -= ljp * co.b(l - 1, j + 1) / (4.0 * dt * dy);
                }
                if (l <= nt - 1)
                {
                    const double lj = lam(l, j);
                    const double ljm = (j - 1 >= 1) ? lam(l, j - 1) : 0.0;
                    const double ljp = (j + 1 <= nx - 1) ? lam(l, j + 1) : 0.0;
                    const double ahT = (co.a_half(l, j) * (ljp - lj) - co.a_half(l, j - 1) * (lj - ljm)) * idy2;
                    const double ccT = (co.c(l, j - 1) * ljm - co.c(l, j + 1) * ljp) / (2.0 * dy);
                    acc += -2.0 * idt2 * lj - ahT + ccT;
                }
                if (l + 1 <= nt - 1)
                {
                    const double lj = lam(l + 1, j);
                    const double ljm = (j - 1 >= 1) ? lam(l + 1, j - 1) : 0.0;
                    const double ljp = (j + 1 <= nx - 1) ? lam(l + 1, j + 1) : 0.0;
                    const double bcT = (co.b(l + 1, j - 1) * ljm - co.b(l + 1, j + 1) * ljp) / (2.0 * dy);
                    acc += idt2 * lj - bcT / (2.0 * dt);
                }
                double F = dy * dt * r(l, j);
                if (!terminal_position.empty())
                {
                    if (l == nt)
                        F += dy * (1.5 / dt * terminal_position[j] - terminal_velocity[j]);
                    else if (l == nt - 1)
                        F += dy * (-2.0 / dt) * terminal_position[j];
                    else if (l == nt - 2)
                        F += dy * (0.5 / dt) * terminal_position[j];
                }
                worst = std::max(worst, std::abs(acc - F) / (dy * dt));
            }
        return worst;
    }

} // namespace scalewave
