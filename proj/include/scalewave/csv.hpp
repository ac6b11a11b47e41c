#ifndef SCALEWAVE_CSV_HPP
#define SCALEWAVE_CSV_HPP

#include <string>
#include <vector>

#include "scalewave/grid.hpp"

namespace scalewave
{
    // Field layout: first row "t/y, y_0, ..., y_nx"; each following row
    // "t_m, v(m,0), ..., v(m,nx)". Controls: "t,w" rows. Values are written
    // with enough digits to round-trip exactly.

    void write_field_csv(const std::string & path, const SpaceTimeField & field, const Grid & grid);
    SpaceTimeField read_field_csv(const std::string & path, const Grid & grid);

    void write_control_csv(const std::string & path, const std::vector<double> & samples,
                           const Grid & grid);
    std::vector<double> read_control_csv(const std::string & path, const Grid & grid);

    /// Two-column (y, value) profile, one row per node.
    void write_profile_csv(const std::string & path, const std::vector<double> & values,
                           const Grid & grid);
    std::vector<double> read_profile_csv(const std::string & path, const Grid & grid);

    /// Terminal data: rows (y, position, velocity).
    void write_terminal_csv(const std::string & path, const TerminalPair & terminal, const Grid & grid);
} // namespace scalewave

#endif
