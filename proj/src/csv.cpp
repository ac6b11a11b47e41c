#include "scalewave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "scalewave/errors.hpp"

namespace scalewave
{
    namespace
    {
        std::string fmt(double x)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        std::vector<std::string> split_line(const std::string & line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                out.push_back(cell);
            return out;
        }

        std::ifstream open_for_read(const std::string & path)
        {
            std::ifstream in(path);
            if (!in)
                throw ConfigError("csv: cannot open " + path);
            return in;
        }
    } // namespace

    void write_field_csv(const std::string & path, const SpaceTimeField & field, const Grid & grid)
    {
        std::ofstream out(path);
        if (!out)
            throw ConfigError("csv: cannot write " + path);
        out << "t/y";
        for (int j = 0; j <= grid.nx; ++j)
            out << ',' << fmt(grid.y(j));
        out << '\n';
        for (int m = 0; m <= grid.nt; ++m)
        {
            out << fmt(grid.t(m));
            for (int j = 0; j <= grid.nx; ++j)
                out << ',' << fmt(field(m, j));
            out << '\n';
        }
    }

    SpaceTimeField read_field_csv(const std::string & path, const Grid & grid)
    {
        std::ifstream in = open_for_read(path);
        std::string line;
        if (!std::getline(in, line))
            throw ConfigError("csv: empty field file " + path);
        SpaceTimeField field(grid);
        for (int m = 0; m <= grid.nt; ++m)
        {
            if (!std::getline(in, line))
                throw ConfigError("csv: field file too short: " + path);
            const std::vector<std::string> cells = split_line(line);
            if (static_cast<int>(cells.size()) != grid.nx + 2)
                throw ConfigError("csv: field row width mismatch in " + path);
            for (int j = 0; j <= grid.nx; ++j)
                field(m, j) = std::stod(cells[j + 1]);
        }
        return field;
    }

    void write_control_csv(const std::string & path, const std::vector<double> & samples,
                           const Grid & grid)
    {
        std::ofstream out(path);
        if (!out)
            throw ConfigError("csv: cannot write " + path);
        out << "t,w\n";
        for (int m = 0; m <= grid.nt; ++m)
            out << fmt(grid.t(m)) << ',' << fmt(samples[m]) << '\n';
    }

    std::vector<double> read_control_csv(const std::string & path, const Grid & grid)
    {
        std::ifstream in = open_for_read(path);
        std::string line;
        std::vector<double> samples;
        bool first = true;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const std::vector<std::string> cells = split_line(line);
            if (first)
            {
                first = false;
                // optional header
                try
                {
                    (void)std::stod(cells.at(0));
                }
                catch (...)
                {
                    continue;
                }
            }
            if (cells.size() < 2)
                throw ConfigError("csv: control rows need (t, w): " + path);
            samples.push_back(std::stod(cells[1]));
        }
        if (static_cast<int>(samples.size()) != grid.nt + 1)
            throw ConfigError("csv: control length mismatch (want nt+1 samples): " + path);
        return samples;
    }

    void write_profile_csv(const std::string & path, const std::vector<double> & values,
                           const Grid & grid)
    {
        std::ofstream out(path);
        if (!out)
            throw ConfigError("csv: cannot write " + path);
        out << "y,value\n";
        for (int j = 0; j <= grid.nx; ++j)
            out << fmt(grid.y(j)) << ',' << fmt(values[j]) << '\n';
    }

    std::vector<double> read_profile_csv(const std::string & path, const Grid & grid)
    {
        std::ifstream in = open_for_read(path);
        std::string line;
        std::vector<double> values;
        bool first = true;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const std::vector<std::string> cells = split_line(line);
            if (first)
            {
                first = false;
                try
                {
                    (void)std::stod(cells.at(0));
                }
                catch (...)
                {
                    continue;
                }
            }
            if (cells.size() < 2)
                throw ConfigError("csv: profile rows need (y, value): " + path);
            values.push_back(std::stod(cells[1]));
        }
        if (static_cast<int>(values.size()) != grid.nx + 1)
            throw ConfigError("csv: profile length mismatch (want nx+1 nodes): " + path);
        return values;
    }

    void write_terminal_csv(const std::string & path, const TerminalPair & terminal, const Grid & grid)
    {
        std::ofstream out(path);
        if (!out)
            throw ConfigError("csv: cannot write " + path);
        out << "y,position,velocity\n";
        for (int j = 0; j <= grid.nx; ++j)
            out << fmt(grid.y(j)) << ',' << fmt(terminal.position[j]) << ',' << fmt(terminal.velocity[j])
                << '\n';
    }
} // namespace scalewave
