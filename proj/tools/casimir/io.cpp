#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "casimir/units.hpp"
#include "cli.hpp"

namespace casimir::cli {

namespace {
std::string trim(std::string const& s)
{
    return std::string(units::detail::trim(s));
}
}  // namespace

std::map<std::string, std::string> read_key_values(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw UsageError(path + ":" + std::to_string(lineno)
                             + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::vector<std::pair<double, double>> read_two_column(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");

    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        for (auto& c : line)
        {
            if (c == ',')
                c = ' ';
        }
        if (trim(line).empty())
            continue;
        std::istringstream fields(line);
        double first = 0;
        double second = 0;
        std::string extra;
        if (!(fields >> first >> second) || (fields >> extra))
        {
            throw UsageError(path + ":" + std::to_string(lineno)
                             + ": expected two numeric columns");
        }
        rows.emplace_back(first, second);
    }
    return rows;
}

void write_atomically(std::string const& path, std::string const& contents)
{
    namespace fs = std::filesystem;
    fs::path const target(path);
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(rd());

    std::error_code ec;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out)
        {
            out.close();
            fs::remove(tmp, ec);
            throw IoError("write failed for '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target, ec);
    if (ec)
    {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw IoError("cannot move output to '" + path + "': " + ec.message());
    }
}

std::string format_sci(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

}  // namespace casimir::cli
