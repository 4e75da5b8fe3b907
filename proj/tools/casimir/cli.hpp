#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir::cli {

//! Process exit codes.
enum ExitCode : int
{
    exit_success = 0,
    exit_usage = 1,
    exit_numerical = 2,
    exit_io = 3,
};

//! Bad flags, bad config values or a method that does not fit the profile.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! File could not be read or written.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Flat "key = value" file. Blank lines and '#' comments are ignored.
std::map<std::string, std::string> read_key_values(std::string const& path);

//! Whitespace- or comma-separated two-column numeric table.
std::vector<std::pair<double, double>> read_two_column(std::string const& path);

//! Write the full contents to path via a temporary file and rename, so the
//! target is either complete or untouched.
void write_atomically(std::string const& path, std::string const& contents);

//! 12 significant digits in scientific notation.
std::string format_sci(double value);

//! Run the command line. argv[0] is the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
