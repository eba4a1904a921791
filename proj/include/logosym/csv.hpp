#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace logosym::csv {

// Minimal RFC 4180 style reader/writer: fields containing a comma, quote or
// newline are quoted, embedded quotes doubled. Records do not span lines.
std::vector<std::string> parse_line(std::string_view line);
std::string quote(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest representation that round-trips exactly.
std::string format_double(double v);
double parse_double(std::string_view s);

// Reads the next non-empty line; false at end of input.
bool next_record(std::istream& in, std::vector<std::string>& fields);

}  // namespace logosym::csv
