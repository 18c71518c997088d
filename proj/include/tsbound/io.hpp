#ifndef TSBOUND_IO_HPP
#define TSBOUND_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tsbound/series.hpp"

namespace tsbound::io {

// Shortest decimal representation that round-trips the double exactly.
std::string fmt_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_field(const std::string& value);

// Wide CSV: header row of series ids, one column per series; a blank cell
// terminates that column's series.
std::vector<TimeSeries> parse_wide_csv(std::istream& in, const std::string& domain_tag = "");

// Long CSV: columns id, index, value; rows may arrive unordered per id.
std::vector<TimeSeries> parse_long_csv(std::istream& in, const std::string& domain_tag = "");

// Sniffs the header: "id,index,value" selects the long format, anything else
// the wide format.
std::vector<TimeSeries> load_series_csv(const std::string& path, const std::string& domain_tag = "");

void write_wide_csv(const std::vector<TimeSeries>& series, std::ostream& out);
void write_wide_csv_file(const std::vector<TimeSeries>& series, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace tsbound::io

#endif
