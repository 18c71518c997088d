#include "tsbound/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tsbound/errors.hpp"

namespace tsbound::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

double parse_value(const std::string& field, const std::string& context) {
    const std::string t = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw InvalidInputError("csv: unparsable number '" + t + "' (" + context + ")");
    if (!std::isfinite(v))
        throw InvalidInputError("csv: non-finite value '" + t + "' (" + context + ")");
    return v;
}

void check_unique_ids(const std::vector<TimeSeries>& series) {
    std::set<std::string> seen;
    for (const auto& s : series)
        if (!seen.insert(s.id).second)
            throw InvalidInputError("csv: duplicate series id '" + s.id + "'");
}

} // namespace

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::vector<TimeSeries> parse_wide_csv(std::istream& in, const std::string& domain_tag) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("wide csv: empty file");
    const auto header = split_csv_line(line);
    if (header.empty()) throw InvalidInputError("wide csv: empty header");

    std::vector<TimeSeries> series(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) {
        series[j].id = trim(header[j]);
        series[j].domain_tag = domain_tag;
        if (series[j].id.empty())
            throw InvalidInputError("wide csv: blank series id in header column " +
                                    std::to_string(j + 1));
    }

    std::vector<bool> terminated(header.size(), false);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() > header.size())
            throw InvalidInputError("wide csv: row " + std::to_string(row) +
                                    " has more fields than the header");
        for (std::size_t j = 0; j < header.size(); ++j) {
            const std::string field = j < fields.size() ? trim(fields[j]) : "";
            if (field.empty()) {
                terminated[j] = true;
                continue;
            }
            if (terminated[j])
                throw InvalidInputError("wide csv: column '" + series[j].id +
                                        "' resumes after a blank cell at row " +
                                        std::to_string(row));
            series[j].values.push_back(
                parse_value(field, "column '" + series[j].id + "', row " + std::to_string(row)));
        }
    }

    for (const auto& s : series)
        if (s.values.empty())
            throw InvalidInputError("wide csv: column '" + s.id + "' has no values");
    check_unique_ids(series);
    return series;
}

std::vector<TimeSeries> parse_long_csv(std::istream& in, const std::string& domain_tag) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("long csv: empty file");

    // Per id: index -> value, ordered by index.
    std::vector<std::string> id_order;
    std::map<std::string, std::map<long long, double>> data;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw InvalidInputError("long csv: row " + std::to_string(row) +
                                    " must have exactly id,index,value");
        const std::string id = trim(fields[0]);
        if (id.empty())
            throw InvalidInputError("long csv: blank id at row " + std::to_string(row));
        const std::string idx_str = trim(fields[1]);
        long long idx = 0;
        const auto [ptr, ec] = std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), idx);
        if (ec != std::errc() || ptr != idx_str.data() + idx_str.size())
            throw InvalidInputError("long csv: bad index '" + idx_str + "' at row " +
                                    std::to_string(row));
        const double v = parse_value(fields[2], "id '" + id + "', row " + std::to_string(row));

        auto it = data.find(id);
        if (it == data.end()) {
            id_order.push_back(id);
            it = data.emplace(id, std::map<long long, double>{}).first;
        }
        if (!it->second.emplace(idx, v).second)
            throw InvalidInputError("long csv: duplicate index " + idx_str + " for id '" + id +
                                    "'");
    }

    std::vector<TimeSeries> series;
    series.reserve(id_order.size());
    for (const auto& id : id_order) {
        TimeSeries s;
        s.id = id;
        s.domain_tag = domain_tag;
        for (const auto& [idx, v] : data[id]) s.values.push_back(v);
        series.push_back(std::move(s));
    }
    if (series.empty()) throw InvalidInputError("long csv: no data rows");
    return series;
}

std::vector<TimeSeries> load_series_csv(const std::string& path, const std::string& domain_tag) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open input file '" + path + "'");

    std::string header;
    if (!std::getline(in, header)) throw InvalidInputError("csv: empty file '" + path + "'");
    auto fields = split_csv_line(header);
    for (auto& f : fields) {
        f = trim(f);
        std::transform(f.begin(), f.end(), f.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    in.clear();
    in.seekg(0);
    if (fields.size() == 3 && fields[0] == "id" && fields[1] == "index" && fields[2] == "value")
        return parse_long_csv(in, domain_tag);
    return parse_wide_csv(in, domain_tag);
}

void write_wide_csv(const std::vector<TimeSeries>& series, std::ostream& out) {
    std::size_t max_len = 0;
    for (std::size_t j = 0; j < series.size(); ++j) {
        if (j) out << ',';
        out << csv_field(series[j].id);
        max_len = std::max(max_len, series[j].length());
    }
    out << '\n';
    for (std::size_t i = 0; i < max_len; ++i) {
        for (std::size_t j = 0; j < series.size(); ++j) {
            if (j) out << ',';
            if (i < series[j].length()) out << fmt_double(series[j].values[i]);
        }
        out << '\n';
    }
}

void write_wide_csv_file(const std::vector<TimeSeries>& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open output file '" + path + "'");
    write_wide_csv(series, out);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open output file '" + path + "'");
    out << content;
}

} // namespace tsbound::io
