#include "demandkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace demandkit {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& msg) {
    throw std::runtime_error(path.string() + " (line " + std::to_string(line) + "): " + msg);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

// getline that tolerates trailing \r from CRLF files.
bool read_line(std::ifstream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

double parse_value(const std::filesystem::path& path, int line_no, std::string_view field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        fail(path, line_no, "parse error: not a number: \"" + std::string(field) + "\"");
    if (!std::isfinite(v) || v < 0.0)
        fail(path, line_no, "parse error: negative or non-finite value \"" + std::string(field) + "\"");
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

LoadSeries load_csv(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string line;
    int line_no = 1;
    if (!read_line(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (line != "timestamp,kw")
        fail(path, 1, "expected header \"timestamp,kw\", got \"" + line + "\"");

    std::vector<Timestamp> stamps;
    std::vector<double> values;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 2) fail(path, line_no, "expected 2 fields");
        Timestamp t;
        try {
            t = Timestamp::parse(fields[0]);
        } catch (const std::exception& e) {
            fail(path, line_no, e.what());
        }
        stamps.push_back(t);
        values.push_back(parse_value(path, line_no, fields[1]));
    }
    if (stamps.size() < 2)
        throw std::runtime_error(path.string() + ": need at least 2 rows to establish cadence");

    const std::int64_t step = stamps[1] - stamps[0];
    if (step != 5 && step != 15)
        fail(path, 3, "cadence violation: step of " + std::to_string(step) + " minutes (expected 5 or 15)");
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        if (stamps[i] - stamps[i - 1] != step)
            fail(path, static_cast<int>(i) + 2,
                 "cadence violation: expected " + stamps[i - 1].plus_minutes(step).to_string() + ", got " +
                     stamps[i].to_string());
    }
    return LoadSeries(stamps[0], static_cast<int>(step), std::move(values));
}

ProductionSeries load_production_csv(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string line;
    int line_no = 1;
    if (!read_line(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (line != "date,anodes_tmh,acid_tmh,oxygen_tmh")
        fail(path, 1, "expected header \"date,anodes_tmh,acid_tmh,oxygen_tmh\", got \"" + line + "\"");

    std::vector<Timestamp> dates;
    std::vector<double> anodes, acid, oxygen;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 4) fail(path, line_no, "expected 4 fields");
        Timestamp d;
        try {
            d = Timestamp::parse(fields[0]);
        } catch (const std::exception& e) {
            fail(path, line_no, e.what());
        }
        if (!d.is_midnight()) fail(path, line_no, "expected a date, got \"" + std::string(fields[0]) + "\"");
        dates.push_back(d);
        anodes.push_back(parse_value(path, line_no, fields[1]));
        acid.push_back(parse_value(path, line_no, fields[2]));
        oxygen.push_back(parse_value(path, line_no, fields[3]));
    }
    if (dates.empty()) throw std::runtime_error(path.string() + ": no data rows");
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] - dates[i - 1] != 1440)
            fail(path, static_cast<int>(i) + 2,
                 "cadence violation: expected " + dates[i - 1].plus_days(1).date_string() + ", got " +
                     dates[i].date_string());
    }
    return ProductionSeries(dates[0], std::move(anodes), std::move(acid), std::move(oxygen));
}

void save_csv(const LoadSeries& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "timestamp,kw\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << s.timestamp_at(i).to_string() << ',' << format_double(s[i]) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void save_production_csv(const ProductionSeries& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "date,anodes_tmh,acid_tmh,oxygen_tmh\n";
    for (std::size_t i = 0; i < p.days(); ++i) {
        out << p.start_date().plus_days(static_cast<std::int64_t>(i)).date_string() << ','
            << format_double(p.anodes()[i]) << ',' << format_double(p.acid()[i]) << ','
            << format_double(p.oxygen()[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace demandkit
