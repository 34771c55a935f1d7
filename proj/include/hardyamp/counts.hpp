#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "box.hpp"

namespace hardyamp {

/// Integer event counts n(a,b,x,y) for one scenario, stored in box index
/// order. Missing events count as zero.
struct CountTable {
    BellScenario scenario;
    std::vector<long long> counts;

    void require() const {
        scenario.require();
        if (counts.size() != static_cast<std::size_t>(scenario.cells()))
            throw StructuralError("CountTable: count vector does not match scenario");
        for (long long c : counts)
            if (c < 0) throw DomainError("CountTable: negative count");
    }

    long long at(int x, int y, int a, int b) const {
        return counts[static_cast<std::size_t>(scenario.index(x, y, a, b))];
    }

    long long total() const {
        long long t = 0;
        for (long long c : counts) t += c;
        return t;
    }

    long long setting_total(int x, int y) const {
        long long t = 0;
        for (int a = 0; a < scenario.nA; ++a)
            for (int b = 0; b < scenario.nB; ++b) t += at(x, y, a, b);
        return t;
    }

    /// Joint frequency f(a,b,x,y) = count / grand total.
    double frequency(int x, int y, int a, int b) const {
        const long long t = total();
        if (t <= 0) throw DomainError("CountTable: zero total count");
        return static_cast<double>(at(x, y, a, b)) / static_cast<double>(t);
    }

    /// Conditional box of empirical frequencies P(a,b|x,y). Settings with no
    /// counts are rejected.
    ConditionalBox empirical_box() const {
        require();
        ConditionalBox box(scenario);
        for (int x = 0; x < scenario.nX; ++x)
            for (int y = 0; y < scenario.nY; ++y) {
                const long long t = setting_total(x, y);
                if (t <= 0)
                    throw DomainError("CountTable: no counts for setting (" + std::to_string(x) +
                                      ", " + std::to_string(y) + ")");
                for (int a = 0; a < scenario.nA; ++a)
                    for (int b = 0; b < scenario.nB; ++b)
                        box.at(x, y, a, b) =
                            static_cast<double>(at(x, y, a, b)) / static_cast<double>(t);
            }
        return box;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

inline long long parse_count_field(const std::string& s, int lineNo, const char* what) {
    if (s.empty()) throw ParseError("line " + std::to_string(lineNo) + ": empty " + what);
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size())
            throw ParseError("line " + std::to_string(lineNo) + ": trailing characters in " + what);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineNo) + ": cannot parse " + what + " '" + s + "'");
    }
}

}  // namespace detail

/// Parse a count table from CSV with header `a,b,x,y,count`. Rows may appear
/// in any order; missing events get count 0; duplicate events are rejected.
inline CountTable read_counts_csv(std::istream& in, const BellScenario& sc) {
    sc.require();
    CountTable table{sc, std::vector<long long>(static_cast<std::size_t>(sc.cells()), 0)};
    std::vector<char> seen(static_cast<std::size_t>(sc.cells()), 0);
    std::string line;
    int lineNo = 0;
    bool sawHeader = false, sawRow = false;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (!sawHeader) {
            const auto fields = detail::split_csv_line(t);
            if (fields.size() != 5 || fields[0] != "a" || fields[1] != "b" || fields[2] != "x" ||
                fields[3] != "y" || fields[4] != "count")
                throw ParseError("line " + std::to_string(lineNo) +
                                 ": expected header 'a,b,x,y,count'");
            sawHeader = true;
            continue;
        }
        const auto fields = detail::split_csv_line(t);
        if (fields.size() != 5)
            throw ParseError("line " + std::to_string(lineNo) + ": expected 5 fields, found " +
                             std::to_string(fields.size()));
        const long long a = detail::parse_count_field(fields[0], lineNo, "a");
        const long long b = detail::parse_count_field(fields[1], lineNo, "b");
        const long long x = detail::parse_count_field(fields[2], lineNo, "x");
        const long long y = detail::parse_count_field(fields[3], lineNo, "y");
        const long long c = detail::parse_count_field(fields[4], lineNo, "count");
        if (x < 0 || x >= sc.nX || y < 0 || y >= sc.nY || a < 0 || a >= sc.nA || b < 0 || b >= sc.nB)
            throw ParseError("line " + std::to_string(lineNo) + ": event indices out of range");
        if (c < 0) throw DomainError("line " + std::to_string(lineNo) + ": negative count");
        const std::size_t idx = static_cast<std::size_t>(
            sc.index(static_cast<int>(x), static_cast<int>(y), static_cast<int>(a), static_cast<int>(b)));
        if (seen[idx])
            throw ParseError("line " + std::to_string(lineNo) + ": duplicate event row");
        seen[idx] = 1;
        table.counts[idx] = c;
        sawRow = true;
    }
    if (!sawHeader) throw ParseError("empty counts file");
    if (!sawRow) throw ParseError("counts file has a header but no rows");
    return table;
}

inline CountTable read_counts_csv_file(const std::string& path, const BellScenario& sc) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open counts file '" + path + "'");
    return read_counts_csv(in, sc);
}

inline void write_counts_csv(std::ostream& out, const CountTable& table) {
    table.require();
    const BellScenario& sc = table.scenario;
    out << "a,b,x,y,count\n";
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b)
                    out << a << ',' << b << ',' << x << ',' << y << ',' << table.at(x, y, a, b)
                        << '\n';
}

inline void write_counts_csv_file(const std::string& path, const CountTable& table) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_counts_csv(out, table);
}

}  // namespace hardyamp
