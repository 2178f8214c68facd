#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "multipack/coordinate.hpp"
#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/multipacking.hpp"

namespace multipack::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto comma = line.find(',', start);
        out.push_back(multipack::detail::trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline Coordinate json_coordinate(const Json& value) {
    if (value.is_string()) return Coordinate::parse(value.get<std::string>());
    if (value.is_number_integer()) return Coordinate(value.get<std::int64_t>());
    if (value.is_number_float()) {
        // Shortest round-trip text of the double recovers the decimal literal
        // that was written in the file.
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value.get<double>());
        if (ec != std::errc{}) throw ParseError("cannot format JSON number");
        return Coordinate::parse(std::string_view(buf, static_cast<std::size_t>(end - buf)));
    }
    throw ParseError("coordinate must be a number or a string");
}

} // namespace detail

/// CSV with header "x" or "x,y"; blank lines and '#' comments are skipped.
inline PointSet parse_points_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    unsigned dim = 0;
    std::vector<Point> pts;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view = multipack::detail::trim(line);
        if (view.empty() || view.front() == '#') continue;
        auto fields = detail::split_csv(view);
        if (dim == 0) {
            if (fields.size() == 1 && fields[0] == "x") dim = 1;
            else if (fields.size() == 2 && fields[0] == "x" && fields[1] == "y") dim = 2;
            else throw ParseError("CSV header must be 'x' or 'x,y'");
            continue;
        }
        if (fields.size() != dim) throw ParseError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(dim) + " fields");
        try {
            if (dim == 1)
                pts.emplace_back(Coordinate::parse(fields[0]));
            else
                pts.emplace_back(Coordinate::parse(fields[0]), Coordinate::parse(fields[1]));
        } catch (const ParseError& e) {
            throw ParseError("CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (dim == 0) throw ParseError("CSV input has no header");
    try {
        return PointSet(std::move(pts));
    } catch (const RangeError& e) {
        throw ParseError(e.what());
    }
}

/// {"dim":2,"points":[[x,y],...]}; coordinates are numbers or rational strings.
inline PointSet parse_points_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("points")) throw ParseError("JSON point file needs 'dim' and 'points'");
    const Json& dim_value = doc["dim"];
    if (!dim_value.is_number_integer()) throw ParseError("'dim' must be 1 or 2");
    const auto dim = dim_value.get<int>();
    if (dim != 1 && dim != 2) throw ParseError("'dim' must be 1 or 2");
    if (!doc["points"].is_array()) throw ParseError("'points' must be an array");
    std::vector<Point> pts;
    for (const auto& entry : doc["points"]) {
        if (entry.is_array()) {
            if (entry.size() != static_cast<std::size_t>(dim)) throw ParseError("point arity does not match 'dim'");
            if (dim == 1)
                pts.emplace_back(detail::json_coordinate(entry[0]));
            else
                pts.emplace_back(detail::json_coordinate(entry[0]), detail::json_coordinate(entry[1]));
        } else if (dim == 1) {
            pts.emplace_back(detail::json_coordinate(entry));
        } else {
            throw ParseError("2D points must be [x, y] arrays");
        }
    }
    try {
        return PointSet(std::move(pts));
    } catch (const RangeError& e) {
        throw ParseError(e.what());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Dispatches on extension (.json) or on a leading '{'.
inline PointSet load_points(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '{')) return parse_points_json(text);
    return parse_points_csv(text);
}

inline std::string format_points_csv(const PointSet& points) {
    std::string out = points.dim() == 1 ? "x\n" : "x,y\n";
    for (const auto& p : points) {
        out += p.x().to_string();
        if (points.dim() == 2) out += ',' + p.y().to_string();
        out += '\n';
    }
    return out;
}

inline Json witness_json(const Multipacking& m) {
    Json j;
    j["r"] = m.r();
    j["indices"] = m.indices();
    j["size"] = m.size();
    return j;
}

inline Json violation_json(const Violation& v) {
    Json j;
    j["valid"] = false;
    j["v"] = v.v;
    j["s"] = v.s;
    j["count"] = v.count;
    j["bound"] = v.bound;
    return j;
}

/// {"size":K,"indices":[..],"r":R,"method":M,"stats":{...}}. Wall time is
/// only emitted on request so default output stays byte-reproducible.
inline Json report_json(const SolveReport& report, bool with_timing = false) {
    Json j;
    j["size"] = report.size();
    j["indices"] = report.indices();
    j["r"] = report.r();
    j["method"] = report.method;
    Json stats;
    stats["nodes"] = report.stats.nodes;
    if (report.stats.found) stats["found"] = *report.stats.found;
    if (with_timing) stats["elapsed_ms"] = std::chrono::duration<double, std::milli>(report.stats.elapsed).count();
    j["stats"] = std::move(stats);
    return j;
}

/// Reads "indices" (and "r", when present) from a witness or report file.
inline Multipacking parse_witness_json(std::string_view text, std::size_t default_r = 0) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const Json* indices = nullptr;
    if (doc.is_array()) indices = &doc;
    else if (doc.is_object() && doc.contains("indices")) indices = &doc["indices"];
    if (indices == nullptr || !indices->is_array()) throw ParseError("set file needs an 'indices' array");
    std::vector<Index> out;
    for (const auto& v : *indices) {
        if (!v.is_number_unsigned()) throw ParseError("indices must be non-negative integers");
        out.push_back(v.get<Index>());
    }
    std::size_t r = default_r;
    if (doc.is_object() && doc.contains("r") && doc["r"].is_number_unsigned()) r = doc["r"].get<std::size_t>();
    try {
        return Multipacking(std::move(out), r);
    } catch (const RangeError& e) {
        throw ParseError(e.what());
    }
}

} // namespace multipack::io
