#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "outline_energy/analysis.hpp"
#include "outline_energy/errors.hpp"

namespace outline_energy::csv {

inline constexpr std::string_view kHeader =
    "shape,orientation_deg,wwr,shading_depth_m,glazing_u_w_m2k,wall_thickness_m,"
    "wall_conductivity_w_mk,wall_density_kg_m3,wall_shc_j_kgk,thermal_load_kwh_m2";

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view field, std::size_t line_no)
{
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw DataError("line " + std::to_string(line_no) + ": bad number \"" +
                        std::string(field) + "\"");
    return v;
}

/// Dataset as CSV text: fixed header, LF endings, shortest round-trip floats.
inline std::string write_dataset(const analysis::Dataset& ds)
{
    std::string out;
    out.reserve(ds.samples.size() * 96 + kHeader.size() + 1);
    out += kHeader;
    out += '\n';
    for (const oracle::Sample& s : ds.samples) {
        out += geometry::to_token(s.shape);
        for (const double v : s.features.as_array()) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += format_double(s.load);
        out += '\n';
    }
    return out;
}

inline void write_dataset_file(const analysis::Dataset& ds, const std::filesystem::path& path)
{
    std::ofstream stream(path, std::ios::binary);
    if (!stream)
        throw IoError("cannot open \"" + path.string() + "\" for writing");
    const std::string text = write_dataset(ds);
    stream.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!stream)
        throw IoError("write failed for \"" + path.string() + "\"");
}

/// Parses dataset CSV text. Malformed rows raise line-numbered DataErrors;
/// rows violating sample invariants are rejected with their line number too.
inline analysis::Dataset parse_dataset(std::string_view text)
{
    analysis::Dataset ds;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
            ? text.substr(pos)
            : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.empty() && pos > text.size())
            break; // trailing newline
        if (!line.empty() && line.back() == '\r')
            throw DataError("line " + std::to_string(line_no) + ": CRLF line ending");

        if (line_no == 1) {
            if (line != kHeader)
                throw DataError("line 1: unexpected header");
            continue;
        }
        if (line.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty row");

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 10)
            throw DataError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                            std::to_string(fields.size()));

        oracle::Sample s;
        try {
            s.shape = geometry::shape_from_token(fields[0]);
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        std::array<double, 8> x{};
        for (std::size_t j = 0; j < 8; ++j)
            x[j] = parse_double(fields[j + 1], line_no);
        s.features = sampler::FeatureVector::from_array(x);
        s.load = parse_double(fields[9], line_no);
        try {
            s.validate();
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        ds.samples.push_back(s);
    }
    if (line_no == 0)
        throw DataError("empty CSV input");
    ds.validate();
    return ds;
}

inline analysis::Dataset read_dataset_file(const std::filesystem::path& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream)
        throw IoError("cannot open \"" + path.string() + "\" for reading");
    std::string text((std::istreambuf_iterator<char>(stream)), std::istreambuf_iterator<char>());
    return parse_dataset(text);
}

} // namespace outline_energy::csv
