#include "latspec/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "latspec/errors.hpp"

namespace latspec {

namespace {

void write_string(std::string& out, std::string const& s) {
    out += Json(s).dump();
}

void write_value(std::string& out, Json const& v) {
    switch (v.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ',';
            first = false;
            write_string(out, it.key());
            out += ':';
            write_value(out, it.value());
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        bool first = true;
        for (auto const& e : v) {
            if (!first) out += ',';
            first = false;
            write_value(out, e);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float: {
        double const x = v.get<double>();
        if (std::isfinite(x))
            out += format_double(x);
        else
            write_string(out, format_double(x));
        break;
    }
    default: out += v.dump();
    }
}

std::string cell(Json const& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "";
    std::string s;
    write_value(s, v);
    return s;
}

std::string quote(std::string const& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

void flatten(Json const& v, std::string const& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else {
        out.emplace_back(prefix, cell(v));
    }
}

void write_row(std::string& out, std::vector<std::string> const& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += quote(cells[i]);
    }
    out += "\r\n";
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_json(OutputRecord const& rec) {
    Json top = Json::object();
    top["schema_version"] = "1";
    top["command"] = rec.command;
    top["inputs"] = rec.inputs;
    top["results"] = rec.results;
    top["diagnostics"] = rec.diagnostics;
    std::string out;
    write_value(out, top);
    out += '\n';
    return out;
}

std::string to_csv(OutputRecord const& rec) {
    std::string out;
    auto const table = rec.results.find("table");
    if (table != rec.results.end() && table->is_array()) {
        std::vector<std::string> header;
        std::vector<std::vector<std::pair<std::string, std::string>>> rows;
        for (auto const& row : *table) {
            std::vector<std::pair<std::string, std::string>> cells;
            flatten(row, "", cells);
            for (auto const& [k, _] : cells)
                if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
            rows.push_back(std::move(cells));
        }
        write_row(out, header);
        for (auto const& cells : rows) {
            std::vector<std::string> line(header.size());
            for (auto const& [k, val] : cells)
                line[std::find(header.begin(), header.end(), k) - header.begin()] = val;
            write_row(out, line);
        }
        return out;
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(rec.results, "", cells);
    std::vector<std::string> header, line;
    for (auto const& [k, val] : cells) {
        header.push_back(k);
        line.push_back(val);
    }
    write_row(out, header);
    write_row(out, line);
    return out;
}

OutputRecord parse_record(std::string const& text) {
    Json const j = Json::parse(text);
    if (!j.is_object() || j.value("schema_version", "") != "1") throw DomainError("parse_record: not a schema 1 record");
    OutputRecord rec;
    rec.command = j.at("command").get<std::string>();
    rec.inputs = j.at("inputs");
    rec.results = j.at("results");
    rec.diagnostics = j.at("diagnostics");
    return rec;
}

} // namespace latspec
