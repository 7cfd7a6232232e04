#include "twistcurve/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "twistcurve/version.hpp"

namespace twistcurve {

namespace {

void emit(const nlohmann::json& v, std::string& out, int indent);

void emit_double(double d, std::string& out) {
    if (!std::isfinite(d)) {  // JSON has no infinities; degrade to null
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    out += buf;
}

void emit(const nlohmann::json& v, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    const std::string close_pad(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& item : v.items()) {  // keys already sorted
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += nlohmann::json(item.key()).dump();
                out += ": ";
                emit(item.value(), out, indent + 2);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                emit(e, out, indent + 2);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case nlohmann::json::value_t::string:
            out += v.dump();
            return;
        case nlohmann::json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            return;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            return;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            return;
        case nlohmann::json::value_t::number_float:
            emit_double(v.get<double>(), out);
            return;
        default:
            out += "null";
            return;
    }
}

}  // namespace

std::string dump_deterministic(const nlohmann::json& doc) {
    std::string out;
    emit(doc, out, 0);
    out += "\n";
    return out;
}

nlohmann::json make_report(const std::string& command,
                           const nlohmann::json& config,
                           const nlohmann::json& result, double wall_ms) {
    nlohmann::json rep;
    rep["command"] = command;
    rep["config"] = config;
    rep["result"] = result;
    rep["version"] = k_version;
    rep["wall_ms"] = wall_ms;
    return rep;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace twistcurve
