#include "qeigen/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qeigen/errors.hpp"
#include "qeigen/version.hpp"

namespace qeigen::out {

std::string RunConfig::describe() const {
    std::ostringstream s;
    s << "seed=" << seed << ",epsilon_bits=" << epsilon_bits << ",k=" << k
      << ",nu=" << format_double(nu) << ",backend=" << backend << ",mode=" << mode;
    return s.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const RunConfig& config) {
    body_ << "# " << kToolName << " " << kVersion << '\n';
    body_ << "# " << config.describe() << '\n';
}

void CsvWriter::comment(const std::string& line) { body_ << "# " << line << '\n'; }

void CsvWriter::header(const std::string& columns) { body_ << columns << '\n'; }

void CsvWriter::append_field(double v, bool first) {
    if (!first) body_ << ',';
    body_ << format_double(v);
}
void CsvWriter::append_field(int v, bool first) {
    if (!first) body_ << ',';
    body_ << v;
}
void CsvWriter::append_field(unsigned v, bool first) {
    if (!first) body_ << ',';
    body_ << v;
}
void CsvWriter::append_field(std::uint64_t v, bool first) {
    if (!first) body_ << ',';
    body_ << v;
}
void CsvWriter::append_field(const char* v, bool first) {
    if (!first) body_ << ',';
    body_ << v;
}
void CsvWriter::append_field(const std::string& v, bool first) {
    if (!first) body_ << ',';
    body_ << v;
}

void CsvWriter::write_file(const std::string& path) const { write_text_file(path, str()); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + path);
    f << content;
    if (!f) throw ValidationError("failed writing output file: " + path);
}

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("QEIGEN_LOG");
        if (!env) return LogLevel::Error;
        const std::string v(env);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

void log(LogLevel level, const std::string& message) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    const char* tag = level == LogLevel::Error ? "error" : level == LogLevel::Info ? "info" : "debug";
    std::cerr << "[" << kToolName << ":" << tag << "] " << message << '\n';
}

} // namespace qeigen::out
