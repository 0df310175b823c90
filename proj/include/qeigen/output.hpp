#pragma once

// Output discipline shared by every command: 17-significant-digit numbers,
// '.' decimal and ',' separator in CSV, a config header in every file, and
// a stderr logger gated by QEIGEN_LOG (error | info | debug).

#include <cstdint>
#include <sstream>
#include <string>

namespace qeigen::out {

struct RunConfig {
    std::uint64_t seed = 0;
    unsigned epsilon_bits = 0;
    unsigned k = 537;
    double nu = 0.9;
    std::string backend = "structured"; // structured | faithful
    std::string mode = "postselect";    // postselect | grover

    std::string describe() const;
};

// Lossless round-trip formatting for 64-bit floats.
std::string format_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(const RunConfig& config);

    void comment(const std::string& line);
    void header(const std::string& columns);

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((append_field(fields, first), first = false), ...);
        body_ << '\n';
    }

    std::string str() const { return body_.str(); }
    void write_file(const std::string& path) const;

  private:
    void append_field(double v, bool first);
    void append_field(int v, bool first);
    void append_field(unsigned v, bool first);
    void append_field(std::uint64_t v, bool first);
    void append_field(const char* v, bool first);
    void append_field(const std::string& v, bool first);

    std::ostringstream body_;
};

void write_text_file(const std::string& path, const std::string& content);

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log(LogLevel level, const std::string& message);
inline void log_info(const std::string& message) { log(LogLevel::Info, message); }
inline void log_debug(const std::string& message) { log(LogLevel::Debug, message); }

} // namespace qeigen::out
