#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sbcli {

/// Fixed precision in %g style ({digits} significant digits, C locale),
/// with -0 printed as 0.
std::string format_number(double value, int digits = 9);

/// Empty string for nullopt.
std::string format_optional(const std::optional<double>& value, int digits = 9);

/// Comma-separated rows with LF endings; fields are written verbatim.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    const std::string& text() const noexcept { return text_; }

private:
    std::size_t columns_;
    std::string text_;
};

/// Writes text to path, creating parent directories. Throws CliError with
/// kExitIo on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sbcli
