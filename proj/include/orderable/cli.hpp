#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orderable {

inline constexpr const char* kArtifactName = "orderable_slopes";
inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "v1";

enum class Command { Roots, Sweep, Certify, CheckRep, Asymptotics, Plot };
enum class OutFormat { Csv, Json, Svg };

const char* command_name(Command c) noexcept;
const char* format_name(OutFormat f) noexcept;
Command parse_command(const std::string& name);
OutFormat parse_format(const std::string& name);

struct RunConfig {
    std::string knot;
    Command command = Command::Sweep;
    std::optional<double> y;      // single trace value (roots, check-rep)
    std::optional<double> y_min;  // defaults to left endpoint + 1e-8
    double y_max = 1e12;
    int samples = 400;
    double tol = 1e-10;
    std::optional<OutFormat> format;  // per-command default when unset
    std::string out_path;             // stdout when empty
    std::optional<int> branch;        // all default branches when unset
    int q_max = 16;
};

/// Numeric table plus the metadata needed to reproduce it.
struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// RFC 4180 CSV with metadata as leading "# key: value" lines.
std::string to_csv(const ResultTable& table);

/// Formats doubles with %.17g ("nan", "inf" for non-finite values).
std::string format_double(double v);

/// Runs the command and writes its artifact to config.out_path (or `out`).
/// Returns 0 on success, 2 on parse/configuration errors, 3 on numeric
/// failures; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace orderable
