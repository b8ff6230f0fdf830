#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ltorsion/bounds/pipeline.hpp"
#include "ltorsion/field/number_field.hpp"

namespace ltorsion {

inline constexpr int kCorpusSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

// One line of a corpus file:
//   {"label": str, "coeffs": [int], "disc": int?, "class_group": [int]?,
//    "regulator": float?, "r1r2": [int, int]?, "rho": int?, "source": str,
//    "w": int?, "splitting": {"p": [[e, f], ...]}?, "schema_version": 1?}
// Integers may also be given as decimal strings when they exceed 64 bits.
struct CorpusRecord {
    std::string label;
    std::vector<mpz_class> coeffs;
    std::optional<mpz_class> disc;
    std::optional<std::vector<std::uint64_t>> class_group;
    std::optional<double> regulator;
    std::optional<std::pair<int, int>> r1r2;
    std::optional<int> rho;
    std::optional<int> w;
    std::map<std::uint64_t, std::vector<PrimeIdealType>> splitting;
    std::string source;
    int line = 0;
};

struct CorpusViolation {
    int line = 0;
    std::string message;
};

struct CorpusLoad {
    std::vector<CorpusRecord> records;
    std::vector<CorpusViolation> violations;

    // SchemaViolation naming every offending line, if any.
    void throw_if_invalid() const;
};

// Parses and validates every line; bad lines are collected, never dropped
// silently. Blank lines and lines starting with '#' are skipped. Io when the
// file cannot be read.
CorpusLoad load_corpus(const std::string& path);
CorpusLoad parse_corpus(const std::string& text);

FieldSpec to_field_spec(const CorpusRecord& record);
// Single-line JSON with keys in schema order.
std::string to_json_line(const CorpusRecord& record);

// Record for the quadratic field of fundamental discriminant d with its
// class group, regulator and w computed from forms.
CorpusRecord quadratic_record(std::int64_t d);

// `count` distinct fundamental discriminants with 0 < |d| < max_abs drawn
// from a generator seeded with `seed`, sorted by |d| then sign. Negative
// only when `imaginary_only`. InvalidArgument when too few exist.
std::vector<std::int64_t> sample_fundamental_discriminants(std::size_t count, std::int64_t max_abs, std::uint64_t seed,
                                                           bool imaginary_only = false);

// ---- reports ----

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

// A flattened report: ordered (column, value) pairs. Every numeric column
// is followed by "<column>_src".
struct ReportRecord {
    std::vector<std::pair<std::string, Cell>> columns;

    const Cell* find(const std::string& name) const;
    std::optional<double> number(const std::string& name) const;
    std::optional<std::string> text(const std::string& name) const;
};

struct RunInfo {
    std::uint64_t seed = 0;
    std::string version;
};

ReportRecord flatten(const BoundReport& report, const PipelineParams& params, const RunInfo& run);

enum class ReportFormat { Jsonl, Csv };

// Byte-deterministic: fixed column order, shortest round-trip floats,
// non-finite floats as null. JSONL nests "params.*" columns under
// "params"; CSV keeps the dotted names. Io on write failure.
void write_reports(const std::vector<ReportRecord>& records, const std::string& path, ReportFormat format);
std::string format_reports(const std::vector<ReportRecord>& records, ReportFormat format);

// Reads either format (CSV when the path ends in .csv).
std::vector<ReportRecord> load_reports(const std::string& path);
std::vector<ReportRecord> parse_reports(const std::string& text, ReportFormat format);

// A cell as plain text: strings unquoted, null and non-finite as "null".
std::string cell_text(const Cell& c);

// Shortest decimal string that parses back to the same double.
std::string shortest_double(double v);

}  // namespace ltorsion
