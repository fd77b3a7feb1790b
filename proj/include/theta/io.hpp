#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "theta/angle.hpp"
#include "theta/envelopes.hpp"
#include "theta/rational.hpp"

namespace theta {

// Interchange record {"r","s","n","a","b","c","d","e"} with rationals as
// exact "p/q" strings.
struct EnvelopeRecord {
    Int n;
    Envelope env;
};

enum class RecordFormat { jsonl, csv };

RecordFormat record_format_from_name(const std::string& name);

std::string envelope_csv_header();
std::string envelope_record_line(const EnvelopeRecord& rec,
                                 RecordFormat format);

// Reads a whole stream of records; csv expects the header line first.
// Malformed input throws std::runtime_error naming the 1-based line.
std::vector<EnvelopeRecord> parse_envelope_records(std::istream& in,
                                                   RecordFormat format);

// Bundled appendix tables.

struct EnvelopeTableRow {
    Int n;
    bool bold = false;
    Envelope env;
    // Reference-only columns present in the theta-specific tables.
    std::optional<long> rank_theta, torsion_count_theta;
    std::optional<long> rank_reflected, torsion_count_reflected;
};

struct EnvelopeTable {
    Angle angle;
    std::vector<EnvelopeTableRow> rows;
};

struct TorsionScanCell {
    long rank = 0;
    std::string torsion;
};

struct TorsionScanRow {
    Rat m;
    std::vector<TorsionScanCell> cells;
};

struct TorsionScanTable {
    std::vector<Angle> angles;
    std::vector<TorsionScanRow> rows;
};

// q0 + q1 sqrt(radicand); is_sqrt marks entries recorded as sqrt(M)
// rather than M itself (nested-surd rows).
struct SurdEntry {
    bool is_sqrt = false;
    Rat q0;
    Rat q1;
    Int radicand = 1;
};

struct TorsionExampleRow {
    Angle angle;
    Rat m;
    SurdEntry M0, M1, M2;
    std::string torsion;
};

// Directory of the bundled tables: THETA_ENVELOPE_DATA when set, else the
// compiled-in location.
std::string data_dir();

// Path of the data file backing a table id in 1..5.
std::string table_path(int table_id);

EnvelopeTable load_envelope_table(const std::string& path);
TorsionScanTable load_torsion_scan(const std::string& path);
std::vector<TorsionExampleRow> load_torsion_examples(const std::string& path);

}  // namespace theta
