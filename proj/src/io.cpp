#include "theta/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef THETA_DATA_DIR
#define THETA_DATA_DIR "data"
#endif

namespace theta {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Int json_int(const json& v) {
    if (v.is_string()) return Int(v.get<std::string>());
    return Int(static_cast<long>(v.get<long long>()));
}

Rat json_rat(const json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    return Rat(json_int(v));
}

json to_json_number(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

EnvelopeRecord record_from_json(const json& obj) {
    EnvelopeRecord rec;
    const Angle angle = make_angle(json_int(obj.at("r")), json_int(obj.at("s")));
    rec.n = json_int(obj.at("n"));
    rec.env = Envelope{angle, json_rat(obj.at("a")), json_rat(obj.at("b")),
                       json_rat(obj.at("c")), json_rat(obj.at("d")),
                       json_rat(obj.at("e"))};
    return rec;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open data file: " + path);
    json parsed;
    in >> parsed;
    return parsed;
}

}  // namespace

RecordFormat record_format_from_name(const std::string& name) {
    if (name == "jsonl") return RecordFormat::jsonl;
    if (name == "csv") return RecordFormat::csv;
    throw std::domain_error("unknown format: " + name);
}

std::string envelope_csv_header() { return "r,s,n,a,b,c,d,e"; }

std::string envelope_record_line(const EnvelopeRecord& rec,
                                 RecordFormat format) {
    const Envelope& env = rec.env;
    if (format == RecordFormat::csv) {
        std::ostringstream out;
        out << env.angle.r.get_str() << ',' << env.angle.s.get_str() << ','
            << rec.n.get_str() << ',' << format_rat(env.a) << ','
            << format_rat(env.b) << ',' << format_rat(env.c) << ','
            << format_rat(env.d) << ',' << format_rat(env.e);
        return out.str();
    }
    ordered_json obj;
    obj["r"] = to_json_number(env.angle.r);
    obj["s"] = to_json_number(env.angle.s);
    obj["n"] = to_json_number(rec.n);
    obj["a"] = format_rat(env.a);
    obj["b"] = format_rat(env.b);
    obj["c"] = format_rat(env.c);
    obj["d"] = format_rat(env.d);
    obj["e"] = format_rat(env.e);
    return obj.dump();
}

std::vector<EnvelopeRecord> parse_envelope_records(std::istream& in,
                                                   RecordFormat format) {
    std::vector<EnvelopeRecord> records;
    std::string line;
    long line_no = 0;
    bool saw_csv_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        try {
            if (format == RecordFormat::jsonl) {
                records.push_back(record_from_json(json::parse(line)));
                continue;
            }
            const auto fields = split_csv(line);
            if (!saw_csv_header) {
                if (fields != split_csv(envelope_csv_header()))
                    throw std::runtime_error("expected header '" +
                                             envelope_csv_header() + "'");
                saw_csv_header = true;
                continue;
            }
            if (fields.size() != 8)
                throw std::runtime_error("expected 8 fields, got " +
                                         std::to_string(fields.size()));
            EnvelopeRecord rec;
            const Angle angle = make_angle(Int(fields[0]), Int(fields[1]));
            rec.n = Int(fields[2]);
            rec.env = Envelope{angle,
                               parse_rat(fields[3]),
                               parse_rat(fields[4]),
                               parse_rat(fields[5]),
                               parse_rat(fields[6]),
                               parse_rat(fields[7])};
            records.push_back(std::move(rec));
        } catch (const std::exception& ex) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                                     ex.what());
        }
    }
    return records;
}

std::string data_dir() {
    if (const char* env = std::getenv("THETA_ENVELOPE_DATA"))
        if (*env) return env;
    return THETA_DATA_DIR;
}

std::string table_path(int table_id) {
    const char* name = nullptr;
    switch (table_id) {
        case 1: name = "torsion_examples.json"; break;
        case 2: name = "torsion_scan.json"; break;
        case 3: name = "envelopes_1_0.json"; break;
        case 4: name = "envelopes_5_3.json"; break;
        case 5: name = "envelopes_2_1.json"; break;
        default:
            throw std::domain_error("table id must be in 1..5");
    }
    return data_dir() + "/" + name;
}

EnvelopeTable load_envelope_table(const std::string& path) {
    const json parsed = parse_file(path);
    EnvelopeTable table;
    table.angle =
        make_angle(json_int(parsed.at("r")), json_int(parsed.at("s")));
    for (const json& row : parsed.at("rows")) {
        EnvelopeTableRow out;
        out.n = json_int(row.at("n"));
        out.bold = row.value("bold", false);
        const json& env = row.at("envelope");
        out.env = Envelope{table.angle,        json_rat(env.at("a")),
                           json_rat(env.at("b")), json_rat(env.at("c")),
                           json_rat(env.at("d")), json_rat(env.at("e"))};
        if (row.contains("rank_theta"))
            out.rank_theta = row.at("rank_theta").get<long>();
        if (row.contains("torsion_count_theta"))
            out.torsion_count_theta =
                row.at("torsion_count_theta").get<long>();
        if (row.contains("rank_pi_minus_theta"))
            out.rank_reflected = row.at("rank_pi_minus_theta").get<long>();
        if (row.contains("torsion_count_pi_minus_theta"))
            out.torsion_count_reflected =
                row.at("torsion_count_pi_minus_theta").get<long>();
        table.rows.push_back(std::move(out));
    }
    return table;
}

TorsionScanTable load_torsion_scan(const std::string& path) {
    const json parsed = parse_file(path);
    TorsionScanTable table;
    for (const json& pair : parsed.at("angles"))
        table.angles.push_back(
            make_angle(json_int(pair.at(0)), json_int(pair.at(1))));
    for (const json& row : parsed.at("rows")) {
        TorsionScanRow out;
        out.m = json_rat(row.at("m"));
        for (const json& cell : row.at("cells"))
            out.cells.push_back(TorsionScanCell{
                cell.at("rank").get<long>(),
                cell.at("torsion").get<std::string>()});
        if (out.cells.size() != table.angles.size())
            throw std::runtime_error(path + ": cell count mismatch");
        table.rows.push_back(std::move(out));
    }
    return table;
}

std::vector<TorsionExampleRow> load_torsion_examples(const std::string& path) {
    const json parsed = parse_file(path);
    std::vector<TorsionExampleRow> rows;
    for (const json& row : parsed.at("rows")) {
        TorsionExampleRow out;
        out.angle = make_angle(json_int(row.at("r")), json_int(row.at("s")));
        out.m = json_rat(row.at("m"));
        const auto surd = [&](const char* key) {
            const json& v = row.at(key);
            SurdEntry entry;
            entry.is_sqrt = v.at("form").get<std::string>() == "sqrt";
            entry.q0 = json_rat(v.at("rat"));
            entry.q1 = json_rat(v.at("coef"));
            entry.radicand = json_int(v.at("radicand"));
            return entry;
        };
        out.M0 = surd("M0");
        out.M1 = surd("M1");
        out.M2 = surd("M2");
        out.torsion = row.at("torsion").get<std::string>();
        rows.push_back(std::move(out));
    }
    return rows;
}

}  // namespace theta
