#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "theta/elliptic.hpp"
#include "theta/envelopes.hpp"
#include "theta/families.hpp"
#include "theta/io.hpp"
#include "theta/numtheory.hpp"
#include "theta/search.hpp"
#include "theta/transforms.hpp"

namespace {

using namespace theta;

std::string point_str(const CurvePoint& P) {
    if (P.infinite) return "infinity";
    return "(" + format_rat(P.x) + ", " + format_rat(P.y) + ")";
}

// Names the first equation of the envelope system that fails, if any.
std::optional<std::string> failing_equation(const Envelope& env, const Int& n) {
    const Rat sr = cosine(env.angle);
    const Rat &a = env.a, &b = env.b, &c = env.c, &d = env.d, &e = env.e;
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0 || e <= 0)
        return "components must be positive";
    if (a * a + b * b - 2 * sr * a * b != c * c)
        return "a^2 + b^2 - (2s/r)ab = c^2";
    if (a * a + d * d + 2 * sr * a * d != e * e)
        return "a^2 + d^2 + (2s/r)ad = e^2";
    if (a * (b + d) != Rat(env.angle.r) * n) return "a(b+d) = rn";
    return std::nullopt;
}

int run_verify(const std::string& input, const std::string& format_name) {
    const RecordFormat format = record_format_from_name(format_name);
    std::vector<EnvelopeRecord> records;
    try {
        if (input == "-") {
            records = parse_envelope_records(std::cin, format);
        } else {
            std::ifstream in(input);
            if (!in) {
                std::cerr << "error: cannot open " << input << "\n";
                return 2;
            }
            records = parse_envelope_records(in, format);
        }
    } catch (const std::exception& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    }
    long failures = 0;
    long index = 0;
    for (const EnvelopeRecord& rec : records) {
        ++index;
        const auto fail = failing_equation(rec.env, rec.n);
        if (fail) {
            ++failures;
            std::cout << "record " << index << ": FAIL " << *fail << "\n";
        } else {
            std::cout << "record " << index << ": pass\n";
        }
    }
    std::cout << index << " records, " << failures << " failed\n";
    return failures == 0 ? 0 : 1;
}

std::string surd_str(const Rat& q0, const Rat& q1, const Int& k) {
    if (q1 == 0 || k == 1) {
        Rat v = q0 + q1;
        return format_rat(v);
    }
    return format_rat(q0) + " + " + format_rat(q1) + "*sqrt(" + k.get_str() +
           ")";
}

int run_classify(long long r, long long s, const std::string& m_text) {
    const Angle angle = make_angle(Int(static_cast<long>(r)),
                                   Int(static_cast<long>(s)));
    const Rat m = parse_rat(m_text);
    if (m <= 0) throw std::domain_error("classify: m must be positive");
    const TorsionClass cls = classify_torsion(angle, m);
    std::cout << "angle: (" << angle.r.get_str() << ", " << angle.s.get_str()
              << ")\n";
    std::cout << "m: " << format_rat(m) << "\n";
    std::cout << "torsion: " << torsion_tag_name(cls.tag) << "\n";
    const MQuantities& mq = cls.mq;
    std::cout << "M0 = " << format_rat(mq.M0);
    if (mq.sqrtM0)
        std::cout << "  sqrt(M0) = " << format_rat(*mq.sqrtM0);
    std::cout << "\n";
    if (mq.M1) {
        std::cout << "M1 = " << format_rat(*mq.M1);
        if (mq.sqrtM1) std::cout << "  sqrt(M1) = " << format_rat(*mq.sqrtM1);
        std::cout << "\n";
        std::cout << "M2 = " << format_rat(*mq.M2);
        if (mq.sqrtM2) std::cout << "  sqrt(M2) = " << format_rat(*mq.sqrtM2);
        std::cout << "\n";
    } else {
        std::cout << "M1 + M2 = " << format_rat(mq.M1_plus_M2)
                  << "  M1*M2 = " << format_rat(mq.M1_times_M2)
                  << " (individually irrational)\n";
    }
    for (const CurvePoint& P : cls.order4)
        std::cout << "order-4 point: " << point_str(P) << "\n";
    for (const CurvePoint& P : cls.order8)
        std::cout << "order-8 point: " << point_str(P) << "\n";
    const CubicCurve G = make_G_cubic(angle, m);
    const CurvePoint P = independent_point(angle, m);
    const auto order = point_order(G, P);
    std::cout << "P = " << point_str(P) << ", order "
              << (order ? std::to_string(*order) : std::string("infinite"))
              << "\n";
    return 0;
}

int run_generate(long long r, long long s, long long n, long long count,
                 const std::string& format_name) {
    const RecordFormat format = record_format_from_name(format_name);
    const Angle angle = make_angle(Int(static_cast<long>(r)),
                                   Int(static_cast<long>(s)));
    if (n < 1) throw std::domain_error("generate: n must be positive");
    if (count < 1) throw std::domain_error("generate: count must be positive");
    const Int nz(static_cast<long>(n));
    const auto envelopes =
        generate_envelopes(angle, nz, static_cast<std::size_t>(count));
    if (format == RecordFormat::csv) std::cout << envelope_csv_header() << "\n";
    for (const Envelope& env : envelopes)
        std::cout << envelope_record_line({nz, env}, format) << "\n";
    return 0;
}

// Exact value q0 + q1 sqrt(k) of a stored table entry, as the pair
// (rational part, surd part coefficient) over the fixed radicand.
struct SurdValue {
    Rat alpha;
    Rat beta;
    Int k;
};

SurdValue m_value_of(const SurdEntry& entry) {
    if (!entry.is_sqrt) return {entry.q0, entry.q1, entry.radicand};
    // entry records sqrt(M): square it.
    return {entry.q0 * entry.q0 + entry.q1 * entry.q1 * Rat(entry.radicand),
            2 * entry.q0 * entry.q1, entry.radicand};
}

int run_reproduce_table1() {
    const auto rows = load_torsion_examples(table_path(1));
    long diffs = 0;
    for (const TorsionExampleRow& row : rows) {
        std::ostringstream line;
        line << "{" << row.angle.r.get_str() << "," << row.angle.s.get_str()
             << "," << format_rat(row.m) << "}: ";
        const TorsionClass cls = classify_torsion(row.angle, row.m);
        bool ok = torsion_tag_name(cls.tag) == row.torsion;
        if (!ok)
            line << "torsion " << torsion_tag_name(cls.tag) << " != "
                 << row.torsion << " ";
        const MQuantities& mq = cls.mq;
        const SurdValue v0 = m_value_of(row.M0);
        if (v0.beta != 0 || v0.alpha != mq.M0) {
            ok = false;
            line << "M0 mismatch ";
        }
        if (row.M0.is_sqrt && (row.M0.q1 == 0 || row.M0.radicand == 1)) {
            const Rat shown = row.M0.q0 + row.M0.q1;
            if (!mq.sqrtM0 || *mq.sqrtM0 != shown) {
                ok = false;
                line << "sqrt(M0) mismatch ";
            }
        }
        const SurdValue v1 = m_value_of(row.M1);
        const SurdValue v2 = m_value_of(row.M2);
        if (mq.M1) {
            if (v1.beta != 0 || v1.alpha != *mq.M1 || v2.beta != 0 ||
                v2.alpha != *mq.M2) {
                ok = false;
                line << "M1/M2 mismatch ";
            }
            for (int i = 0; i < 2; ++i) {
                const SurdEntry& entry = i == 0 ? row.M1 : row.M2;
                const auto& sqrt_mi = i == 0 ? mq.sqrtM1 : mq.sqrtM2;
                if (entry.is_sqrt && (entry.q1 == 0 || entry.radicand == 1)) {
                    const Rat shown = entry.q0 + entry.q1;
                    if (!sqrt_mi || *sqrt_mi != shown) {
                        ok = false;
                        line << "sqrt(M" << i + 1 << ") mismatch ";
                    }
                }
            }
        } else {
            // Individually irrational: compare the symmetric functions.
            if (v1.k != v2.k || v1.beta + v2.beta != 0 ||
                v1.alpha + v2.alpha != mq.M1_plus_M2 ||
                v1.alpha * v2.alpha + v1.beta * v2.beta * Rat(v1.k) !=
                    mq.M1_times_M2) {
                ok = false;
                line << "M1+M2 / M1*M2 mismatch ";
            }
        }
        if (ok) {
            line << "match (" << row.torsion << ")";
        } else {
            ++diffs;
        }
        std::cout << line.str() << "\n";
    }
    std::cout << rows.size() - diffs << "/" << rows.size()
              << " classes match\n";
    return diffs == 0 ? 0 : 1;
}

int run_reproduce_table2() {
    const TorsionScanTable table = load_torsion_scan(table_path(2));
    long diffs = 0;
    long consistent = 0, flagged = 0, cells = 0;
    for (const TorsionScanRow& row : table.rows) {
        for (std::size_t i = 0; i < table.angles.size(); ++i) {
            ++cells;
            const Angle& angle = table.angles[i];
            const TorsionScanCell& cell = row.cells[i];
            const TorsionClass cls = classify_torsion(angle, row.m);
            const bool tag_ok = torsion_tag_name(cls.tag) == cell.torsion;
            if (!tag_ok) {
                ++diffs;
                std::cout << "m=" << format_rat(row.m) << " ("
                          << angle.r.get_str() << "," << angle.s.get_str()
                          << "): torsion " << torsion_tag_name(cls.tag)
                          << " != " << cell.torsion << "\n";
            }
            // Rank column is reference only; note whether the marked point
            // is consistent with it (torsion exactly for rank 0).
            const CubicCurve G = make_G_cubic(angle, row.m);
            const auto order = point_order(G, independent_point(angle, row.m));
            const bool expects_torsion = cell.rank == 0;
            if (order.has_value() == expects_torsion) {
                ++consistent;
            } else {
                ++flagged;
                std::cout << "note: m=" << format_rat(row.m) << " ("
                          << angle.r.get_str() << "," << angle.s.get_str()
                          << "): marked point "
                          << (order ? "finite" : "infinite")
                          << " order vs reference rank " << cell.rank << "\n";
            }
        }
    }
    std::cout << cells - diffs << "/" << cells << " torsion entries match\n";
    std::cout << "rank column (reference only): " << consistent << "/" << cells
              << " rows consistent with the marked point, " << flagged
              << " flagged\n";
    return diffs == 0 ? 0 : 1;
}

int run_reproduce_envelopes(int table_id) {
    const EnvelopeTable table = load_envelope_table(table_path(table_id));
    long diffs = 0;
    for (const EnvelopeTableRow& row : table.rows) {
        std::string problem;
        if (failing_equation(row.env, row.n)) {
            problem = "fails verify";
        } else {
            try {
                const SystemSolution sol =
                    envelope_to_solution(table.angle, row.env);
                if (!validate_solution(table.angle, row.n, sol))
                    problem = "solution invariants fail";
                else if (!(solution_to_envelope(table.angle, row.n, sol) ==
                           row.env))
                    problem = "roundtrip differs";
            } catch (const std::exception& ex) {
                problem = ex.what();
            }
        }
        if (!problem.empty()) {
            ++diffs;
            std::cout << "n=" << row.n.get_str() << ": " << problem << "\n";
        }
    }
    std::cout << table.rows.size() - diffs << "/" << table.rows.size()
              << " rows verified and round-tripped\n";
    return diffs == 0 ? 0 : 1;
}

int run_reproduce(int table_id) {
    switch (table_id) {
        case 1: return run_reproduce_table1();
        case 2: return run_reproduce_table2();
        case 3:
        case 4:
        case 5: return run_reproduce_envelopes(table_id);
        default:
            throw std::domain_error("table id must be in 1..5");
    }
}

int run_search(const std::string& mode, long long r, long long s,
               const std::string& value, long height,
               std::optional<double> time_limit) {
    const Angle angle = make_angle(Int(static_cast<long>(r)),
                                   Int(static_cast<long>(s)));
    SearchBudget budget{height, time_limit};
    if (mode == "envelope") {
        const Rat n = parse_rat(value);
        if (den(n) != 1 || n < 1)
            throw std::domain_error("search envelope: n must be a positive integer");
        const auto env = find_envelope_adhoc(angle, num(n), budget);
        if (env) {
            std::cout << envelope_record_line({num(n), *env},
                                              RecordFormat::jsonl)
                      << "\n";
            return 0;
        }
        std::cout << "unknown within budget (height " << height << ")\n";
        return 0;
    }
    if (mode == "congruent") {
        const Rat n = parse_rat(value);
        if (den(n) != 1 || n < 1)
            throw std::domain_error("search congruent: n must be a positive integer");
        const auto witness = theta_congruent_heuristic(angle, num(n), budget);
        if (witness) {
            std::cout << "witness " << point_str(*witness)
                      << " with nonzero y\n";
            return 0;
        }
        std::cout << "unknown within budget (height " << height << ")\n";
        return 0;
    }
    if (mode == "rank") {
        const Rat m = parse_rat(value);
        if (m <= 0) throw std::domain_error("search rank: m must be positive");
        const auto witness = heuristic_rank_positive(angle, m, budget);
        if (witness) {
            std::cout << "rank >= 1: infinite-order point "
                      << point_str(*witness) << "\n";
            return 0;
        }
        std::cout << "unknown within budget (height " << height << ")\n";
        return 0;
    }
    throw std::domain_error("search mode must be envelope, congruent or rank");
}

int run_transform(const std::string& map, long long r, long long s,
                  const std::string& m_text, long long n,
                  const std::string& T_text, const std::string& x_text,
                  const std::string& y_text, const std::string& z_text,
                  bool at_infinity) {
    const auto need = [](const std::string& text, const char* what) {
        if (text.empty())
            throw std::domain_error(std::string("transform: missing --") +
                                    what);
        return parse_rat(text);
    };
    if (map == "cubic-to-quartic" || map == "quartic-to-cubic") {
        const Angle angle = make_angle(Int(static_cast<long>(r)),
                                       Int(static_cast<long>(s)));
        const Rat m = need(m_text, "m");
        if (n < 1) throw std::domain_error("transform: n must be positive");
        const Int nz(static_cast<long>(n));
        if (map == "cubic-to-quartic") {
            const CurvePoint P =
                CurvePoint::affine(need(x_text, "x"), need(y_text, "y"));
            const auto [x, z] = cubic_to_quartic(angle, m, nz, P);
            std::cout << "x = " << format_rat(x) << "\nz = " << format_rat(z)
                      << "\n";
        } else {
            const CurvePoint P = quartic_to_cubic(
                angle, m, nz, need(x_text, "x"), need(z_text, "z"));
            std::cout << "point = " << point_str(P) << "\n";
        }
        return 0;
    }
    if (map == "ct-to-et") {
        const Rat T = need(T_text, "T");
        const CurvePoint P =
            ct_to_et(T, need(x_text, "x"), need(y_text, "y"));
        std::cout << "point = " << point_str(P) << "\n";
        return 0;
    }
    if (map == "et-to-ct") {
        const Rat T = need(T_text, "T");
        const CurvePoint P =
            at_infinity
                ? CurvePoint::infinity()
                : CurvePoint::affine(need(x_text, "x"), need(y_text, "y"));
        const auto image = et_to_ct(T, P);
        if (image) {
            std::cout << "x = " << format_rat(image->first)
                      << "\ny = " << format_rat(image->second) << "\n";
        } else {
            std::cout << "point = infinity\n";
        }
        return 0;
    }
    throw std::domain_error(
        "transform map must be cubic-to-quartic, quartic-to-cubic, ct-to-et "
        "or et-to-ct");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for theta-parallelogram envelopes"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "jsonl";
    long long r = 1, s = 0, n = 1, count = 1;
    std::string m_text, value_text, mode, map_name;
    std::string T_text, x_text, y_text, z_text;
    int table_id = 0;
    long height = default_adhoc_budget.height_bound;
    double time_limit = 0.0;
    int workers = 0;
    bool at_infinity = false;

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Check envelope records exactly");
    verify_cmd->add_option("--input", input, "Record file, - for stdin");
    verify_cmd->add_option("--format", format, "jsonl or csv");

    CLI::App* classify_cmd = app.add_subcommand(
        "classify", "Torsion classification of the cubic for (r,s,m)");
    classify_cmd->add_option("r", r)->required();
    classify_cmd->add_option("s", s)->required();
    classify_cmd->add_option("m", m_text)->required();

    CLI::App* generate_cmd = app.add_subcommand(
        "generate", "Generate distinct verified envelopes for n");
    generate_cmd->add_option("r", r)->required();
    generate_cmd->add_option("s", s)->required();
    generate_cmd->add_option("n", n)->required();
    generate_cmd->add_option("--count", count, "Number of envelopes");
    generate_cmd->add_option("--format", format, "jsonl or csv");
    generate_cmd->add_option("--workers", workers, "OpenMP thread count");

    CLI::App* reproduce_cmd = app.add_subcommand(
        "reproduce", "Recompute a bundled table and report diffs");
    reproduce_cmd->add_option("table", table_id, "Table id 1..5")->required();

    CLI::App* search_cmd =
        app.add_subcommand("search", "Bounded searches (never 'impossible')");
    search_cmd->add_option("mode", mode, "envelope, congruent or rank")
        ->required();
    search_cmd->add_option("r", r)->required();
    search_cmd->add_option("s", s)->required();
    search_cmd->add_option("value", value_text, "n (or m for rank)")
        ->required();
    search_cmd->add_option("--height", height, "Height bound");
    CLI::Option* time_opt =
        search_cmd->add_option("--time", time_limit, "Time limit in seconds");
    search_cmd->add_option("--workers", workers, "OpenMP thread count");

    CLI::App* transform_cmd = app.add_subcommand(
        "transform", "Apply one of the birational maps to coordinates");
    transform_cmd->add_option("--map", map_name, "Which map")->required();
    transform_cmd->add_option("--r", r);
    transform_cmd->add_option("--s", s);
    transform_cmd->add_option("--m", m_text);
    transform_cmd->add_option("--n", n);
    transform_cmd->add_option("--T", T_text);
    transform_cmd->add_option("--x", x_text);
    transform_cmd->add_option("--y", y_text);
    transform_cmd->add_option("--z", z_text);
    transform_cmd->add_flag("--infinity", at_infinity,
                            "Use the point at infinity as input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    if (workers > 0) omp_set_num_threads(workers);

    try {
        if (app.got_subcommand(verify_cmd)) return run_verify(input, format);
        if (app.got_subcommand(classify_cmd)) return run_classify(r, s, m_text);
        if (app.got_subcommand(generate_cmd))
            return run_generate(r, s, n, count, format);
        if (app.got_subcommand(reproduce_cmd)) return run_reproduce(table_id);
        if (app.got_subcommand(search_cmd))
            return run_search(mode, r, s, value_text, height,
                              time_opt->count() > 0
                                  ? std::optional<double>(time_limit)
                                  : std::nullopt);
        if (app.got_subcommand(transform_cmd))
            return run_transform(map_name, r, s, m_text, n, T_text, x_text,
                                 y_text, z_text, at_infinity);
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
