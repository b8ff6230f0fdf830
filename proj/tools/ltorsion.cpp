// ltorsion: batch front end for the class-group torsion bound pipelines.
//
// Exit codes: 0 success, 1 error (including usage errors), 2 a degenerate
// field in `analyze` or a partial failure in `corpus-run`.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ltorsion/bounds/pipeline.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/field/number_field.hpp"
#include "ltorsion/io/corpus.hpp"
#include "ltorsion/verify/suites.hpp"

using namespace ltorsion;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kPartial = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seed from --seed, else TBL_SEED, else 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    const char* env = std::getenv("TBL_SEED");
    if (!env || !*env) return 0;
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end) throw UsageError(std::string("TBL_SEED is not an unsigned integer: ") + env);
    return v;
}

bool use_color() {
    const char* no_color = std::getenv("NO_COLOR");
    if (no_color && *no_color) return false;
    return isatty(STDOUT_FILENO) != 0;
}

// Comma-separated coefficients, constant term first. When the last one is
// not 1, a leading 1 is implied and appended.
IntPoly parse_poly(const std::string& text) {
    std::vector<mpz_class> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw UsageError("empty coefficient in --poly '" + text + "'");
        item = item.substr(b, e - b + 1);
        mpz_class v;
        if (v.set_str(item[0] == '+' ? item.substr(1) : item, 10) != 0)
            throw UsageError("bad coefficient '" + item + "' in --poly");
        c.push_back(v);
    }
    if (c.empty()) throw UsageError("--poly needs at least one coefficient");
    if (c.back() != 1) c.emplace_back(1);
    return IntPoly(std::move(c));
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad entry '" + item + "' in " + flag);
        }
    }
    if (out.empty()) throw UsageError(flag + " is empty");
    return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ReportFormat format_for(const std::string& flag, const std::string& path) {
    if (flag == "csv") return ReportFormat::Csv;
    if (flag == "jsonl") return ReportFormat::Jsonl;
    return ends_with(path, ".csv") ? ReportFormat::Csv : ReportFormat::Jsonl;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) fail("cli", Errc::Io, "cannot write " + path);
}

void log_violations(const CorpusLoad& load) {
    for (const auto& v : load.violations)
        std::cerr << "corpus_io: SchemaViolation: line " << v.line << ": " << v.message << '\n';
}

// Shared pipeline flags.
struct ParamFlags {
    double eta = 0.5;
    double delta = 0.125;
    double A = 1.0;
    std::uint64_t cap_X = 10'000'000;
    std::string kappa = "auto";
    double class_delta_flag = 1.0;

    void add_to(CLI::App* app) {
        app->add_option("--eta", eta, "Saving exponent eta in (0, 1)")->capture_default_str();
        app->add_option("--delta", delta, "Second-pipeline delta, 0 < delta < eta/2")->capture_default_str();
        app->add_option("--A", A, "Subconvexity exponent A >= 1")->capture_default_str();
        app->add_option("--cap-X", cap_X, "Largest coefficient table bound")->capture_default_str();
        app->add_option("--kappa-method", kappa, "Residue method")
            ->check(CLI::IsMember({"auto", "certified", "dirichlet-exact", "smoothed"}))
            ->capture_default_str();
        app->add_option("--class-delta", class_delta_flag, "Constant delta in the class-number right-hand side")->capture_default_str();
    }
    PipelineParams params(int ell) const {
        PipelineParams p;
        p.ell = ell;
        p.eta = eta;
        p.delta = delta;
        p.A = A;
        p.table_cap = cap_X;
        p.class_delta = class_delta_flag;
        p.kappa_method = kappa == "certified"         ? KappaMethod::Certified
                         : kappa == "dirichlet-exact" ? KappaMethod::DirichletExact
                         : kappa == "smoothed"        ? KappaMethod::Smoothed
                                                      : KappaMethod::Auto;
        return p;
    }
};

// ---- analyze ----

struct AnalyzeArgs {
    std::string poly;
    std::string label;
    std::string corpus;
    int ell = 0;
    ParamFlags flags;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
};

int run_analyze(const AnalyzeArgs& a) {
    FieldSpec spec;
    if (!a.poly.empty()) {
        spec.poly = parse_poly(a.poly);
        spec.label = spec.poly.to_string();
        spec.source = "cli";
    } else {
        const CorpusLoad load = load_corpus(a.corpus);
        const auto it = std::find_if(load.records.begin(), load.records.end(),
                                     [&](const CorpusRecord& r) { return r.label == a.label; });
        if (it == load.records.end()) {
            log_violations(load);
            fail("cli", Errc::InvalidArgument, "no valid record labelled '" + a.label + "' in " + a.corpus);
        }
        spec = to_field_spec(*it);
    }
    const PipelineParams params = a.flags.params(a.ell);
    const NumberField field(spec);
    const BoundReport report = analyze_field(field, params);
    const ReportRecord rec = flatten(report, params, {resolve_seed(a.seed), LTORSION_VERSION});

    std::size_t width = 0;
    for (const auto& [k, v] : rec.columns)
        if (!ends_with(k, "_src")) width = std::max(width, k.size());
    for (const auto& [k, v] : rec.columns) {
        if (ends_with(k, "_src")) continue;
        std::cout << k << std::string(width + 2 - k.size(), ' ') << cell_text(v);
        if (const Cell* src = rec.find(k + "_src")) std::cout << "  [" << cell_text(*src) << ']';
        std::cout << '\n';
    }
    if (!a.out.empty()) write_reports({rec}, a.out, format_for(a.format, a.out));
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    return report.degenerate() ? kPartial : kOk;
}

// ---- corpus-run ----

struct CorpusRunArgs {
    std::string in;
    std::string out;
    std::string format;
    std::string ell_list = "2,3,5";
    unsigned jobs = 1;
    ParamFlags flags;
    std::optional<std::uint64_t> seed;
};

int run_corpus(const CorpusRunArgs& a) {
    const CorpusLoad load = load_corpus(a.in);
    log_violations(load);
    const std::vector<int> ells = parse_int_list(a.ell_list, "--ell-list");
    const std::uint64_t seed = resolve_seed(a.seed);
    for (int ell : ells) a.flags.params(ell).validate();

    struct Task {
        std::size_t record;
        int ell;
        std::optional<BoundReport> report;
        std::string error;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < load.records.size(); ++i)
        for (int ell : ells) tasks.push_back({i, ell, std::nullopt, {}});

    // Fields run in parallel; each result lands in its own slot so the
    // output order never depends on scheduling.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
            Task& task = tasks[t];
            try {
                const NumberField field(to_field_spec(load.records[task.record]));
                task.report = analyze_field(field, a.flags.params(task.ell));
            } catch (const std::exception& e) {
                task.error = e.what();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size()))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<ReportRecord> records;
    std::vector<BoundReport> reports;
    std::size_t failures = 0;
    for (const Task& t : tasks) {
        const CorpusRecord& src = load.records[t.record];
        if (!t.report) {
            ++failures;
            std::cerr << "corpus-run: line " << src.line << " '" << src.label << "' ell=" << t.ell << ": " << t.error << '\n';
            continue;
        }
        records.push_back(flatten(*t.report, a.flags.params(t.ell), {seed, LTORSION_VERSION}));
        reports.push_back(*t.report);
    }
    write_reports(records, a.out, format_for(a.format, a.out));

    std::cout << "corpus-run: " << records.size() << " reports, " << failures << " failed, "
              << load.violations.size() << " invalid corpus lines\n";
    for (const auto& f : fit_families(reports))
        std::cout << "fit family=" << f.family << " ell=" << f.ell << " fields=" << f.fields
                  << " log_C=" << shortest_double(f.log_C) << " violations=" << f.violations
                  << " min_margin=" << shortest_double(f.min_margin) << '\n';
    return failures || !load.violations.empty() ? kPartial : kOk;
}

// ---- verify ----

int run_verify(const std::string& suite, const std::optional<std::uint64_t>& seed_flag, const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    const auto results = verify::run_suite(suite, seed);
    const bool color = use_color();
    std::size_t w_suite = 5, w_check = 5;
    for (const auto& r : results) {
        w_suite = std::max(w_suite, r.suite.size());
        w_check = std::max(w_check, r.name.size());
    }
    std::size_t passed = 0;
    std::string jsonl;
    for (const auto& r : results) {
        const std::string status = r.passed ? "PASS" : "FAIL";
        const std::string shown = color ? (r.passed ? "\033[32m" : "\033[31m") + status + "\033[0m" : status;
        std::cout << r.suite << std::string(w_suite + 2 - r.suite.size(), ' ') << r.name
                  << std::string(w_check + 2 - r.name.size(), ' ') << shown << "  measured=" << shortest_double(r.measured)
                  << " tol=" << shortest_double(r.tolerance) << " cases=" << r.cases;
        if (!r.detail.empty()) std::cout << "  " << r.detail;
        std::cout << '\n';
        passed += r.passed;
        jsonl += verify::to_jsonl(r) + "\n";
    }
    std::cout << passed << "/" << results.size() << " checks passed (seed " << seed << ")\n";
    if (!out.empty()) write_text(out, jsonl);
    return passed == results.size() ? kOk : kError;
}

// ---- plot-data ----

// Report column or one of the derived log-ratio columns.
std::optional<double> plot_value(const ReportRecord& r, const std::string& name) {
    auto log_of = [&](const std::string& col) -> std::optional<double> {
        const auto v = r.number(col);
        if (!v || *v <= 0) return std::nullopt;
        return std::log(*v);
    };
    const auto log_D = r.number("log_D");
    if (name == "log_torsion") return log_of("torsion");
    if (name == "log_class_number") return log_of("class_number");
    if (name == "log_torsion_over_sqrtD" || name == "log_class_over_sqrtD") {
        const auto l = log_of(name == "log_torsion_over_sqrtD" ? "torsion" : "class_number");
        if (!l || !log_D) return std::nullopt;
        return *l - 0.5 * *log_D;
    }
    return r.number(name);
}

int run_plot(const std::string& in, const std::string& x, const std::string& y, const std::optional<int>& ell,
             const std::string& out) {
    const auto records = load_reports(in);
    std::vector<double> xs, ys;
    std::vector<ReportRecord> rows;
    for (const auto& r : records) {
        if (ell) {
            const auto e = r.number("params.ell");
            if (!e || *e != *ell) continue;
        }
        const auto vx = plot_value(r, x), vy = plot_value(r, y);
        if (!vx || !vy || !std::isfinite(*vx) || !std::isfinite(*vy)) continue;
        xs.push_back(*vx);
        ys.push_back(*vy);
        ReportRecord row;
        row.columns = {{"label", r.text("label").value_or("")}, {x, *vx}, {y, *vy}};
        rows.push_back(std::move(row));
    }
    const std::string csv = format_reports(rows, ReportFormat::Csv);
    std::ostringstream summary;
    summary << "plot-data: " << rows.size() << " points";
    if (rows.size() >= 2) {
        const LineFit f = least_squares(xs, ys);
        summary << " slope=" << shortest_double(f.slope) << " intercept=" << shortest_double(f.intercept);
    }
    summary << '\n';
    if (out.empty()) {
        std::cout << (rows.empty() ? "label," + x + "," + y + "\n" : csv);
        std::cerr << summary.str();
    } else {
        write_text(out, rows.empty() ? "label," + x + "," + y + "\n" : csv);
        std::cout << summary.str();
    }
    return kOk;
}

// ---- gen-quadratic ----

int run_gen(std::size_t count, std::int64_t max_abs, bool imaginary, const std::optional<std::uint64_t>& seed,
            const std::string& out) {
    std::string text;
    for (std::int64_t d : sample_fundamental_discriminants(count, max_abs, resolve_seed(seed), imaginary))
        text += to_json_line(quadratic_record(d)) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class-group torsion bounds: analysis, corpus runs and verification"};
    app.set_version_flag("--version", LTORSION_VERSION);
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Full bound report for one field");
    auto* poly_opt = analyze->add_option("--poly", an.poly, "Coefficients, constant term first, e.g. 1,0,1");
    auto* label_opt = analyze->add_option("--label-from-corpus", an.label, "Label of a corpus record");
    auto* corpus_opt = analyze->add_option("--corpus", an.corpus, "Corpus file for --label-from-corpus");
    poly_opt->excludes(label_opt);
    label_opt->needs(corpus_opt);
    analyze->add_option("--ell", an.ell, "Torsion order ell >= 2")->required();
    an.flags.add_to(analyze);
    analyze->add_option("--seed", an.seed, "Run seed (overrides TBL_SEED)");
    analyze->add_option("--out", an.out, "Also write the report to this file");
    analyze->add_option("--format", an.format, "jsonl or csv (default: from the file name)")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    CorpusRunArgs cr;
    auto* corpus = app.add_subcommand("corpus-run", "Reports for every (field, ell) in a corpus");
    corpus->add_option("--in", cr.in, "Corpus JSONL")->required();
    corpus->add_option("--out", cr.out, "Report file")->required();
    corpus->add_option("--format", cr.format, "jsonl or csv (default: from the file name)")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    corpus->add_option("--ell-list", cr.ell_list, "Comma-separated ell values")->capture_default_str();
    corpus->add_option("--jobs", cr.jobs, "Worker threads across fields")->check(CLI::Range(1u, 1024u))->capture_default_str();
    cr.flags.add_to(corpus);
    corpus->add_option("--seed", cr.seed, "Run seed (overrides TBL_SEED)");

    std::string suite = "all", verify_out;
    std::optional<std::uint64_t> verify_seed;
    auto* verify_cmd = app.add_subcommand("verify", "Run property suites against oracles");
    std::vector<std::string> suites = verify::suite_names();
    suites.push_back("all");
    verify_cmd->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suites))->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "Seed for randomised inputs (overrides TBL_SEED)");
    verify_cmd->add_option("--out", verify_out, "Write pass/fail JSONL here");

    std::string plot_in, plot_x = "log_D", plot_y = "log_torsion_over_sqrtD", plot_out;
    std::optional<int> plot_ell;
    auto* plot = app.add_subcommand("plot-data", "Two-column CSV from a report file");
    plot->add_option("--in", plot_in, "Report file (JSONL or CSV)")->required();
    plot->add_option("--x", plot_x, "Column for x")->capture_default_str();
    plot->add_option("--y", plot_y, "Column for y; also log_torsion, log_class_number, log_class_over_sqrtD")
        ->capture_default_str();
    plot->add_option("--ell", plot_ell, "Keep only rows with this ell");
    plot->add_option("--out", plot_out, "CSV file (default: stdout)");

    std::size_t gen_count = 100;
    std::int64_t gen_max = 100'000;
    bool gen_imag = false;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-quadratic", "Corpus of quadratic fields with class data from forms");
    gen->add_option("--count", gen_count, "Number of fields")->capture_default_str();
    gen->add_option("--max-abs", gen_max, "Bound on |d|")->capture_default_str();
    gen->add_flag("--imaginary-only", gen_imag, "Only d < 0");
    gen->add_option("--seed", gen_seed, "Sampling seed (overrides TBL_SEED)");
    gen->add_option("--out", gen_out, "Corpus file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*analyze) {
            if (an.poly.empty() && an.label.empty()) throw UsageError("analyze needs --poly or --label-from-corpus");
            return run_analyze(an);
        }
        if (*corpus) return run_corpus(cr);
        if (*verify_cmd) return run_verify(suite, verify_seed, verify_out);
        if (*plot) return run_plot(plot_in, plot_x, plot_y, plot_ell, plot_out);
        if (*gen) return run_gen(gen_count, gen_max, gen_imag, gen_seed, gen_out);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kError;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
