#include "ltorsion/io/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ltorsion/algebra/int_poly.hpp"
#include "ltorsion/error.hpp"
#include "ltorsion/quad/forms.hpp"

namespace ltorsion {

namespace {
constexpr std::string_view kModule = "corpus_io";
using nlohmann::json;

struct LineError {
    std::string message;
};

[[noreturn]] void bad(const std::string& msg) { throw LineError{msg}; }

mpz_class to_integer(const json& v, const std::string& key) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()));
        return mpz_class(std::to_string(v.get<std::int64_t>()));
    }
    if (v.is_string()) {
        mpz_class z;
        const auto& s = v.get_ref<const std::string&>();
        if (s.empty() || z.set_str(s, 10) != 0) bad(key + ": \"" + s + "\" is not a decimal integer");
        return z;
    }
    if (v.is_number_float()) bad(key + ": non-integer number (write integers beyond 64 bits as decimal strings)");
    bad(key + ": expected an integer");
}

long small_int(const json& v, const std::string& key) {
    const mpz_class z = to_integer(v, key);
    if (!z.fits_slong_p()) bad(key + ": value out of range");
    return z.get_si();
}

CorpusRecord parse_record(const json& j) {
    static const std::set<std::string> known{"label", "coeffs", "disc",   "class_group", "regulator", "r1r2",
                                             "rho",   "source", "w",      "splitting",   "schema_version"};
    if (!j.is_object()) bad("record must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!known.contains(k)) bad("unknown key \"" + k + "\"");
    CorpusRecord r;
    if (j.contains("schema_version") && small_int(j["schema_version"], "schema_version") != kCorpusSchemaVersion)
        bad("unsupported schema_version (expected " + std::to_string(kCorpusSchemaVersion) + ")");

    if (!j.contains("label") || !j["label"].is_string() || j["label"].get<std::string>().empty())
        bad("label: required non-empty string");
    r.label = j["label"].get<std::string>();
    if (!j.contains("source") || !j["source"].is_string()) bad("source: required string");
    r.source = j["source"].get<std::string>();

    if (!j.contains("coeffs") || !j["coeffs"].is_array()) bad("coeffs: required integer list, constant term first");
    for (const auto& c : j["coeffs"]) r.coeffs.push_back(to_integer(c, "coeffs"));
    if (r.coeffs.size() < 3) bad("coeffs: degree must be at least 2");
    if (r.coeffs.back() != 1) bad("coeffs: polynomial is not monic (last coefficient must be 1)");

    if (j.contains("disc")) {
        r.disc = to_integer(j["disc"], "disc");
        if (*r.disc == 0) bad("disc: must be nonzero");
    }
    if (j.contains("class_group")) {
        if (!j["class_group"].is_array()) bad("class_group: expected an integer list");
        std::vector<std::uint64_t> g;
        for (const auto& c : j["class_group"]) {
            const long v = small_int(c, "class_group");
            if (v < 1) bad("class_group: invariant factors must be positive");
            g.push_back(static_cast<std::uint64_t>(v));
        }
        // Trailing 1s are a common way to write the trivial group.
        std::erase(g, 1);
        if (!AbelianGroup::is_valid_chain(g)) bad("class_group: invariant factors must form a divisibility chain d1 | d2 | ...");
        r.class_group = g;
    }
    if (j.contains("regulator")) {
        if (!j["regulator"].is_number()) bad("regulator: expected a number");
        r.regulator = j["regulator"].get<double>();
        if (!(*r.regulator > 0) || !std::isfinite(*r.regulator)) bad("regulator: must be positive and finite");
    }
    const int n = static_cast<int>(r.coeffs.size()) - 1;
    if (j.contains("r1r2")) {
        const auto& a = j["r1r2"];
        if (!a.is_array() || a.size() != 2) bad("r1r2: expected [r1, r2]");
        const long r1 = small_int(a[0], "r1r2"), r2 = small_int(a[1], "r1r2");
        if (r1 < 0 || r2 < 0 || r1 + 2 * r2 != n) bad("r1r2: need r1 + 2 r2 = degree " + std::to_string(n));
        r.r1r2 = std::pair<int, int>(static_cast<int>(r1), static_cast<int>(r2));
        if (r.disc && sgn(*r.disc) != (r2 % 2 == 0 ? 1 : -1))
            bad("disc: sign must be (-1)^r2 = " + std::string(r2 % 2 == 0 ? "+" : "-"));
    }
    if (j.contains("rho")) {
        const long v = small_int(j["rho"], "rho");
        if (v < 0) bad("rho: must be nonnegative");
        if (r.r1r2 && v > r.r1r2->first + r.r1r2->second - 1) bad("rho: exceeds the unit rank");
        r.rho = static_cast<int>(v);
    }
    if (j.contains("w")) {
        const long v = small_int(j["w"], "w");
        if (v < 2 || v % 2 != 0) bad("w: must be even and at least 2");
        r.w = static_cast<int>(v);
    }
    if (j.contains("splitting")) {
        if (!j["splitting"].is_object()) bad("splitting: expected {\"p\": [[e, f], ...]}");
        for (const auto& [k, v] : j["splitting"].items()) {
            std::uint64_t p = 0;
            const auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), p);
            if (ec != std::errc() || ptr != k.data() + k.size()) bad("splitting: key \"" + k + "\" is not an integer");
            if (!v.is_array()) bad("splitting: expected a list of [e, f] pairs at " + k);
            std::vector<PrimeIdealType> types;
            for (const auto& ef : v) {
                if (!ef.is_array() || ef.size() != 2) bad("splitting: expected [e, f] pairs at " + k);
                const long e = small_int(ef[0], "splitting"), f = small_int(ef[1], "splitting");
                if (e < 1 || f < 1) bad("splitting: e and f must be positive at " + k);
                types.push_back({static_cast<int>(e), static_cast<int>(f)});
            }
            std::sort(types.begin(), types.end());
            r.splitting[p] = std::move(types);
        }
    }
    return r;
}

// Field-level checks that need the polynomial: discriminant relation,
// signature and splitting identities.
void check_field(const CorpusRecord& r) {
    const FieldSpec spec = to_field_spec(r);
    try {
        spec.validate();
        if (r.r1r2) {
            const int r1 = count_real_roots(spec.poly);
            if (r1 != r.r1r2->first)
                bad("r1r2: polynomial has " + std::to_string(r1) + " real roots, record says " + std::to_string(r.r1r2->first));
        }
    } catch (const Error& e) {
        bad(e.detail());
    }
}

std::string escape(const std::string& s) { return json(s).dump(); }

void append_cell(std::string& out, const Cell& c, bool csv) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                if (!csv) out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                if (std::isfinite(v))
                    out += shortest_double(v);
                else if (!csv)
                    out += "null";
            } else {
                if (csv) {
                    out += '"';
                    for (char ch : v) {
                        if (ch == '"') out += '"';
                        out += ch;
                    }
                    out += '"';
                } else {
                    out += escape(v);
                }
            }
        },
        c);
}

Cell cell_from_json(const nlohmann::ordered_json& v) {
    if (v.is_null()) return std::monostate{};
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    fail(kModule, Errc::SchemaViolation, "report cell has unsupported JSON type");
}

Cell cell_from_csv(const std::string& raw, bool quoted) {
    if (quoted) return raw;
    if (raw.empty()) return std::monostate{};
    if (raw == "true") return true;
    if (raw == "false") return false;
    if (raw.find_first_of(".eEn") == std::string::npos) {
        std::int64_t i = 0;
        const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), i);
        if (ec == std::errc() && p == raw.data() + raw.size()) return i;
    }
    double d = 0;
    const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), d);
    if (ec != std::errc() || p != raw.data() + raw.size())
        fail(kModule, Errc::SchemaViolation, "unquoted CSV cell \"" + raw + "\" is not a number");
    return d;
}

std::vector<std::pair<std::string, bool>> split_csv_line(const std::string& line) {
    std::vector<std::pair<std::string, bool>> out;
    std::string cur;
    bool quoted = false, in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            in_quotes = quoted = true;
        } else if (ch == ',') {
            out.emplace_back(cur, quoted);
            cur.clear();
            quoted = false;
        } else {
            cur += ch;
        }
    }
    if (in_quotes) fail(kModule, Errc::SchemaViolation, "unterminated quote in CSV line");
    out.emplace_back(cur, quoted);
    return out;
}

// Ordered so columns come back in file order.
void flatten_json(const nlohmann::ordered_json& j, const std::string& prefix, ReportRecord& out) {
    for (const auto& [k, v] : j.items()) {
        const std::string name = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object())
            flatten_json(v, name, out);
        else
            out.columns.emplace_back(name, cell_from_json(v));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kModule, Errc::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(kModule, Errc::Io, "read error on " + path);
    return ss.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

void CorpusLoad::throw_if_invalid() const {
    if (violations.empty()) return;
    std::string msg;
    for (const auto& v : violations) msg += "\n  line " + std::to_string(v.line) + ": " + v.message;
    fail(kModule, Errc::SchemaViolation, std::to_string(violations.size()) + " invalid record(s):" + msg);
}

CorpusLoad parse_corpus(const std::string& text) {
    CorpusLoad out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            const json j = json::parse(line);
            CorpusRecord r = parse_record(j);
            r.line = no;
            check_field(r);
            out.records.push_back(std::move(r));
        } catch (const json::parse_error& e) {
            out.violations.push_back({no, std::string("malformed JSON: ") + e.what()});
        } catch (const LineError& e) {
            out.violations.push_back({no, e.message});
        }
    }
    return out;
}

CorpusLoad load_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

FieldSpec to_field_spec(const CorpusRecord& r) {
    FieldSpec s;
    s.poly = IntPoly(r.coeffs);
    s.certified_disc = r.disc;
    if (r.class_group) s.certified_class_group = AbelianGroup(*r.class_group);
    s.certified_regulator = r.regulator;
    s.rho = r.rho;
    s.roots_of_unity = r.w;
    s.certified_splitting = r.splitting;
    s.label = r.label;
    s.source = r.source;
    return s;
}

std::string to_json_line(const CorpusRecord& r) {
    std::string out = "{\"label\":" + escape(r.label) + ",\"coeffs\":[";
    auto int_text = [](const mpz_class& z) { return z.fits_slong_p() ? z.get_str() : "\"" + z.get_str() + "\""; };
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) out += (i ? "," : "") + int_text(r.coeffs[i]);
    out += "]";
    if (r.disc) out += ",\"disc\":" + int_text(*r.disc);
    if (r.class_group) {
        out += ",\"class_group\":[";
        for (std::size_t i = 0; i < r.class_group->size(); ++i) out += (i ? "," : "") + std::to_string((*r.class_group)[i]);
        out += "]";
    }
    if (r.regulator) out += ",\"regulator\":" + shortest_double(*r.regulator);
    if (r.r1r2) out += ",\"r1r2\":[" + std::to_string(r.r1r2->first) + "," + std::to_string(r.r1r2->second) + "]";
    if (r.rho) out += ",\"rho\":" + std::to_string(*r.rho);
    out += ",\"source\":" + escape(r.source);
    if (r.w) out += ",\"w\":" + std::to_string(*r.w);
    if (!r.splitting.empty()) {
        out += ",\"splitting\":{";
        bool first = true;
        for (const auto& [p, types] : r.splitting) {
            out += (first ? "\"" : ",\"") + std::to_string(p) + "\":[";
            for (std::size_t i = 0; i < types.size(); ++i)
                out += (i ? ",[" : "[") + std::to_string(types[i].e) + "," + std::to_string(types[i].f) + "]";
            out += "]";
            first = false;
        }
        out += "}";
    }
    return out + "}";
}

// ---- reports ----

CorpusRecord quadratic_record(std::int64_t d) {
    const QuadClassData q = quadratic_class_data(d);
    CorpusRecord r;
    r.label = "Q(sqrt(" + std::to_string(d) + "))";
    r.coeffs = quadratic_poly(d).coeffs();
    r.disc = mpz_class(std::to_string(d));
    r.class_group = q.class_group.invariant_factors();
    if (d > 0) r.regulator = q.regulator;
    r.r1r2 = d < 0 ? std::pair{0, 1} : std::pair{2, 0};
    r.rho = 0;
    r.w = q.w;
    r.source = "forms";
    return r;
}

std::vector<std::int64_t> sample_fundamental_discriminants(std::size_t count, std::int64_t max_abs, std::uint64_t seed,
                                                           bool imaginary_only) {
    std::vector<std::int64_t> pool;
    for (std::int64_t a = 3; a < max_abs; ++a) {
        if (is_fundamental_discriminant(-a)) pool.push_back(-a);
        if (!imaginary_only && is_fundamental_discriminant(a)) pool.push_back(a);
    }
    if (pool.size() < count)
        fail(kModule, Errc::InvalidArgument,
             "only " + std::to_string(pool.size()) + " fundamental discriminants below " + std::to_string(max_abs));
    // Partial Fisher-Yates with an explicit draw so the sample does not
    // depend on the standard library's distribution implementation.
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end(), [](std::int64_t a, std::int64_t b) {
        return std::pair(std::llabs(a), a) < std::pair(std::llabs(b), b);
    });
    return pool;
}

std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    std::string out;
    append_cell(out, c, false);
    return out;
}

std::string shortest_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) fail(kModule, Errc::InvalidArgument, "cannot format double");
    std::string s(buf, p);
    // Keep a float marker so integral doubles read back as doubles.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

const Cell* ReportRecord::find(const std::string& name) const {
    for (const auto& [k, v] : columns)
        if (k == name) return &v;
    return nullptr;
}

std::optional<double> ReportRecord::number(const std::string& name) const {
    const Cell* c = find(name);
    if (!c) return std::nullopt;
    if (const auto* d = std::get_if<double>(c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(c)) return static_cast<double>(*i);
    return std::nullopt;
}

std::optional<std::string> ReportRecord::text(const std::string& name) const {
    const Cell* c = find(name);
    if (!c) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(c)) return *s;
    return std::nullopt;
}

ReportRecord flatten(const BoundReport& b, const PipelineParams& p, const RunInfo& run) {
    ReportRecord r;
    auto& c = r.columns;
    auto num = [&](const std::string& name, Cell v, const std::string& src) {
        c.emplace_back(name, std::move(v));
        c.emplace_back(name + "_src", src);
    };
    auto opt_u = [](const std::optional<std::uint64_t>& v) -> Cell {
        return v ? Cell(static_cast<std::int64_t>(*v)) : Cell(std::monostate{});
    };
    auto opt_d = [](const std::optional<double>& v) -> Cell { return v ? Cell(*v) : Cell(std::monostate{}); };

    num("schema_version", std::int64_t{kReportSchemaVersion}, "run");
    c.emplace_back("version", run.version);
    num("seed", static_cast<std::int64_t>(run.seed), "run");
    c.emplace_back("label", b.label);
    c.emplace_back("source", b.source);
    num("params.ell", std::int64_t{p.ell}, "param");
    num("params.eta", p.eta, "param");
    num("params.delta", p.delta, "param");
    num("params.A", p.A, "param");
    num("params.k", std::int64_t{p.k}, p.k ? "param" : "param:default");
    num("params.class_delta", p.class_delta, "param");
    num("params.table_cap", static_cast<std::int64_t>(p.table_cap), "param");
    num("params.enum_cap", static_cast<std::int64_t>(p.enum_cap), "param");
    c.emplace_back("params.kappa_method", std::string(to_string(p.kappa_method)));

    num("n", std::int64_t{b.n}, "computed");
    c.emplace_back("D", b.D);
    c.emplace_back("D_src", b.disc_source);
    num("log_D", b.log_D, b.disc_source);
    num("r", std::int64_t{b.r}, "computed");
    num("rho", std::int64_t{b.rho}, b.rho_source);
    c.emplace_back("irreducibility", b.irreducibility);
    c.emplace_back("quadratic_subfield", b.quadratic_subfield);
    c.emplace_back("modulo_constant", b.modulo_constant);

    num("log_trivial", b.log_trivial, "shape:landau;modulo-constant");
    num("log_refined", b.log_refined, "shape:refined;modulo-constant");
    num("kappa", b.kappa, b.kappa_source);
    num("kappa_uncertainty", b.kappa_uncertainty, b.kappa_source);
    num("log_ev_prime", b.ev_prime.value, b.ev_prime.source + ";modulo-constant");
    if (b.ev_full)
        num("log_ev_full", b.ev_full->value, b.ev_full->source + ";modulo-constant");
    else
        num("log_ev_full", std::monostate{}, "unavailable");

    const Section3& s = b.s3;
    num("s3.log_y", s.log_y, "formula");
    num("s3.log_x", s.log_x, "formula");
    c.emplace_back("s3.degenerate", s.degenerate);
    c.emplace_back("s3.x_in_D2_D3", s.x_in_D2_D3);
    num("s3.pi_flat_y", opt_u(s.pi_flat_y), "exact");
    num("s3.N_flat_y", opt_u(s.N_flat_y), "exact");
    num("s3.z", static_cast<std::int64_t>(s.z), "canonical-min");
    num("s3.pi_Q_z", static_cast<std::int64_t>(s.pi_Q_z), "exact");
    c.emplace_back("s3.bracket_lower", s.bracket_lower);
    c.emplace_back("s3.bracket_upper", s.bracket_upper);
    c.emplace_back("s3.z_le_y", s.z_le_y);
    num("s3.alpha", s.alpha, "formula");
    num("s3.log_smooth", s.log_smooth, s.smooth_status);
    num("s3.log_smooth_exact", opt_d(s.log_smooth_exact), s.log_smooth_exact ? "exact" : "unavailable");
    num("s3.log_rankin", s.log_rankin, "rankin");
    num("s3.log_rough", s.log_rough, "formula");
    num("s3.log_S_bound", s.log_S_bound, s.S_status);
    num("s3.log_residue_factor", s.log_residue_factor, "shape;modulo-constant");
    num("s3.log_kappa_upper", s.log_kappa_upper, "shape;modulo-constant");
    num("s3.log_final", s.log_final, "shape;modulo-constant");

    if (b.s4) {
        const Section4& f = *b.s4;
        num("s4.k", std::int64_t{f.k}, p.k ? "param" : "ceil(A)+1");
        num("s4.log_x", f.log_x, "formula");
        c.emplace_back("s4.degenerate", f.degenerate);
        num("s4.N_flat_x", opt_u(f.N_flat_x), "exact");
        num("s4.S_x", opt_d(f.S_x), "exact");
        c.emplace_back("s4.S_le_N", f.S_le_N ? Cell(*f.S_le_N) : Cell(std::monostate{}));
        num("s4.log_H", f.log_H, f.H_source);
        num("s4.log_kappa_lower_i", f.log_kappa_lower_i, "shape:brauer-siegel");
        num("s4.log_kappa_lower_ii", f.log_kappa_lower_ii, "shape:stark");
        num("s4.case_i.log_bound", f.case_i.log_bound, f.case_i.tag + ";modulo-constant");
        num("s4.case_i.exponent", f.case_i.exponent, f.case_i.tag);
        num("s4.case_ii.log_bound", f.case_ii.log_bound, f.case_ii.tag + ";modulo-constant");
        num("s4.case_ii.exponent", f.case_ii.exponent, f.case_ii.tag);
        num("s4.case_iii.log_bound", f.case_iii.log_bound, f.case_iii.tag + ";modulo-constant");
        num("s4.case_iii.exponent", f.case_iii.exponent, f.case_iii.tag);
        num("s4.exponent_iii_formula", f.exponent_iii_formula, "formula");
    }

    num("class_number", opt_u(b.class_number), b.class_source);
    num("torsion", opt_u(b.torsion), b.class_source);
    num("V_K", opt_d(b.V_K), b.V_K ? "solved" : "unavailable");
    num("log_class_rhs", opt_d(b.log_class_rhs), b.log_class_rhs ? "class-delta;modulo-constant" : "unavailable");
    num("log_z_lower", opt_d(b.log_z_lower), b.log_z_lower ? "class-delta;modulo-constant" : "unavailable");
    std::string warnings;
    for (const auto& w : b.warnings) warnings += (warnings.empty() ? "" : ";") + w;
    c.emplace_back("warnings", warnings);
    c.emplace_back("degenerate", b.degenerate());
    return r;
}

std::string format_reports(const std::vector<ReportRecord>& records, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Csv) {
        // Header from the union of columns in first-seen order.
        std::vector<std::string> header;
        std::set<std::string> seen;
        for (const auto& r : records)
            for (const auto& [k, v] : r.columns)
                if (seen.insert(k).second) header.push_back(k);
        for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
        out += "\n";
        for (const auto& r : records) {
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (i) out += ",";
                if (const Cell* cell = r.find(header[i])) append_cell(out, *cell, true);
            }
            out += "\n";
        }
        return out;
    }
    for (const auto& r : records) {
        out += "{";
        bool need_comma = false, in_params = false, params_comma = false;
        for (const auto& [k, v] : r.columns) {
            const bool is_param = k.rfind("params.", 0) == 0;
            if (in_params && !is_param) {
                out += "}";
                in_params = false;
            }
            if (is_param && !in_params) {
                if (need_comma) out += ",";
                out += "\"params\":{";
                in_params = true;
                need_comma = true;
                params_comma = false;
            }
            bool& comma = is_param ? params_comma : need_comma;
            if (comma) out += ",";
            out += escape(is_param ? k.substr(7) : k) + ":";
            append_cell(out, v, false);
            comma = true;
        }
        if (in_params) out += "}";
        out += "}\n";
    }
    return out;
}

void write_reports(const std::vector<ReportRecord>& records, const std::string& path, ReportFormat format) {
    const std::string text = format_reports(records, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(kModule, Errc::Io, "cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) fail(kModule, Errc::Io, "write error on " + path);
}

std::vector<ReportRecord> parse_reports(const std::string& text, ReportFormat format) {
    std::vector<ReportRecord> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    if (format == ReportFormat::Csv) {
        if (!std::getline(in, line)) return out;
        ++no;
        std::vector<std::string> header;
        for (auto& [name, q] : split_csv_line(line)) header.push_back(name);
        while (std::getline(in, line)) {
            ++no;
            if (line.empty()) continue;
            const auto cells = split_csv_line(line);
            if (cells.size() != header.size())
                fail(kModule, Errc::SchemaViolation, "line " + std::to_string(no) + ": expected " +
                                                         std::to_string(header.size()) + " cells");
            ReportRecord r;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                // An empty unquoted cell is either null or a column absent from this record.
                r.columns.emplace_back(header[i], cell_from_csv(cells[i].first, cells[i].second));
            }
            out.push_back(std::move(r));
        }
        return out;
    }
    while (std::getline(in, line)) {
        ++no;
        if (line.empty()) continue;
        try {
            ReportRecord r;
            flatten_json(nlohmann::ordered_json::parse(line), "", r);
            out.push_back(std::move(r));
        } catch (const json::parse_error& e) {
            fail(kModule, Errc::SchemaViolation, "line " + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<ReportRecord> load_reports(const std::string& path) {
    return parse_reports(read_file(path), ends_with(path, ".csv") ? ReportFormat::Csv : ReportFormat::Jsonl);
}

}  // namespace ltorsion
