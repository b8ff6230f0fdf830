#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "doctest.h"
#include "ltorsion/error.hpp"
#include "ltorsion/io/corpus.hpp"
#include "ltorsion/quad/forms.hpp"

using namespace ltorsion;

namespace {
std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ltorsion_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool same_cell(const Cell* a, const Cell* b) {
    const bool a_null = !a || std::holds_alternative<std::monostate>(*a);
    const bool b_null = !b || std::holds_alternative<std::monostate>(*b);
    if (a_null || b_null) return a_null == b_null;
    return *a == *b;
}

std::vector<ReportRecord> sample_reports() {
    std::vector<ReportRecord> out;
    for (std::int64_t d : {-23, -4, 5, -84, 40}) {
        for (int ell : {2, 3}) {
            PipelineParams p;
            p.ell = ell;
            out.push_back(flatten(analyze_field(NumberField(quadratic_field_spec(d)), p), p, {7, "test"}));
        }
    }
    return out;
}
}  // namespace

TEST_CASE("valid corpus lines load") {
    const auto c = parse_corpus(
        "{\"label\":\"Q(i)\",\"coeffs\":[1,0,1],\"disc\":-4,\"class_group\":[],\"r1r2\":[0,1],\"w\":4,\"source\":\"hand\"}\n"
        "# comment\n"
        "\n"
        "{\"label\":\"Q(sqrt5)\",\"coeffs\":[-5,0,1],\"disc\":5,\"splitting\":{\"2\":[[1,2]]},\"source\":\"hand\"}\n"
        "{\"label\":\"cbrt2\",\"coeffs\":[\"-2\",0,0,1],\"regulator\":1.347,\"rho\":0,\"source\":\"lmfdb\"}\n");
    CHECK(c.violations.empty());
    REQUIRE(c.records.size() == 3);
    CHECK(c.records[0].w == 4);
    CHECK(c.records[1].line == 4);
    CHECK(c.records[1].splitting.at(2) == std::vector<PrimeIdealType>{{1, 2}});
    CHECK(c.records[2].coeffs[0] == -2);
    const FieldSpec s = to_field_spec(c.records[1]);
    CHECK(s.certified_disc == mpz_class(5));
    CHECK_NOTHROW(c.throw_if_invalid());
}

TEST_CASE("violations are reported per line and the rest still loads") {
    const auto c = parse_corpus(
        "{\"label\":\"a\",\"coeffs\":[1,0,1],\"source\":\"s\"}\n"
        "{\"label\":\"b\",\"coeffs\":[1,0,2],\"source\":\"s\"}\n"
        "{\"label\":\"c\",\"coeffs\":[1,0,1],\"class_group\":[4,2],\"source\":\"s\"}\n"
        "{\"label\":\"d\",\"coeffs\":[1,0,1],\"disc\":4,\"r1r2\":[0,1],\"source\":\"s\"}\n"
        "not json\n"
        "{\"label\":\"f\",\"coeffs\":[1,0,1],\"disc\":-3,\"source\":\"s\"}\n"
        "{\"label\":\"g\",\"coeffs\":[1,0,1],\"bogus\":1,\"source\":\"s\"}\n"
        "{\"label\":\"h\",\"coeffs\":[-2,0,1],\"r1r2\":[0,1],\"source\":\"s\"}\n"
        "{\"label\":\"i\",\"coeffs\":[1,0,1]}\n"
        "{\"label\":\"j\",\"coeffs\":[1,0,1],\"source\":\"s\",\"splitting\":{\"3\":[[1,1]]}}\n");
    REQUIRE(c.records.size() == 1);
    CHECK(c.records[0].label == "a");
    std::vector<int> lines;
    for (const auto& v : c.violations) lines.push_back(v.line);
    CHECK(lines == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(c.violations[0].message.find("monic") != std::string::npos);
    CHECK(c.violations[1].message.find("divisibility") != std::string::npos);
    try {
        c.throw_if_invalid();
        FAIL("expected SchemaViolation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SchemaViolation);
        CHECK(e.detail().find("line 3") != std::string::npos);
    }
}

TEST_CASE("missing corpus file is Io") {
    try {
        load_corpus("/nonexistent/corpus.jsonl");
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Io);
    }
}

TEST_CASE("corpus lines round trip through to_json_line") {
    CorpusRecord r;
    r.label = "x \"quoted\"";
    r.coeffs = {mpz_class("-123456789012345678901234567890"), 0, 1};
    r.class_group = std::vector<std::uint64_t>{2, 4};
    r.regulator = 0.1;
    r.source = "s";
    r.splitting[2] = {{1, 1}, {1, 1}};
    const auto c = parse_corpus(to_json_line(r));
    REQUIRE(c.records.size() == 1);
    CHECK(c.records[0].coeffs == r.coeffs);
    CHECK(c.records[0].label == r.label);
    CHECK(*c.records[0].regulator == 0.1);
    CHECK(c.records[0].class_group == r.class_group);
}

TEST_CASE("shortest doubles read back exactly") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 20000; ++i) {
        const double v = std::exp(u(rng)) * (i % 2 ? -1 : 1);
        const std::string s = shortest_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(shortest_double(3.0) == "3.0");
    CHECK(shortest_double(0.1) == "0.1");
}

TEST_CASE("every numeric report column has a source column") {
    for (const auto& r : sample_reports())
        for (const auto& [k, v] : r.columns) {
            if (std::holds_alternative<double>(v) || std::holds_alternative<std::int64_t>(v) || k == "class_number") {
                CAPTURE(k);
                CHECK(r.find(k + "_src") != nullptr);
            }
        }
}

TEST_CASE("reports are deterministic and round trip in both formats") {
    const auto reports = sample_reports();
    const std::string j1 = temp_path("a.jsonl"), j2 = temp_path("b.jsonl"), c1 = temp_path("a.csv");
    write_reports(reports, j1, ReportFormat::Jsonl);
    write_reports(sample_reports(), j2, ReportFormat::Jsonl);
    write_reports(reports, c1, ReportFormat::Csv);
    CHECK(slurp(j1) == slurp(j2));

    const auto from_json = load_reports(j1);
    const auto from_csv = load_reports(c1);
    REQUIRE(from_json.size() == reports.size());
    REQUIRE(from_csv.size() == reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (const auto& [k, v] : reports[i].columns) {
            CAPTURE(k);
            const Cell* a = from_json[i].find(k);
            const Cell* b = from_csv[i].find(k);
            CHECK(same_cell(&v, a));
            CHECK(same_cell(&v, b));
        }
    }
    CHECK(slurp(j1).find("\"params\":{\"ell\":2") != std::string::npos);
    for (const auto& p : {j1, j2, c1}) std::filesystem::remove(p);
}

TEST_CASE("empty report lists") {
    CHECK(format_reports({}, ReportFormat::Jsonl).empty());
    CHECK(format_reports({}, ReportFormat::Csv) == "\n");
}

TEST_CASE("non-finite values become null") {
    ReportRecord r;
    r.columns = {{"a", std::numeric_limits<double>::infinity()}, {"b", std::nan("")}, {"c", 1.5}};
    CHECK(format_reports({r}, ReportFormat::Jsonl) == "{\"a\":null,\"b\":null,\"c\":1.5}\n");
    CHECK(format_reports({r}, ReportFormat::Csv) == "a,b,c\n,,1.5\n");
}

TEST_CASE("unwritable path is Io") {
    try {
        write_reports({}, "/nonexistent/dir/out.jsonl", ReportFormat::Jsonl);
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Io);
    }
}

TEST_CASE("generated quadratic records") {
    const auto r = quadratic_record(-23);
    CHECK(r.class_group == std::vector<std::uint64_t>{3});
    CHECK(*r.w == 2);
    const auto back = parse_corpus(to_json_line(r));
    REQUIRE(back.records.size() == 1);
    const NumberField K(to_field_spec(back.records[0]));
    CHECK(K.invariants().abs_disc == 23);
    CHECK(quadratic_record(5).regulator.has_value());

    const auto a = sample_fundamental_discriminants(50, 1000, 9);
    CHECK(a == sample_fundamental_discriminants(50, 1000, 9));
    CHECK(a != sample_fundamental_discriminants(50, 1000, 10));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(is_fundamental_discriminant(a[i]));
        CHECK(std::llabs(a[i]) < 1000);
        if (i) CHECK(std::llabs(a[i - 1]) <= std::llabs(a[i]));
    }
    for (auto d : sample_fundamental_discriminants(20, 1000, 1, true)) CHECK(d < 0);
    CHECK_THROWS_AS(sample_fundamental_discriminants(5000, 100, 0), Error);
}
