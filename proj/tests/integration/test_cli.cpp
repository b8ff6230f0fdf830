#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ltorsion/io/corpus.hpp"
#include "support/process.hpp"

using namespace ltorsion;
using ltorsion::testing::quote;
using ltorsion::testing::run_command;
namespace fs = std::filesystem;

namespace {
const fs::path kScratch = fs::temp_directory_path() / "ltorsion_cli_test";

testing::ProcessResult cli(const std::string& args, const std::string& env = "") {
    return run_command(quote(LTORSION_CLI_PATH) + " " + args, kScratch / "proc", env);
}

std::string scratch(const std::string& name) {
    fs::create_directories(kScratch);
    return (kScratch / name).string();
}

// Value column of an `analyze` line "name   value  [source]".
std::string field_of(const std::string& out, const std::string& name) {
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(name + " ", 0) != 0) continue;
        std::istringstream ls(line.substr(name.size()));
        std::string v;
        ls >> v;
        return v;
    }
    return "<missing>";
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }
}  // namespace

TEST_CASE("analyze Q(i) end to end") {
    const auto r = cli("analyze --poly 1,0,1 --ell 3");
    CHECK(r.exit_code == 2);  // y < 2: degenerate but reported
    CHECK(field_of(r.out, "D") == "4");
    CHECK(field_of(r.out, "class_number") == "1");
    CHECK(field_of(r.out, "torsion") == "1");
    for (const char* col : {"log_trivial", "log_refined", "log_ev_prime", "s3.log_final", "s4.case_iii.log_bound"})
        CHECK(field_of(r.out, col) != "<missing>");
    CHECK(r.err.find("empty-range:y<2") != std::string::npos);
}

TEST_CASE("analyze d = -23 from x^2 - x + 6") {
    const auto r = cli("analyze --poly 6,-1,1 --ell 3");
    CHECK(field_of(r.out, "D") == "23");
    CHECK(field_of(r.out, "class_number") == "3");
    CHECK(field_of(r.out, "torsion") == "3");
}

TEST_CASE("a nondegenerate field exits 0") {
    const auto r = cli("analyze --poly 1000001,0,1 --ell 2");
    CHECK(r.exit_code == 0);
    CHECK(field_of(r.out, "D") == "4000004");
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli("analyze --poly 1,0,1").exit_code == 1);
    CHECK(cli("analyze --ell 3").exit_code == 1);
    CHECK(cli("analyze --poly 1,x,1 --ell 3").exit_code == 1);
    CHECK(cli("").exit_code == 1);
    CHECK(cli("frobnicate").exit_code == 1);
    CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("module errors are qualified and exit 1") {
    // x^2 - 2x + 1 = (x - 1)^2 is not squarefree.
    const auto r = cli("analyze --poly 1,-2,1 --ell 2");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find(":") != std::string::npos);
    const auto bad = cli("analyze --poly 1,0,1 --ell 1");
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("InvalidArgument") != std::string::npos);
}

TEST_CASE("the leading 1 may be omitted") {
    const auto a = cli("analyze --poly -2,0,0 --ell 2");
    const auto b = cli("analyze --poly -2,0,0,1 --ell 2");
    CHECK(a.out == b.out);
    CHECK(field_of(a.out, "D") == "108");
}

TEST_CASE("seed: TBL_SEED applies, the flag wins") {
    CHECK(field_of(cli("analyze --poly 1,0,1 --ell 2").out, "seed") == "0");
    CHECK(field_of(cli("analyze --poly 1,0,1 --ell 2", "TBL_SEED=17 ").out, "seed") == "17");
    CHECK(field_of(cli("analyze --poly 1,0,1 --ell 2 --seed 5", "TBL_SEED=17 ").out, "seed") == "5");
    CHECK(cli("analyze --poly 1,0,1 --ell 2", "TBL_SEED=abc ").exit_code == 1);
}

TEST_CASE("analyze from a corpus label, with a report file") {
    const std::string corpus = scratch("one.jsonl"), out = scratch("one.csv");
    write(corpus, to_json_line(quadratic_record(-23)) + "\n");
    const auto r = cli("analyze --label-from-corpus 'Q(sqrt(-23))' --corpus " + quote(corpus) + " --ell 3 --out " + quote(out));
    CHECK(field_of(r.out, "class_number") == "3");
    const auto back = load_reports(out);
    REQUIRE(back.size() == 1);
    CHECK(back[0].number("torsion") == 3.0);
    CHECK(back[0].text("class_number_src") == "certified:forms");
    CHECK(cli("analyze --label-from-corpus nope --corpus " + quote(corpus) + " --ell 3").exit_code == 1);
}

TEST_CASE("corpus-run: partial failures are logged and exit 2") {
    const std::string corpus = scratch("mixed.jsonl"), out = scratch("mixed.jsonl.out");
    write(corpus, to_json_line(quadratic_record(-23)) + "\n" +
                      R"({"label":"nonmonic","coeffs":[1,0,2],"source":"t"})" "\n" +
                      // Z[sqrt 5] has index 2 and no splitting is given at 2.
                      R"({"label":"x^2-5","coeffs":[-5,0,1],"disc":5,"source":"t","class_group":[]})" "\n" +
                      to_json_line(quadratic_record(-84)) + "\n");
    const auto r = cli("corpus-run --in " + quote(corpus) + " --out " + quote(out) + " --ell-list 2,3 --format jsonl");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.err.find("MissingSplitting") != std::string::npos);
    const auto back = load_reports(out);
    REQUIRE(back.size() == 4);
    CHECK(back[0].text("label") == "Q(sqrt(-23))");
    CHECK(back[0].number("params.ell") == 2.0);
    CHECK(back[1].number("params.ell") == 3.0);
    CHECK(back[3].text("label") == "Q(sqrt(-84))");
    CHECK(r.out.find("fit family=trivial ell=2") != std::string::npos);
}

TEST_CASE("corpus-run output does not depend on --jobs") {
    const std::string corpus = scratch("gen.jsonl");
    REQUIRE(cli("gen-quadratic --count 40 --max-abs 5000 --seed 3 --out " + quote(corpus)).exit_code == 0);
    const auto a = cli("corpus-run --in " + quote(corpus) + " --out " + quote(scratch("a.csv")) + " --jobs 1");
    const auto b = cli("corpus-run --in " + quote(corpus) + " --out " + quote(scratch("b.csv")) + " --jobs 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(testing::read_all(scratch("a.csv")) == testing::read_all(scratch("b.csv")));
    CHECK(load_reports(scratch("a.csv")).size() == 120);
}

TEST_CASE("plot-data emits label plus two columns and a slope") {
    const std::string corpus = scratch("p.jsonl"), reports = scratch("p_reports.jsonl"), plot = scratch("p.csv");
    REQUIRE(cli("gen-quadratic --count 30 --max-abs 20000 --seed 1 --out " + quote(corpus)).exit_code == 0);
    REQUIRE(cli("corpus-run --in " + quote(corpus) + " --out " + quote(reports) + " --ell-list 3").exit_code == 0);
    const auto r = cli("plot-data --in " + quote(reports) + " --x log_D --y log_class_over_sqrtD --out " + quote(plot));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("slope=") != std::string::npos);
    const std::string text = testing::read_all(plot);
    CHECK(text.rfind("label,log_D,log_class_over_sqrtD\n", 0) == 0);
    CHECK(load_reports(plot).size() == 30);
    const auto to_stdout = cli("plot-data --in " + quote(reports) + " --x log_D --y log_class_over_sqrtD");
    CHECK(to_stdout.out == text);
}

TEST_CASE("verify writes machine-readable results") {
    const std::string out = scratch("verify.jsonl");
    const auto r = cli("verify --suite io --out " + quote(out), "NO_COLOR=1 ");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\033[") == std::string::npos);
    const std::string text = testing::read_all(out);
    CHECK(text.find("\"suite\":\"io\"") != std::string::npos);
    CHECK(text.find("\"passed\":true") != std::string::npos);
    CHECK(cli("verify --suite nope").exit_code == 1);
}
