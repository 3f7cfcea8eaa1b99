#include "cli.hpp"
#include "report_io.hpp"

#include <cmweyl/catalog.hpp>
#include <cmweyl/residue.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cmweyl;
using cmweyl::cli::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cmweyl_test_cli_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path) << text;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    int n = 0;
    for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_CASE("exit codes separate parse, data and acceptance failures") {
    CHECK(call({"--help"}).code == cli::kSuccess);
    CHECK(call({}).code == cli::kParseFailure);
    CHECK(call({"frobnicate"}).code == cli::kParseFailure);
    CHECK(call({"exponents", "--d", "5", "--delta", "two/five", "--malle", "1"}).code == cli::kParseFailure);
    CHECK(call({"group", "--label", "5T5", "--check", "sideways"}).code == cli::kParseFailure);
    CHECK(call({"classify", "--disc", "5", "--alpha", "3"}).code == cli::kParseFailure);

    CHECK(call({"classify", "--disc", "9", "--alpha", "-1,0"}).code == cli::kDataFailure);
    CHECK(call({"classify", "--disc", "5", "--alpha", "1,0"}).code == cli::kDataFailure);
    CHECK(call({"residues", "--degree", "3", "--catalog", scratch_file("missing.tsv").string()}).code ==
          cli::kDataFailure);
    CHECK(call({"residues", "--degree", "3", "--synth", "100"}).code == cli::kDataFailure);
    CHECK(call({"count-cm", "--x", "100"}).code == cli::kDataFailure);
    CHECK(call({"residues", "--degree", "2"}).code == cli::kDataFailure);

    const auto bad = scratch_file("bad.json");
    write_file(bad, "{\"config\": {}, \"reports\": [ {\"degree\": 3} ]}");
    CHECK(call({"residues", "--degree", "3", "--from-json", bad.string()}).code == cli::kParseFailure);
}

TEST_CASE("exponent golden values through the command line") {
    const auto r = call({"exponents", "--d", "5", "--delta", "2/5", "--malle", "1", "--subconvex", "1/2", "--emit", "json"});
    REQUIRE(r.code == cli::kSuccess);
    const json j = json::parse(r.out);
    CHECK(j["C1"] == "3/10");
    CHECK(j["alpha"] == "19/25");
    CHECK(j["beta"] == "17/20");
    CHECK(j["C2"] == "3/20");
    CHECK(j["C3"] == "3/20");
    CHECK(j["config"]["command"] == "exponents");

    const auto plain = call({"exponents", "--d", "5", "--malle", "1"});
    CHECK(plain.out.find("C3             1/2") != std::string::npos);

    const auto multi = call({"exponents", "--d", "4", "--delta", "1/5", "--group", "D4=1", "--group", "S4=1", "--emit", "json"});
    REQUIRE(multi.code == cli::kSuccess);
    CHECK(json::parse(multi.out)["groups"].size() == 2);

    CHECK(call({"exponents", "--d", "4", "--lookup", "S4"}).code == cli::kSuccess);
    const auto sweep = call({"exponents", "--d", "5", "--sweep", "200", "--seed", "7"});
    CHECK(sweep.code == cli::kSuccess);
    CHECK(sweep.out.find(" 0 violations") != std::string::npos);
}

TEST_CASE("group checks") {
    CHECK(call({"group", "--degree", "5", "--label", "5T5", "--check", "orbit"}).out ==
          "orbit size 32 = 2^5: transitive\n");
    CHECK(call({"group", "--label", "D4", "--check", "order"}).out == "|C2 wr 4T3| = 128 = 2^4 * 8\n");
    CHECK(call({"group", "--label", "C3", "--check", "abelian"}).out ==
          "3T1 is abelian; C2 wr 3T1 is not abelian\n");
    CHECK(call({"group", "--label", "S3", "--check", "index"}).out == "minimal index 1, a(3T2) = 1\n");
    CHECK(call({"group", "--degree", "4", "--label", "5T5"}).code == cli::kDataFailure);
}

TEST_CASE("classify cyclotomic fields") {
    const auto z5 = call({"classify", "--disc", "5", "--alpha=-5/2,1/2", "--emit", "json"});
    REQUIRE(z5.code == cli::kSuccess);
    const json j5 = json::parse(z5.out)["record"];
    CHECK(j5["galois_type"] == "C4");
    CHECK(j5["abs_disc"] == 125);
    CHECK(j5["rel_norm"] == 5);

    const json j8 = json::parse(call({"classify", "--disc", "8", "--alpha", "-1,0", "--emit", "json"}).out)["record"];
    CHECK(j8["galois_type"] == "V4");
    CHECK(j8["abs_disc"] == 256);
}

TEST_CASE("residue reports survive a JSON round trip") {
    const auto first = call({"residues", "--degree", "3", "--max-disc", "5000", "--emit", "json"});
    REQUIRE(first.code == cli::kSuccess);
    const auto path = scratch_file("residues.json");
    write_file(path, first.out);

    const auto again = call({"residues", "--degree", "3", "--from-json", path.string(), "--emit", "json"});
    REQUIRE(again.code == cli::kSuccess);
    CHECK(json::parse(again.out)["reports"] == json::parse(first.out)["reports"]);

    // Replaying the recorded argv reproduces the output byte for byte.
    CHECK(call({"--replay", path.string()}).out == first.out);

    const auto reports = json::parse(first.out)["reports"];
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) {
        const auto parsed = cli::residue_report_from_json(r);
        CHECK(cli::to_json(parsed) == r);
    }
}

TEST_CASE("CSV residue table") {
    const auto r = call({"residues", "--degree", "3", "--max-disc", "2000", "--emit", "csv"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(r.out.rfind("group,n_fields,min_disc,residue,proportion\nall,", 0) == 0);
    CHECK(count_lines_starting(r.out, "C3,") == 1);
    CHECK(count_lines_starting(r.out, "S3,") == 1);

    const auto synth = call({"residues", "--degree", "2", "--synth", "1000", "--emit", "csv"});
    REQUIRE(synth.code == cli::kSuccess);
    CHECK(synth.out.rfind("group,n_fields,min_disc,residue,proportion\nC2,", 0) == 0);
}

TEST_CASE("catalog round trip through a file") {
    const auto path = scratch_file("deg3.tsv");
    REQUIRE(call({"catalog", "load", "--degree", "3", "--max-disc", "3000", "--output", path.string()}).code ==
            cli::kSuccess);
    const auto direct = catalog::truncate(catalog::load(std::filesystem::path(CMWEYL_DATA_DIR) / "fields/degree3.tsv", 3), 3000);
    const auto reread = catalog::load(path, 3);
    CHECK(reread.records == direct.records);

    const json summary = json::parse(call({"catalog", "load", "--degree", "3", "--catalog", path.string(), "--emit", "json"}).out);
    CHECK(summary["n_fields"] == direct.records.size());

    const auto synth = call({"catalog", "synth", "--degree", "2", "--max-disc", "100", "--emit", "json"});
    CHECK(json::parse(synth.out)["n_fields"] == 30);
}

TEST_CASE("CM count report round trip") {
    const auto first = call({"count-cm", "--x", "10000", "--per-d", "--emit", "json"});
    REQUIRE(first.code == cli::kSuccess);
    const json j = json::parse(first.out);
    CHECK(j["report"]["n_cm"] == 99);
    long long total = 0;
    for (const auto& row : j["per_d"]) total += row["n_cm"].get<long long>();
    CHECK(total == 99);

    const auto path = scratch_file("count.json");
    write_file(path, first.out);
    const auto again = call({"count-cm", "--from-json", path.string(), "--emit", "json"});
    REQUIRE(again.code == cli::kSuccess);
    CHECK(json::parse(again.out)["report"] == j["report"]);
    CHECK(cli::to_json(cli::count_report_from_json(j["report"])) == j["report"]);
}

TEST_CASE("fast acceptance criteria pass") {
    const auto r = call({"verify", "--only", "4,5,6,8"});
    CHECK(r.code == cli::kSuccess);
    CHECK(count_lines_starting(r.out, "PASS") == 4);
    CHECK(r.out.find("4/4 criteria passed") != std::string::npos);
    CHECK(call({"verify", "--only", "9"}).code == cli::kParseFailure);
}
