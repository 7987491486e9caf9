#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lookknave");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = lookknave::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

void check_json_lines(const std::string& text) {
    for (const auto& line : lines(text)) {
        CHECK(nlohmann::json::accept(line));
    }
}

} // namespace

TEST_CASE("gen") {
    const auto knave = run({"gen", "--variant", "knave", "--seed", "1", "--steps", "10"});
    CHECK(knave.code == 0);
    const auto terms = lines(knave.out);
    REQUIRE(terms.size() == 10);
    CHECK(terms[3] == "1011100");
    CHECK(terms[9] == "101110001110101111011100011101011101110");

    const auto decimal = run({"gen", "--variant", "looksay10", "--seed", "1", "--steps", "5"});
    CHECK(lines(decimal.out) == std::vector<std::string>{"1", "11", "21", "1211", "111221"});

    const auto empty = run({"gen", "--variant", "knave", "--seed", "", "--steps", "3"});
    CHECK(empty.code == 1);
    CHECK(empty.err.find("EmptyInput") != std::string::npos);

    const auto capped = run({"gen", "--steps", "50", "--max-bits", "30"});
    CHECK(capped.code == 2);
    CHECK(lines(capped.out).size() == 8);
}

TEST_CASE("gen json and csv schemas") {
    const auto json = run({"gen", "--steps", "3", "--emit", "json"});
    check_json_lines(json.out);
    const auto rows = lines(json.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == R"({"n":1,"length":1,"bits":"1","ratio":null})");
    CHECK(rows[2] == R"({"n":3,"length":4,"bits":"1011","ratio":"2/1"})");

    const auto csv = run({"gen", "--steps", "3", "--emit", "csv"});
    CHECK(lines(csv.out).front() == "n,length,bits,ratio");
    CHECK(lines(csv.out)[1] == "1,1,1,");

    CHECK(run({"gen", "--emit", "yaml"}).code == 1);
    CHECK(run({"gen", "--variant", "conway"}).code == 1);
}

TEST_CASE("step") {
    CHECK(run({"step", "--input", "110"}).out == "10011\n");
    CHECK(run({"step", "--input", "1"}).out == "10\n");
    const auto bad = run({"step", "--input", "2"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("NonBinaryCharacter") != std::string::npos);
}

TEST_CASE("fixedpoint with a cache file") {
    const auto dir = std::filesystem::temp_directory_path() / "lookknave_cli_test";
    std::filesystem::remove_all(dir);
    const std::string cache = (dir / "fp.txt").string();

    const auto odd = run({"fixedpoint", "--parity", "odd", "--bits", "8", "--cache", cache});
    CHECK(odd.code == 0);
    CHECK(odd.out.find("prefix 10111101") != std::string::npos);
    CHECK(odd.out.find("source computed") != std::string::npos);

    const auto again = run({"fixedpoint", "--parity", "odd", "--bits", "8", "--cache", cache});
    CHECK(again.out.find("source cache") != std::string::npos);

    const auto even = run({"fixedpoint", "--parity", "even", "--bits", "7", "--cache", cache, "--emit", "json"});
    const auto j = nlohmann::json::parse(even.out);
    CHECK(j["prefix"].get<std::string>().starts_with("1011100"));
    CHECK(j["certified_bits"].get<int>() >= 7);

    CHECK(run({"fixedpoint", "--parity", "odd", "--bits", "0", "--cache", cache}).code == 1);
    CHECK(run({"fixedpoint", "--parity", "sideways"}).code == 1);

    const auto capped =
        run({"fixedpoint", "--parity", "odd", "--bits", "100000", "--max-iterations", "2", "--cache", cache});
    CHECK(capped.code == 2);
    CHECK(capped.out.find("source partial") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify suites") {
    const auto table = run({"verify", "--suite", "table"});
    CHECK(table.out.find("rows 15/16") != std::string::npos);
    CHECK(table.code == 3);

    const auto ribbits = run({"verify", "--suite", "ribbits", "--steps", "80"});
    CHECK(ribbits.code == 0);
    CHECK(ribbits.out.find("max_ribbit 5") != std::string::npos);
    CHECK(ribbits.out.find("max_even_ribbit 3") != std::string::npos);

    const auto other = run({"verify", "--suite", "ribbits", "--steps", "20", "--seed", "0"});
    CHECK(other.code == 0);
    CHECK(other.out.find("no bound is claimed") != std::string::npos);

    const auto prefix = run({"verify", "--suite", "prefixlemma", "--steps", "60"});
    CHECK(prefix.code == 0);

    CHECK(run({"verify", "--suite", "everything"}).code == 1);
}

TEST_CASE("basin output is deterministic") {
    const auto serial = run({"basin", "--max-len", "6", "--emit", "csv"});
    const auto parallel = run({"basin", "--max-len", "6", "--emit", "csv", "--parallel"});
    CHECK(serial.code == 0);
    CHECK(serial.out == parallel.out);
    const auto rows = lines(serial.out);
    CHECK(rows.front() == "seed,attractor,steps_used,agreement_bits");
    CHECK(rows.size() == 1 + 126);
    CHECK(rows[2].starts_with("1,odd,"));
    CHECK(serial.err.find("undecided=0") != std::string::npos);

    const auto json = run({"basin", "--max-len", "3", "--emit", "json"});
    check_json_lines(json.out);
    const auto last = nlohmann::json::parse(lines(json.out).back());
    CHECK(last["summary"]["undecided"] == 0);

    const auto text = run({"basin", "--max-len", "2"});
    CHECK(lines(text.out).back() == "summary even=3 odd=3 undecided=0");
}

TEST_CASE("growth") {
    const auto csv = run({"growth", "--variant", "looksay2", "--steps", "20", "--emit", "csv"});
    CHECK(csv.code == 0);
    CHECK(lines(csv.out).front() == "n,length,ratio");
    CHECK(lines(csv.out).size() == 21);
    CHECK(csv.err.find("lambda_hat=") != std::string::npos);

    const auto json = run({"growth", "--variant", "looksay10", "--steps", "30", "--emit", "json"});
    check_json_lines(json.out);
    const auto est = nlohmann::json::parse(lines(json.out).back());
    CHECK(est["window"][0] == 16);
    CHECK(est["window"][1] == 30);
    CHECK(est["ratios"].size() == 29);

    const auto few = run({"growth", "--steps", "5"});
    CHECK(few.code == 1);
    CHECK(few.err.find("InsufficientData") != std::string::npos);

    const auto capped = run({"growth", "--steps", "60", "--max-bits", "1000"});
    CHECK(capped.code == 2);
    CHECK(capped.out.find("lambda_hat") != std::string::npos);
}

TEST_CASE("metric") {
    CHECK(run({"metric", "--a", "10", "--b", "11111"}).out == "exponent 2\n");
    CHECK(run({"metric", "--a", "1011", "--b", "1011"}).out == "equal\n");
    const auto j = nlohmann::json::parse(run({"metric", "--a", "10", "--b", "11111", "--emit", "json"}).out);
    CHECK(j["exponent"] == 2);
    CHECK(j["equal"] == false);
    CHECK(run({"metric", "--a", "", "--b", "1"}).code == 1);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}
