#include "cli.hpp"

#include <nlohmann/json.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

using Json = nlohmann::ordered_json;
using papermute::cli::run;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

const std::vector<std::string> kGolden = {"--n", "12", "--m", "3", "--a", "1,3,5", "--b", "4,6,1", "--c", "1,2,3"};
const std::vector<std::string> kTwoRule = {"--n", "24", "--m", "3", "--a0", "5", "--a", "7", "--b0", "2", "--b", "8"};

}  // namespace

TEST_CASE("pap cycles, text and json") {
    const auto text = call(with({"pap", "cycles"}, with(kGolden, {"--x", "1"})));
    CHECK(text.code == papermute::cli::kExitOk);
    CHECK(text.out == "2 x Cyc(6)\nP = 15\nS = 9\ng = 1\nN1 = 4\nN2 = 1\ncycle length of 1 = 6\n");

    const auto json = call(with({"--format", "json", "pap", "cycles", "--check"}, kGolden));
    REQUIRE(json.code == 0);
    const Json j = Json::parse(json.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "input", "result", "warnings"});
    CHECK(j.at("command") == "pap cycles");
    CHECK(j.at("result").at("cycle_type") == Json::parse(R"([{"length": 6, "count": 2}])"));
    CHECK(j.at("result").at("principal").at("P") == 15);
    CHECK(j.at("result").at("check").at("passed") == true);
}

TEST_CASE("pap invert and table") {
    const auto inv = call(with({"pap", "invert", "--check"}, kGolden));
    CHECK(inv.code == 0);
    CHECK(inv.out == "a = 3,1,1\nb = 2,8,11\nc = 3,2,1\n");
    const auto table = call(with({"pap", "table"}, kGolden));
    CHECK(table.out.rfind("1 -> 5\n2 -> 12\n", 0) == 0);
}

TEST_CASE("two-rule commands") {
    const auto inv = call(with({"pap", "two-reducible", "invert", "--check"}, kTwoRule));
    CHECK(inv.code == 0);
    CHECK(inv.out == "A0 = 5\nB0 = 14\nA = 7\nB = 16\nbranch residue = 2\n");
    const auto built = call(with({"pap", "two-reducible", "build"}, kTwoRule));
    CHECK(built.out == "a = 5,7,7\nb = 2,8,8\nc = 3,2,1\ncycles: 2 x Cyc(12)\n");
}

TEST_CASE("gf commands") {
    const auto lift = call(with({"gf", "lift", "--p", "13", "--theta", "2", "--check"}, kGolden));
    CHECK(lift.code == 0);
    CHECK(lift.out == "10x^11 + 8x^9 + 12x^7 + x^5 + 4x^3 + 6x\n");

    const auto eval = call(with({"gf", "lift-eval", "--p", "13", "--theta", "2", "--x", "2"}, kGolden));
    CHECK(eval.out == "6\n");

    const auto f25 =
        call(with({"gf", "lift", "--p", "5", "--k", "2", "--modulus=-3,-1,1", "--theta", "0,1", "--check"}, kTwoRule));
    CHECK(f25.code == 0);
    CHECK(f25.out == "(α+3)x^23 + (2α+1)x^21 + (α+3)x^15 + (2α+1)x^13 + (3α+4)x^7 + (2α+1)x^5\n");

    const auto ell = call({"gf", "cycles", "--n", "26", "--m", "2", "--a0", "5", "--a", "8", "--b0", "3", "--b", "2",
                           "--p", "3", "--k", "3", "--modulus=-2,-1,0,1", "--theta", "0,1,0", "--ell", "2", "--check"});
    CHECK(ell.code == 0);
    CHECK(ell.out == "Cyc(1) + 13 x Cyc(2)\nall cycles of length 2: yes\n");

    const auto fam = call({"gf", "family", "--p", "13", "--m", "3", "--theta", "3", "--a0", "5", "--a", "1", "--b", "1",
                           "--check"});
    CHECK(fam.code == 0);
    CHECK(fam.out.find("Cyc(1) + 4 x Cyc(3)") != std::string::npos);
}

TEST_CASE("counting") {
    const auto count = call({"pap", "count", "--n", "12", "--m", "3", "--check"});
    CHECK(count.code == 0);
    CHECK(count.out.rfind("paps = 1024\ntriples = 82944\n", 0) == 0);
    const auto listed = call({"pap", "enumerate", "--n", "6", "--m", "3"});
    CHECK(listed.out.find("count = 16") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
    const std::vector<std::string> bad = {"--n", "12", "--m", "3", "--a", "2,3,5", "--b", "4,6,1", "--c", "1,2,3"};
    const auto text = call(with({"pap", "validate"}, bad));
    CHECK(text.code == papermute::cli::kExitInvalid);
    CHECK(text.err.find("gcd(a_i, n1) = 1 [i=1]") != std::string::npos);

    const auto json = call(with({"--format", "json", "pap", "validate"}, bad));
    CHECK(json.code == papermute::cli::kExitInvalid);
    const Json j = Json::parse(json.out);
    CHECK(j.at("result").at("violations").size() == 2);
    CHECK(j.at("result").at("violations").at(0).at("index") == 1);

    const auto budget = call({"--format", "json", "pap", "count", "--n", "12", "--m", "6", "--budget", "10", "--check"});
    CHECK(budget.code == papermute::cli::kExitInvalid);
    CHECK(Json::parse(budget.out).at("result").at("search_space") == "7680");

    CHECK(call({"pap", "cycles", "--file", "/nonexistent/pap.json"}).code == papermute::cli::kExitInvalid);
    CHECK(call({"pap", "apply", "--n", "12", "--m", "3", "--a", "x"}).code == papermute::cli::kExitInvalid);
    CHECK(call({"bogus"}).code == papermute::cli::kExitInvalid);
    CHECK(call({"--format", "yaml", "pap", "count", "--n", "4", "--m", "2"}).code == papermute::cli::kExitInvalid);
    CHECK(call(with({"gf", "lift", "--p", "13", "--theta", "3"}, kGolden)).code == papermute::cli::kExitInvalid);
}

TEST_CASE("unused flags warn") {
    const auto r = call(with({"pap", "apply", "--x", "2", "--p", "5"}, kGolden));
    CHECK(r.code == 0);
    CHECK(r.out == "12\n");
    CHECK(r.err.find("--p is not used") != std::string::npos);
}

TEST_CASE("pap files") {
    const auto path = std::filesystem::temp_directory_path() / "papermute_cli_test.json";
    {
        std::ofstream out(path);
        out << R"({"n": 24, "m": 3, "reduced": {"a0": 5, "a": 7, "b0": 2, "b": 8}})";
    }
    const auto r = call({"--format", "json", "pap", "cycles", "--file", path.string()});
    std::filesystem::remove(path);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("result").at("cycle_type") == Json::parse(R"([{"length": 12, "count": 2}])"));
}

TEST_CASE("sampled p.a.p.s are reproducible") {
    const std::vector<std::string> args = {"--format", "json", "pap", "cycles", "--n", "24", "--m", "4", "--seed", "7", "--check"};
    const auto first = call(args);
    const auto second = call(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(Json::parse(first.out).at("warnings").empty());
    const auto other = call({"--format", "json", "pap", "cycles", "--n", "24", "--m", "4", "--seed", "8"});
    CHECK(Json::parse(other.out).at("input") != Json::parse(first.out).at("input"));
}

TEST_CASE("format from the environment") {
    ::setenv("PAPERMUTE_FORMAT", "json", 1);
    const auto r = call({"pap", "count", "--n", "4", "--m", "2"});
    ::unsetenv("PAPERMUTE_FORMAT");
    CHECK(Json::parse(r.out).at("command") == "pap count");
}

TEST_CASE("installed binary exit codes") {
    const std::string exe = PAPERMUTE_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("pap count --n 12 --m 3") == 0);
    CHECK(status("pap validate --n 12 --m 3 --a 2,3,5 --b 4,6,1 --c 1,2,3") == 2);
    CHECK(status("--help") == 0);
}
