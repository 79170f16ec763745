#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ellk3/json_io.hpp"
#include "test_util.hpp"

using namespace ellk3;
using testutil::make_rng;
using testutil::rnd_chern;

TEST_CASE("rational parsing and serialization") {
    CHECK(*parse_rat("3/4") == rat(3, 4));
    CHECK(*parse_rat("-6/4") == rat(-3, 2));
    CHECK(*parse_rat("7") == 7);
    CHECK(*parse_rat("+2/3") == rat(2, 3));
    CHECK_FALSE(parse_rat("1/0"));
    CHECK_FALSE(parse_rat("0.5"));
    CHECK_FALSE(parse_rat("1e3"));
    CHECK_FALSE(parse_rat(""));
    CHECK_FALSE(parse_rat("2/"));
    CHECK_FALSE(parse_rat("1/2/3"));
    CHECK(rat_str(rat(-3, 2)) == "-3/2");
    CHECK(rat_str(Rat(5)) == "5");
}

TEST_CASE("chern vector json round trip") {
    auto rng = make_rng(109);
    for (int i = 0; i < 50; ++i) {
        ChernVector v = rnd_chern(rng);
        CHECK(chern_from_string(chern_to_string(v)) == v);
    }
    ChernVector v = chern_from_string(R"({"n":"1","theta":"0","fiber":"-3/2","ch2":"1/2"})");
    CHECK(v == ChernVector{Rat(1), Rat(0), rat(-3, 2), rat(1, 2)});
    CHECK_THROWS(chern_from_string(R"({"n":"1","theta":"0","fiber":"1/0","ch2":"0"})"));
    CHECK_THROWS(chern_from_string(R"({"n":"1"})"));
}

TEST_CASE("divisor strings") {
    CHECK(divisor_from_string("1,4") == DivisorClass{Rat(1), Rat(4)});
    CHECK(divisor_from_string("-1/2,3") == DivisorClass{rat(-1, 2), Rat(3)});
    CHECK_THROWS(divisor_from_string("1"));
    CHECK_THROWS(divisor_from_string("a,b"));
    CHECK(divisor_to_string({rat(1, 2), Rat(-3)}) == "1/2,-3");
}

#ifdef ELLK3_CLI_PATH

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(ELLK3_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cli smoke: fmt apply reproduces the transform fixture") {
    CliResult r = run_cli(
        R"(fmt apply --map phi --e 2 --chern '{"n":"1","theta":"0","fiber":"0","ch2":"0"}')");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"theta\":\"-1\"") != std::string::npos);
    CHECK(r.out.find("\"ch2\":\"1\"") != std::string::npos);
}

TEST_CASE("cli smoke: region classify") {
    CliResult r = run_cli("region classify --e 2 --dalpha -1 --d 2 --v 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"twisted_ample\":true") != std::string::npos);
}

TEST_CASE("cli smoke: charge eval") {
    CliResult r = run_cli(
        R"(charge eval --family vd --V 1/2 --D 3 --chern '{"n":"-1","theta":"0","fiber":"0","ch2":"0"}')");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"re\":\"-1/2\"") != std::string::npos);
    CHECK(r.out.find("\"im\":\"0\"") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    // malformed rational -> parse error (3)
    CliResult r = run_cli(
        R"(fmt apply --map phi --e 2 --chern '{"n":"1/0","theta":"0","fiber":"0","ch2":"0"}')");
    CHECK(r.exit_code == 3);
    // domain error -> 2
    r = run_cli(
        R"(charge eval --family vd --V -1 --D 1 --chern '{"n":"1","theta":"0","fiber":"0","ch2":"0"}')");
    CHECK(r.exit_code == 2);
    // unknown verify suite -> 3
    r = run_cli("verify --suite nonsense");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli determinism") {
    std::string a = run_cli("region raster --e 2 --dalpha -1 --window 0,0,4,4 --nx 16 --ny 16 "
                            "--format csv").out;
    std::string b = run_cli("region raster --e 2 --dalpha -1 --window 0,0,4,4 --nx 16 --ny 16 "
                            "--format csv").out;
    CHECK(!a.empty());
    CHECK(a == b);
}

#endif  // ELLK3_CLI_PATH
