#include <doctest.h>

#include <sstream>

#include <fstream>

#include "qpb/charts.hpp"
#include "qpb/cli.hpp"
#include "qpb/parse.hpp"

using namespace qpb;

namespace {

std::pair<int, std::string> run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str() + err.str()};
}

}  // namespace

TEST_CASE("normalize matches the rewriting engine") {
    auto [code, text] = run({"normalize", "--variant", "mq", "--n", "2", "--expr", "b*a"});
    CHECK(code == 0);
    CHECK(text == "normal_form: 1/q*a*b\n");
    auto [c2, t2] = run({"normalize", "--expr", "1"});
    CHECK(c2 == 0);
    CHECK(t2 == "normal_form: 1\n");
    auto [c3, t3] = run({"normalize", "--variant", "slq", "--chart", "id", "--expr", "d^-1*b"});
    CHECK(c3 == 0);
    CHECK(t3 == "normal_form: q*b*d^-1\n");
}

TEST_CASE("malformed input exits with a usage code") {
    auto [code, text] = run({"normalize", "--expr", "b*("});
    CHECK(code == 2);
    CHECK(text.find("parse error") != std::string::npos);
    auto [c2, t2] = run({"normalize", "--expr", "zz*a"});
    CHECK(c2 == 2);
    auto [c3, t3] = run({"no-such-command"});
    CHECK(c3 == 2);
}

TEST_CASE("check commands exit zero on success") {
    CHECK(run({"cocycle-check", "--n", "2"}).first == 0);
    CHECK(run({"slq2-demo"}).first == 0);
    CHECK(run({"hopf", "--variant", "slq", "--n", "2", "--samples", "6"}).first == 0);
}

TEST_CASE("identical seeds give byte-identical reports") {
    std::vector<std::string> args{"confluence", "--variant", "slq",  "--n",   "2",
                                  "--trials",   "40",        "--seed", "99",  "--format",
                                  "kv"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.first == 0);
    CHECK(a.second == b.second);
    auto c = run({"hopf", "--variant", "glq", "--n", "2", "--seed", "7", "--format", "kv"});
    auto d = run({"hopf", "--variant", "glq", "--n", "2", "--seed", "7", "--format", "kv"});
    CHECK(c.second == d.second);
}

TEST_CASE("kv format emits machine-readable lines per condition") {
    auto [code, text] = run({"cocycle-check", "--n", "2", "--format", "kv"});
    CHECK(code == 0);
    CHECK(text.find("check.cocycle.action.s12=pass") != std::string::npos);
    CHECK(text.find("check.cocycle.intertwine.s12.s21=pass") != std::string::npos);
    CHECK(text.find("check.cocycle.triangle.s12.s21.s12=pass") != std::string::npos);
    CHECK(text.find("check.cocycle.normalization.s21=pass") != std::string::npos);
}

TEST_CASE("presentation emission round-trips") {
    auto [code, text] = run({"presentation", "--variant", "slq", "--n", "2", "--chart", "id"});
    REQUIRE(code == 0);
    Presentation back = read_presentation(text);
    QuantumMatrixAlgebra A = slq(2);
    auto [loc, adjoined] = localize_chart(A, sigma_id(2));
    CHECK(back == *loc);
}

TEST_CASE("a failing check exits with code 1") {
    // corrupted commutation scalar: order-randomized normal forms disagree
    std::string file = "/tmp/qpb_corrupt_test.pres";
    {
        std::ofstream out(file);
        out << "gen a pos 1 1\ngen b pos 1 2\ngen c pos 2 1\ngen d pos 2 2\n"
               "rule b*a = q^-1*a*b\nrule c*a = q^-1*a*c\nrule c*b = q^2*b*c\n"
               "rule d*b = q^-1*b*d\nrule d*c = q^-1*c*d\n"
               "rule d*a = a*d - (q - q^-1)*b*c\n";
    }
    auto [code, text] = run({"confluence", "--presentation", file, "--trials", "150",
                             "--max-len", "6", "--format", "kv"});
    CHECK(code == 1);
    CHECK(text.find("check.confluence=fail") != std::string::npos);
}
