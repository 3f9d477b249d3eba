#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jnsharp/cli.hpp"
#include "jnsharp/io.hpp"
#include "support.hpp"

using namespace jnsharp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "jnsharp_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

const std::string kData = JNSHARP_DATA_DIR;

}  // namespace

TEST_CASE("generate extremal reproduces the shipped fixture byte for byte") {
    const auto r = run({"generate", "extremal"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == slurp(kData + "/extremal.json"));
}

TEST_CASE("generate random is deterministic and validated") {
    const auto a = run({"generate", "random", "--cells", "10", "--seed", "7"});
    const auto b = run({"generate", "random", "--cells", "10", "--seed", "7"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(parse_step_function(a.out).cell_count() == 10);
    CHECK(run({"generate", "random", "--cells", "1"}).code == kExitInputError);
    CHECK(run({"generate", "random", "--cells", "10001"}).code == kExitInputError);
}

TEST_CASE("verify on the extremal function") {
    const auto r = run({"verify", kData + "/extremal.json", "--gamma", "1/2"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["decomposition"]["g_measures"][0] == "1/2");
    CHECK(j["decomposition"]["min_slack"] == "0");
    CHECK(j["norm"]["attained"] == "1/2");
}

TEST_CASE("verify on a constant function") {
    const auto p = write("constant.json", R"({"domain": {"a": "0", "b": "1"}, "breakpoints": [], "values": ["2/3"]})");
    const auto r = run({"verify", p.string(), "--gamma", "1/2"});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)["decomposition"]["depth"] == 0);
}

TEST_CASE("verify exit codes for bad input, violations and depth caps") {
    CHECK(run({"verify", write("bad.json", "{not json").string(), "--gamma", "1/2"}).code == kExitInputError);
    CHECK(run({"verify", write("bad2.json", R"({"domain": {"a": "0", "b": "1"}, "breakpoints": ["1/2"], "values": ["1"]})")
                             .string(),
               "--gamma", "1/2"})
              .code == kExitInputError);
    CHECK(run({"verify", (scratch() / "missing.json").string(), "--gamma", "1/2"}).code == kExitInputError);
    CHECK(run({"verify", kData + "/extremal.json", "--gamma", "3/2"}).code == kExitInputError);
    CHECK(run({"verify", kData + "/extremal.json"}).code == kExitInputError);
    // alpha_bar too small for gamma: the packing check fails.
    CHECK(run({"verify", kData + "/extremal.json", "--gamma", "1/4", "--alpha", "1/4"}).code == kExitViolation);

    std::string stair = R"({"domain": {"a": "0", "b": "1"}, "breakpoints": [)";
    for (int k = 1; k < 16; ++k) stair += "\"" + std::to_string(k) + "/16\"" + (k < 15 ? "," : "");
    stair += R"(], "values": [)";
    for (int k = 0; k < 16; ++k) stair += "\"" + std::to_string(k * k) + "/16\"" + (k < 15 ? "," : "");
    stair += "]}";
    const auto p = write("stair.json", stair);
    CHECK(run({"verify", p.string(), "--gamma", "1/2"}).code == kExitOk);
    CHECK(run({"verify", p.string(), "--gamma", "1/2", "--max-depth", "1"}).code == kExitIncomplete);
}

TEST_CASE("report tables") {
    const auto phi = run({"report", "phi", "--min", "1/10", "--max", "3", "--step", "1/10"});
    REQUIRE(phi.code == kExitOk);
    std::istringstream lines(phi.out);
    std::string line;
    int rows = -1;
    std::string at_one;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.rfind("1,", 0) == 0) at_one = line;
    }
    CHECK(rows == 30);
    CHECK(at_one.find("7.35758882342884e-01") != std::string::npos);

    const auto cm = run({"--json", "report", "cm", "--max-m", "3"});
    REQUIRE(cm.code == kExitOk);
    const Json t = Json::parse(cm.out);
    REQUIRE(t.size() == 3);
    CHECK(t[0]["c_lo"].get<std::string>().rfind("2.1779206342876", 0) == 0);
    CHECK(t[1]["c_lo"].get<std::string>().rfind("2.1033740793607", 0) == 0);
    CHECK(std::stod(t[2]["c_hi"].get<std::string>()) < std::stod(t[1]["c_lo"].get<std::string>()));

    const auto sun = run({"report", "sunrise", kData + "/halfstep.json", "--level", "3/4"});
    REQUIRE(sun.code == kExitOk);
    CHECK(Json::parse(sun.out) == Json::parse(R"([["0", "2/3"]])"));
    CHECK(run({"report", "sunrise", kData + "/halfstep.json", "--level", "1/4"}).code == kExitInputError);

    const auto norm = run({"report", "norm", kData + "/extremal.json", "--tol", "1/10^9"});
    CHECK(Json::parse(norm.out)["upper"] == "1/2");

    const auto dec = run({"report", "decompose", kData + "/extremal.json", "--gamma", "1/2", "--alpha", "1/2"});
    const Json d = Json::parse(dec.out);
    CHECK(d["layers"][0]["g"] == Json::parse(R"([["0", "1/4"], ["3/4", "1"]])"));
    CHECK(d["psi"]["values"] == Json::parse(R"(["2", "1", "2"])"));

    CHECK(run({"report", "phi", "--step", "0"}).code == kExitInputError);
    CHECK(run({"report", "bogus"}).code == kExitInputError);
    CHECK(run({"--precision-bits", "8", "report", "cm"}).code == kExitInputError);
}

TEST_CASE("tail report re-checks to the same verdicts") {
    const auto r = run({"report", "tail", kData + "/extremal.json", "--alphas", "0,1/2,9/10,1,3/2"});
    REQUIRE(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "alpha,measured,bound_lo,bound_hi");
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string alpha, measured, lo, hi;
        std::getline(cells, alpha, ',');
        std::getline(cells, measured, ',');
        std::getline(cells, lo, ',');
        std::getline(cells, hi, ',');
        // The decimal lower end still dominates the exact measured tail.
        CHECK(Rational::parse(measured).to_double() <= std::stod(lo));
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("out flag writes the report to a file") {
    const fs::path p = scratch() / "ext.json";
    CHECK(run({"generate", "extremal", "--out", p.string()}).code == kExitOk);
    CHECK(slurp(p) == slurp(kData + "/extremal.json"));
}

TEST_CASE("verify passes on the seeded corpus for every gamma") {
    for (int i = 0; i < 200; ++i) {
        const auto p = write("corpus.json", dump_step_function(jnsharp::testing::corpus_function(i)));
        for (const char* gamma : {"1/4", "1/2", "3/4"}) {
            const auto r = run({"verify", p.string(), "--gamma", gamma});
            INFO("corpus " << i << " gamma " << gamma << "\n" << r.err);
            REQUIRE(r.code == kExitOk);
        }
    }
}
