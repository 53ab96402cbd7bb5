#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tardis/cli.hpp"
#include "tardis/exact.hpp"
#include "tardis/treewidth.hpp"

using namespace tardis;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run call(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const char* kPath3 = "p tg 4 3\n1 2 1\n2 3 1\n3 4 1\n";
const char* kP4 = "p tw 4 3\n1 2\n2 3\n3 4\n";

fs::path scratch_dir() {
    auto d = fs::temp_directory_path() / ("tardis_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

void check_integers(const Json& j) {
    if (j.is_number()) CHECK(j.is_number_integer());
    if (j.is_structured())
        for (const auto& x : j) check_integers(x);
}

}  // namespace

TEST_CASE("documented examples") {
    auto r = call({"solve", "--semantics", "nonstrict", "--algo", "auto"}, kPath3);
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["result"]["size"] == 1);
    CHECK(j["result"]["witness"] == Json::array({1}));

    r = call({"verify", "--semantics", "strict", "--set", "2,3"}, kPath3);
    REQUIRE(r.code == 0);
    CHECK(r.json()["answer"] == "yes");

    r = call({"maxmin", "--variant", "nonstrict", "--tau", "2", "--algo", "auto"}, kP4);
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["value"] == 2);
    r = call({"maxmin", "--variant", "nonstrict", "--tau", "2", "--algo", "enum"}, kP4);
    CHECK(r.json()["result"]["value"] == 2);
}

TEST_CASE("output envelope") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"solve"}, {"verify", "--set", "1"}, {"reach"}, {"reach", "--source", "2"}, {"classify"}}) {
        auto r = call(args, kPath3);
        REQUIRE(r.code == 0);
        auto j = r.json();
        for (const char* key : {"command", "instance_summary", "result", "algorithm", "elapsed_ms"})
            CHECK(j.contains(key));
        CHECK(j["command"] == args[0]);
        CHECK(j["elapsed_ms"] == 0);
        check_integers(j);
        CHECK(r.out.back() == '\n');
        CHECK(r.out.find('\n') == r.out.size() - 1);
    }
    auto r = call({"gen", "random", "--n", "6", "--tau", "3", "--seed", "7"});
    REQUIRE(r.code == 0);
    check_integers(r.json());
    CHECK(r.json()["command"] == "gen");
}

TEST_CASE("answer field appears only with k for solve and maxmin") {
    CHECK_FALSE(call({"solve"}, kPath3).json().contains("answer"));
    CHECK(call({"solve", "--k", "1"}, kPath3).json()["answer"] == "yes");
    CHECK(call({"solve", "--k", "0"}, kPath3).json()["answer"] == "no");
    CHECK(call({"solve", "--semantics", "strict", "--k", "1"}, kPath3).json()["answer"] == "no");
    CHECK(call({"maxmin", "--tau", "2", "--k", "2"}, kP4).json()["answer"] == "yes");
    CHECK(call({"maxmin", "--tau", "2", "--k", "3"}, kP4).json()["answer"] == "no");
    auto v = call({"verify", "--semantics", "strict", "--set", "1"}, kPath3).json();
    CHECK(v["answer"] == "no");
    CHECK(v["result"]["unreached"] == Json::array({3, 4}));
    CHECK(call({"verify", "--set", "2,3", "--k", "1"}, kPath3).json()["answer"] == "no");
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == cli::kUsage);
    CHECK(call({"frobnicate"}).code == cli::kUsage);
    CHECK(call({"solve", "--semantics", "weird"}, kPath3).code == cli::kUsage);
    CHECK(call({"solve", "--algo", "magic"}, kPath3).code == cli::kUsage);
    CHECK(call({"maxmin"}, kP4).code == cli::kUsage);
    CHECK(call({"verify", "--set", "9"}, kPath3).code == cli::kUsage);
    CHECK(call({"verify", "--set", "x"}, kPath3).code == cli::kUsage);
    CHECK(call({"reach", "--depart-after", "1"}, kPath3).code == cli::kUsage);
    CHECK(call({"maxmin", "--tau", "3", "--algo", "shortcut", "--variant", "nonstrict"}, kP4).code == cli::kUsage);

    CHECK(call({"solve"}, "p tg 2 1\n1 3 1\n").code == cli::kParse);
    CHECK(call({"solve"}, "garbage").code == cli::kParse);
    CHECK(call({"solve", "/nonexistent/file.tg"}).code == cli::kParse);

    const char* star = "p tw 4 3\n1 2\n1 3\n1 4\n";
    auto r = call({"maxmin", "--variant", "happy", "--tau", "2"}, star);
    CHECK(r.code == cli::kInfeasible);
    CHECK(r.json()["error"]["code"] == cli::kInfeasible);
    CHECK_FALSE(r.err.empty());

    r = call({"maxmin", "--variant", "nonstrict", "--tau", "3", "--budget", "10"}, star);
    CHECK(r.code == cli::kBudget);
    CHECK(r.json()["result"].is_null());

    CHECK(call({"--help"}).code == cli::kOk);
    CHECK(call({"--help"}).out.empty());
}

TEST_CASE("maxmin reads both footprint formats and writes the witness") {
    auto dir = scratch_dir();
    auto a = call({"maxmin", "--tau", "2"}, kP4).json();
    auto b = call({"maxmin", "--tau", "2"}, "p tg 4 3\n1 2 5\n2 3 5\n3 4 5\n").json();
    CHECK(a["result"] == b["result"]);

    const std::string out = (dir / "w.tg").string();
    auto r = call({"maxmin", "--tau", "2", "--algo", "enum", "--witness-out", out}, kP4);
    REQUIRE(r.code == 0);
    auto g = read_temporal_graph(out);
    CHECK(min_tardis_bruteforce(g, Semantics::Nonstrict).size == r.json()["result"]["value"]);
    fs::remove_all(dir);
}

TEST_CASE("auto agrees with every applicable algorithm") {
    std::mt19937_64 rng(404);
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 2 + it % 7;
        TemporalGraph g = it % 3 == 0 ? testing_support::assign_times(rng, testing_support::random_tree(rng, n), 3, 2)
                                      : testing_support::random_temporal(rng, n, 0.45, 1 + it % 4, 2);
        const std::string text = serialize(g);
        for (const char* sem : {"strict", "nonstrict"}) {
            auto base = call({"solve", "--semantics", sem}, text);
            REQUIRE(base.code == 0);
            const auto size = base.json()["result"]["size"];
            for (const char* algo : {"bruteforce", "setcover", "lee", "treewidth", "tree", "special"}) {
                auto r = call({"solve", "--semantics", sem, "--algo", algo}, text);
                if (r.code == cli::kUsage) {
                    const std::string a = algo;
                    const bool may_refuse = a == "tree" || a == "special" || (a == "lee" && std::string(sem) == "strict");
                    CHECK_MESSAGE(may_refuse, a << ": " << r.err);
                    continue;
                }
                REQUIRE(r.code == 0);
                CHECK_MESSAGE(r.json()["result"]["size"] == size, algo << " on\n" << text);
            }
        }
    }
}

TEST_CASE("maxmin auto agrees with enumeration") {
    std::mt19937_64 rng(405);
    for (int it = 0; it < 30; ++it) {
        auto h = testing_support::random_connected_graph(rng, 2 + it % 5, 0.3);
        const std::string gr = write_gr(h);
        for (const char* var : {"strict", "nonstrict", "happy"})
            for (const char* tau : {"1", "2"}) {
                auto a = call({"maxmin", "--variant", var, "--tau", tau}, gr);
                auto e = call({"maxmin", "--variant", var, "--tau", tau, "--algo", "enum"}, gr);
                REQUIRE(a.code == e.code);
                if (a.code == 0) CHECK(a.json()["result"]["value"] == e.json()["result"]["value"]);
            }
    }
}

TEST_CASE("repeat invocations are byte-identical") {
    std::vector<std::vector<std::string>> cmds = {
        {"solve"}, {"solve", "--semantics", "strict", "--algo", "setcover"}, {"reach"}, {"classify"},
        {"verify", "--set", "1,4"}, {"gen", "random", "--n", "8", "--tau", "4", "--seed", "3"},
        {"gen", "setcover", "--universe", "5", "--sets", "4", "--k", "2", "--seed", "9"},
        {"gen", "sat3", "--vars", "4", "--seed", "2"}, {"gen", "ds", "--n", "6", "--k", "2", "--tau", "3"}};
    std::mt19937_64 rng(406);
    const std::string text = serialize(testing_support::random_temporal(rng, 8, 0.4, 3, 2));
    for (const auto& c : cmds) {
        auto a = call(c, text);
        auto b = call(c, text);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
    }
    const std::string gr = write_gr(testing_support::random_connected_graph(rng, 6, 0.3));
    std::string first;
    for (const char* threads : {"1", "2", "4", "1"}) {
        auto r = call({"maxmin", "--tau", "3", "--algo", "enum", "--threads", threads}, gr);
        REQUIRE(r.code == 0);
        if (first.empty()) first = r.out;
        CHECK(r.out == first);
    }
}

TEST_CASE("generators write instance and sidecar") {
    auto dir = scratch_dir();
    const std::string out = (dir / "ds.tg").string();
    auto r = call({"gen", "ds", "--n", "6", "--p", "0.4", "--k", "2", "--tau", "3", "--seed", "11", "--out", out});
    REQUIRE(r.code == 0);
    REQUIRE(fs::exists(out));
    std::ifstream sf(out + ".json");
    auto side = Json::parse(sf);
    CHECK(side["k"] == 2);
    CHECK(side["names"].size() == read_temporal_graph(out).num_vertices());
    auto solved = call({"solve", "--semantics", "strict", "--k", "2", out}).json();
    CHECK(solved["answer"] == side["expected_answer"]);

    for (int seed = 0; seed < 6; ++seed)
        for (bool happy : {false, true}) {
            std::vector<std::string> args{"gen", "setcover", "--universe", "4", "--sets", "4", "--k", "2",
                                          "--seed", std::to_string(seed)};
            if (happy) args.push_back("--happy");
            auto g = call(args).json();
            const auto k = std::to_string(g["result"]["k"].get<std::size_t>());
            auto s = call({"solve", "--semantics", "nonstrict", "--k", k}, g["result"]["tg"].get<std::string>());
            REQUIRE(s.code == 0);
            CHECK(s.json()["answer"] == g["result"]["expected_answer"]);
        }

    auto sat = call({"gen", "sat3", "--vars", "3", "--seed", "1"}).json();
    auto tg = sat["result"]["tg"].get<std::string>();
    auto solved_sat = call({"solve", "--algo", "setcover", "--k", std::to_string(sat["result"]["k"].get<int>())}, tg);
    CHECK(solved_sat.json()["answer"] == sat["result"]["expected_answer"]);
    fs::remove_all(dir);
}
