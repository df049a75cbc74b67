#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("hamcover_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

Run run(const std::string &args) {
    const auto out = scratch() / "stdout.txt";
    const auto err = scratch() / "stderr.txt";
    const std::string cmd = std::string(HAMCOVER_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string path(const std::string &name) { return (scratch() / name).string(); }

const char *kK5 = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const char *kPetersen = "10 15\n0 1\n1 2\n2 3\n3 4\n0 4\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n6 9\n6 8\n5 8\n";

nlohmann::json strip_timings(nlohmann::json j) {
    if (j.is_object()) {
        j.erase("phase_timings_ms");
        for (auto &[k, v] : j.items()) {
            v = strip_timings(v);
        }
    } else if (j.is_array()) {
        for (auto &v : j) {
            v = strip_timings(v);
        }
    }
    return j;
}

}  // namespace

TEST_CASE("gen then hamilton on a complete graph") {
    auto gen = run("gen --n 10 --p 1.0 --seed 7 --out " + path("k10.txt"));
    REQUIRE(gen.code == 0);
    auto g = hamcover::read_edge_list_file(path("k10.txt"));
    CHECK(g == hamcover::Graph::complete(10));
    std::ostringstream again;
    hamcover::write_edge_list(again, g);
    CHECK(again.str() == slurp(path("k10.txt")));

    auto ham = run("hamilton --graph " + path("k10.txt"));
    CHECK(ham.code == 0);
    std::istringstream line(ham.out);
    std::vector<int> vs;
    for (int v; line >> v;) {
        vs.push_back(v);
    }
    CHECK(vs.size() == 10);
}

TEST_CASE("hamilton with a forbidden-to-break matching") {
    run("gen --n 40 --p 0.4 --seed 2 --out " + path("g40.txt"));
    auto g = hamcover::read_edge_list_file(path("g40.txt"));
    const auto e = g.edges().front();
    write(path("forbid.txt"), "40 1\n" + std::to_string(e.u) + " " + std::to_string(e.v) + "\n");
    auto r = run("hamilton --format json --graph " + path("g40.txt") + " --forbid " + path("forbid.txt"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    const auto cyc = j["cycle"].get<std::vector<hamcover::Vertex>>();
    CHECK(hamcover::HamiltonCycle{cyc}.contains(e));
}

TEST_CASE("verify") {
    write(path("k5.txt"), kK5);
    write(path("walecki.txt"), "0 1 2 3 4\n0 2 4 1 3\n");
    write(path("half.txt"), "0 1 2 3 4\n");
    CHECK(run("verify --graph " + path("k5.txt") + " --cover " + path("walecki.txt")).code == 0);
    auto half = run("verify --format json --graph " + path("k5.txt") + " --cover " + path("half.txt"));
    CHECK(half.code == 1);
    CHECK(nlohmann::json::parse(half.out)["uncovered"].size() == 5);
    write(path("junk.txt"), "0 1 x\n");
    auto junk = run("verify --graph " + path("k5.txt") + " --cover " + path("junk.txt"));
    CHECK(junk.code == 2);
    CHECK(junk.err.find("line 1") != std::string::npos);
}

TEST_CASE("cover reports") {
    write(path("petersen.txt"), kPetersen);
    auto pet = run("cover --graph " + path("petersen.txt") + " --alpha 0.3");
    CHECK(pet.code == 1);
    auto pj = nlohmann::json::parse(pet.out);
    CHECK(pj["valid"] == false);
    CHECK(pj["failure"]["phase"] == "covering");

    write(path("k5.txt"), kK5);
    auto k5 = run("cover --graph " + path("k5.txt") + " --alpha 0.5 --cycles-out " + path("k5cov.txt"));
    REQUIRE(k5.code == 0);
    auto kj = nlohmann::json::parse(k5.out);
    for (const char *field : {"n", "m", "delta_max", "h", "cover_size", "ratio", "losses", "phase_timings_ms", "valid"}) {
        CHECK(kj.contains(field));
    }
    CHECK(kj["cover_size"] == 2);
    CHECK(kj["config"]["subcommand"] == "cover");
    CHECK(run("verify --graph " + path("k5.txt") + " --cover " + path("k5cov.txt")).code == 0);
}

TEST_CASE("reports are reproducible from their config") {
    run("gen --n 60 --p 0.3 --seed 4 --out " + path("g60.txt"));
    const std::string args = "cover --graph " + path("g60.txt") + " --alpha 0.25";
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(strip_timings(nlohmann::json::parse(a.out)) == strip_timings(nlohmann::json::parse(b.out)));

    auto e1 = run("experiment --n 50 --p 0.4 --seeds 2 --format json --jobs 1");
    auto e2 = run("experiment --n 50 --p 0.4 --seeds 2 --format json --jobs 2");
    REQUIRE(e1.code == 0);
    auto j1 = strip_timings(nlohmann::json::parse(e1.out));
    auto j2 = strip_timings(nlohmann::json::parse(e2.out));
    CHECK(j1["reports"] == j2["reports"]);
}

TEST_CASE("experiment csv and config files") {
    write(path("exp.ini"), "# sample config\n[experiment]\nn = 48\np=0.5\nseeds=3\n");
    auto r = run("experiment --config " + path("exp.ini") + " --out " + path("exp.csv"));
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(path("exp.csv")));
    std::vector<std::string> rows;
    for (std::string line; std::getline(csv, line);) {
        rows.push_back(line);
    }
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].starts_with("seed,n,p,"));
    CHECK(rows[1].starts_with("0,48,0.5,"));

    auto over = run("experiment --config " + path("exp.ini") + " --seeds 1");
    CHECK(over.code == 0);
    CHECK(std::count(over.out.begin(), over.out.end(), '\n') == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("gen --n 10").code == 2);
    CHECK(run("gen --n 10 --p 1.5").code == 2);
    auto missing = run("hamilton --graph " + path("does_not_exist.txt"));
    CHECK(missing.code == 2);
    write(path("bad.txt"), "3 2\n0 1\n1 x\n");
    auto bad = run("hamilton --graph " + path("bad.txt"));
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);
    write(path("k5.txt"), kK5);
    CHECK(run("cover --graph " + path("k5.txt") + " --alpha 2").code == 2);
    CHECK(run("--help").code == 0);
}
