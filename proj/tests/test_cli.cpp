#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "squaretile/cli.hpp"
#include "squaretile/origami.hpp"

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = squaretile::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("cli verify parity") {
    Outcome r = run({"verify", "parity", "3", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 orbit, matches") != std::string::npos);
}

TEST_CASE("cli counts") {
    Outcome r = run({"counts", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("genus") != std::string::npos);
    // the genus row of X(7)
    std::istringstream lines(r.out);
    bool found = false;
    for (std::string line; std::getline(lines, line);)
        if (line.find("genus") != std::string::npos) found = line.substr(line.find_last_of(' ') + 1) == "3";
    CHECK(found);
    Outcome j = run({"--json", "counts", "5", "3"});
    CHECK(j.out.find("\"9\":\"240\"") == std::string::npos);  // row 9 at n = 3 is 640
    CHECK(j.out.find("\"9\":\"640\"") != std::string::npos);
}

TEST_CASE("cli tiling svg") {
    auto path = std::filesystem::temp_directory_path() / "squaretile_x11.svg";
    Outcome r = run({"tiling", "11", "--svg", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("5 stories") != std::string::npos);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("version=\"1.1\"") != std::string::npos);
    CHECK(count_of(ss.str(), "class=\"story\"") == 5);
    std::filesystem::remove(path);
}

TEST_CASE("cli usage errors and exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"cylinders"}).code == 2);
    CHECK(run({"cylinders", "1"}).code == 2);
    Outcome bad = run({"tiling", "9"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("UnsupportedDegree") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
    Outcome budget = run({"--max-squares", "3", "verify", "parity", "3", "2"});
    CHECK(budget.code == 2);
    CHECK(budget.err.find("BudgetExceeded") != std::string::npos);
}

TEST_CASE("cli verify counts reports matches") {
    Outcome r = run({"verify", "counts", "3", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("matches") != std::string::npos);
}

TEST_CASE("cli cylinders, points and orbits") {
    Outcome c = run({"cylinders", "5"});
    CHECK(c.code == 0);
    CHECK(c.out.find("7 cylinders") == 0);
    CHECK(c.out.find("total area 80") != std::string::npos);
    Outcome p = run({"points", "2", "3"});
    CHECK(p.out.find("16 primitive") == 0);
    Outcome o1 = run({"orbits", "2", "5"});
    Outcome o2 = run({"orbits", "2", "5", "--model", "points"});
    CHECK(o1.out.find("2 orbits") != std::string::npos);
    CHECK(o2.out.find("2 orbits") != std::string::npos);
}

TEST_CASE("cli act") {
    auto path = std::filesystem::temp_directory_path() / "squaretile_origami.json";
    auto elems = squaretile::enumerate(2, 3);
    std::ofstream(path) << squaretile::to_json(elems.front());
    Outcome r = run({"act", "RR", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find(squaretile::to_json(squaretile::canonical(elems.front()))) == 0);
    std::ofstream(path) << "{\"n_squares\": 2, \"h\": [1, 0], \"v\": [0, 1]}";
    CHECK(run({"act", "S", path.string()}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("cli trace and illuminate") {
    Outcome t = run({"trace", "2", "--from", "0,1/3,1/2", "--dir", "1", "2", "--length", "5"});
    CHECK(t.code == 0);
    CHECK(t.out.find("after length") != std::string::npos);
    Outcome s = run({"trace", "5", "--from", "5,0,0", "--dir", "1", "1"});
    CHECK(s.code == 2);
    CHECK(s.err.find("StartsAtSingularity") != std::string::npos);
    Outcome i = run({"illuminate", "3", "2", "--bound", "5"});
    CHECK(i.code == 0);
    CHECK(i.out.find("24 of 24 targets") != std::string::npos);
    Outcome ij = run({"--json", "--jobs", "2", "illuminate", "2", "2", "--bound", "3"});
    CHECK(ij.out.find("\"crossings\"") != std::string::npos);
    CHECK(run({"--json", "--jobs", "2", "illuminate", "2", "2", "--bound", "3"}).out == ij.out);
}
