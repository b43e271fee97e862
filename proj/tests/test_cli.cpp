#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CURVECOUNT_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "curvecount-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("count command") {
    auto one = run_cli("count --n 3 --d 1 --conds 3,3");
    CHECK(one.status == 0);
    CHECK(one.out == "1\n");

    auto conics = run_cli("count --n 3 --d 2 --conds 2,2,2,2,2,2,2,2");
    CHECK(conics.status == 0);
    CHECK(conics.out == "92\n");

    auto bad = run_cli("count --n 3 --d 2 --conds 2,2");
    CHECK(bad.status != 0);
    CHECK(bad.out.find("dimension mismatch: excess = 6") != std::string::npos);
}

TEST_CASE("genus command") {
    auto ruling = run_cli("genus --n 3 --d 1 --conds 2,2,2");
    CHECK(ruling.status == 0);
    auto j = nlohmann::json::parse(ruling.out);
    CHECK(j["deg_K"] == -2);
    CHECK(j["genus_if_connected"] == 0);
    CHECK(j["thickening"].is_array());

    auto pl = run_cli("genus --n 3 --d 1 --conds 3,2");
    CHECK(pl.status == 0);
    CHECK(nlohmann::json::parse(pl.out)["deg_K"] == -2);

    auto bad = run_cli("genus --n 3 --d 1 --conds 3,3");
    CHECK(bad.status != 0);
    CHECK(bad.out.find("dimension mismatch") != std::string::npos);
}

TEST_CASE("table command") {
    auto csv = run_cli("table --n 3 --d-max 1 --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.find("1,3;3,1") != std::string::npos);
    CHECK(csv.out.find("1,2;2;2;2,2") != std::string::npos);

    auto json_run = run_cli("table --n 3 --d-max 2 --format json");
    CHECK(json_run.status == 0);
    auto rows = nlohmann::json::parse(json_run.out);
    bool found = false;
    for (const auto& row : rows)
        if (row["d"] == 2 && row["conds"] == nlohmann::json::array({3, 3, 3, 2, 2}))
            found = (row["N"] == 1);
    CHECK(found);

    // byte-identical reruns
    CHECK(run_cli("table --n 3 --d-max 2 --format json").out == json_run.out);
    CHECK(run_cli("table --n 3 --d-max 1 --format csv").out == csv.out);

    auto refused = run_cli("table --n 7 --d-max 1 --format csv");
    CHECK(refused.status != 0);
    CHECK(refused.out.find("supported envelope") != std::string::npos);
}

TEST_CASE("cache warm and cold runs are byte-identical") {
    auto cache = temp_file("cli-cache.txt");
    std::filesystem::remove(cache);
    std::string cmd = "count --n 3 --d 2 --conds 3,3,3,2,2 --cache " + cache.string();
    auto cold = run_cli(cmd);
    CHECK(cold.status == 0);
    CHECK(cold.out == "1\n");
    REQUIRE(std::filesystem::exists(cache));
    auto warm = run_cli(cmd);
    CHECK(warm.status == 0);
    CHECK(warm.out == cold.out);

    // the cache file itself is deterministic across reruns
    std::ifstream in(cache);
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(contents.find("curvecount-cache v1\n") == 0);
    CHECK(contents.find("3 2 3,3,3,2,2 1\n") != std::string::npos);

    auto corrupt = temp_file("cli-cache-bad.txt");
    std::ofstream(corrupt) << "curvecount-cache v1\n3 1 3,3 -4\n";
    auto rejected = run_cli("count --n 3 --d 1 --conds 3,3 --cache " + corrupt.string());
    CHECK(rejected.status != 0);
    CHECK(rejected.out.find("cache line 2") != std::string::npos);
}

TEST_CASE("trace file") {
    auto trace = temp_file("cli-trace.json");
    std::filesystem::remove(trace);
    auto r = run_cli("count --n 3 --d 2 --conds 3,3,3,2,2 --trace " + trace.string());
    CHECK(r.status == 0);
    CHECK(r.out == "1\n");
    REQUIRE(std::filesystem::exists(trace));
    std::ifstream in(trace);
    auto j = nlohmann::json::parse(in);
    CHECK(j["key"] == "3 2 3,3,3,2,2");
    CHECK(j["rule"] == "eq9-shift");
    CHECK(j["value"] == "1");
}

TEST_CASE("selfcheck command") {
    auto ok = run_cli("selfcheck --n 3 --d-max 2");
    CHECK(ok.status == 0);
    CHECK(ok.out.find("pass") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    auto bad_n = run_cli("selfcheck --n 2 --d-max 1");
    CHECK(bad_n.status != 0);
    CHECK(bad_n.out.find("n >= 3") != std::string::npos);

    auto outside = run_cli("selfcheck --n 4 --d-max 3");
    CHECK(outside.status != 0);
    CHECK(outside.out.find("supported envelope") != std::string::npos);
}
