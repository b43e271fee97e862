// curvecount: exact counts and genus data for rational curves in P^n
// meeting generic linear subspaces.
//
//   curvecount count     --n 3 --d 2 --conds 2,2,2,2,2,2,2,2
//   curvecount genus     --n 3 --d 1 --conds 2,2,2
//   curvecount table     --n 3 --d-max 2 --format csv
//   curvecount selfcheck --n 3 --d-max 2
//
// All arithmetic is exact; identical invocations produce byte-identical
// output, with or without a warm cache.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvecount/cache_io.hpp"
#include "curvecount/degrees.hpp"
#include "curvecount/enumerate.hpp"
#include "curvecount/genera.hpp"
#include "curvecount/selfcheck.hpp"
#include "curvecount/trace.hpp"

namespace {

using namespace curvecount;

std::vector<int> parse_conds(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t pos = 0;
            int a = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(a);
        } catch (const std::exception&) {
            throw InvalidInput("bad condition codimension '" + tok + "'");
        }
    }
    if (out.empty()) throw InvalidInput("--conds must list at least one codimension");
    return out;
}

void load_cache_file(CountEngine& engine, const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // absent cache: cold start
    load_cache(engine.memo(), in);
}

void save_cache_file(const CountEngine& engine, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write cache file '" + path + "'");
    save_cache(engine.memo(), out);
}

void write_trace_file(const TraceNode& root, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write trace file '" + path + "'");
    out << trace_to_json(root).dump(2) << '\n';
}

/// JSON scalar for a count: plain number when it fits 64 bits, else a
/// decimal string.
nlohmann::ordered_json count_json(const Count& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return nlohmann::ordered_json(static_cast<std::int64_t>(v));
    return nlohmann::ordered_json(to_string(v));
}

// A traced run recomputes from scratch so the tree is complete; the cache
// file is still merged and updated afterwards.
void update_cache(const CountEngine& engine, const std::string& cache_path, bool trace_mode) {
    if (cache_path.empty()) return;
    if (!trace_mode) {
        save_cache_file(engine, cache_path);
        return;
    }
    CountEngine disk;
    load_cache_file(disk, cache_path);
    disk.memo().merge_from(engine.memo());
    save_cache_file(disk, cache_path);
}

int cmd_count(int n, int d, const std::string& conds, const std::string& cache_path,
              const std::string& trace_path) {
    Problem p(n, d, parse_conds(conds));
    CountEngine engine;
    const bool trace_mode = !trace_path.empty();
    if (!cache_path.empty() && !trace_mode) load_cache_file(engine, cache_path);
    Count value;
    if (trace_mode) {
        TraceBuilder tr;
        auto [v, node] = engine.degree_count_traced(p, tr);
        value = v;
        write_trace_file(*node, trace_path);
    } else {
        value = engine.degree_count(p);
    }
    update_cache(engine, cache_path, trace_mode);
    std::cout << to_string(value) << '\n';
    return 0;
}

int cmd_genus(int n, int d, const std::string& conds, const std::string& cache_path,
              const std::string& trace_path) {
    Problem p(n, d, parse_conds(conds));
    CountEngine engine;
    const bool trace_mode = !trace_path.empty();
    if (!cache_path.empty() && !trace_mode) load_cache_file(engine, cache_path);
    GenusReport report;
    if (trace_mode) {
        TraceBuilder tr;
        TracePtr node;
        ThickeningSpec t = choose_thickening(engine, p);
        Count deg_k = canonical_degree(engine, p, t, 0, &tr, &node);
        report = {deg_k, Count(1) + halve_exact(deg_k, "genus: deg K_B is odd"), t};
        write_trace_file(*node, trace_path);
    } else {
        report = genus_report(engine, p);
    }
    update_cache(engine, cache_path, trace_mode);

    nlohmann::ordered_json j;
    j["deg_K"] = count_json(report.deg_K);
    j["genus_if_connected"] = count_json(report.genus_if_connected);
    auto& th = j["thickening"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.conds.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["codim"] = p.conds.at(i);
        if (i < report.thickening_used.ell())
            entry["thickened_codim"] = report.thickening_used.plus_codims[i];
        else
            entry["dropped"] = true;
        th.push_back(std::move(entry));
    }
    std::cout << j.dump() << '\n';
    return 0;
}

bool table_envelope_ok(int n, int d_max, std::string* why) {
    if (n < 3 || n > 6 || d_max < 1 || (n + 1) * d_max + n - 3 > 16) {
        if (why)
            *why = "supported envelope: 3 <= n <= 6 with (n+1)*d_max + n - 3 <= 16 "
                   "(n=3: d_max<=4, n=4: d_max<=3, n=5 or 6: d_max<=2)";
        return false;
    }
    return true;
}

int cmd_table(int n, int d_max, const std::string& format) {
    std::string why;
    if (!table_envelope_ok(n, d_max, &why)) throw InvalidInput(why);
    if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
    CountEngine engine;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int d = 1; d <= d_max; ++d) {
        for (const auto& p : excess0_problems(n, d)) {
            Count value = engine.degree_count(p);
            if (format == "csv") {
                std::cout << d << ',' << p.conds.str(';') << ',' << to_string(value) << '\n';
            } else {
                nlohmann::ordered_json row;
                row["d"] = d;
                row["conds"] = p.conds.codims();
                row["N"] = count_json(value);
                rows.push_back(std::move(row));
            }
        }
    }
    if (format == "json") std::cout << rows.dump(1) << '\n';
    return 0;
}

int cmd_selfcheck(int n, int d_max) {
    auto results = run_selfcheck(n, d_max);
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.ok ? "pass" : "FAIL") << "  " << r.name << "  (" << r.checks << " checks";
        if (!r.ok) std::cout << ", first failure at: " << r.failure;
        std::cout << ")\n";
        all_ok = all_ok && r.ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact curve counts in projective space"};
    app.require_subcommand(1);

    int n = 0, d = 0, d_max = 0;
    std::string conds, cache_path, trace_path, format = "csv";

    auto* count = app.add_subcommand("count", "one Schubert degree N_{d,n}(a_1,...,a_k)");
    count->add_option("--n", n, "ambient projective dimension (n >= 3)")->required();
    count->add_option("--d", d, "curve degree (d >= 1)")->required();
    count->add_option("--conds", conds, "comma-separated condition codimensions")->required();
    count->add_option("--cache", cache_path, "persistent result cache file");
    count->add_option("--trace", trace_path, "write the derivation tree as JSON");

    auto* genus = app.add_subcommand("genus", "deg K_B of a one-dimensional family");
    genus->add_option("--n", n, "ambient projective dimension (n >= 3)")->required();
    genus->add_option("--d", d, "curve degree (d >= 1)")->required();
    genus->add_option("--conds", conds, "comma-separated condition codimensions")->required();
    genus->add_option("--cache", cache_path, "persistent result cache file");
    genus->add_option("--trace", trace_path, "write the derivation tree as JSON");

    auto* table = app.add_subcommand("table", "all finite counts up to a degree bound");
    table->add_option("--n", n, "ambient projective dimension (n >= 3)")->required();
    table->add_option("--d-max", d_max, "largest degree to tabulate")->required();
    table->add_option("--format", format, "csv or json");

    auto* selfcheck = app.add_subcommand("selfcheck", "run the identity and oracle suites");
    selfcheck->add_option("--n", n, "ambient projective dimension (n >= 3)")->required();
    selfcheck->add_option("--d-max", d_max, "largest degree to sweep")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) return cmd_count(n, d, conds, cache_path, trace_path);
        if (genus->parsed()) return cmd_genus(n, d, conds, cache_path, trace_path);
        if (table->parsed()) return cmd_table(n, d_max, format);
        if (selfcheck->parsed()) return cmd_selfcheck(n, d_max);
    } catch (const curvecount::DimensionMismatch& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
