#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "flowfoot/generate.hpp"
#include "flowfoot/serialize.hpp"

using namespace flowfoot;

namespace {

constexpr int kExitTop = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FlowError(Errc::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Method parse_method(const std::string& s) {
    if (s == "naive") return Method::Naive;
    if (s == "dist") return Method::Dist;
    if (s == "new") return Method::New;
    throw CLI::ValidationError("--method", "expected naive|dist|new");
}

MonoidTag parse_monoid(const std::string& s) {
    if (s == "counting") return MonoidTag::Counting;
    if (s == "keyset") return MonoidTag::Keyset;
    if (s == "maxcap") return MonoidTag::MaxCap;
    throw CLI::ValidationError("--monoid", "expected counting|keyset|maxcap");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("FLOWFOOT_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

std::string show_nodes(const std::set<NodeId>& nodes) {
    std::string s = "{";
    for (NodeId n : nodes) s += (s.size() > 1 ? ", " : "") + std::to_string(n);
    return s + "}";
}

std::uint64_t median_micros(std::vector<std::uint64_t>& micros) {
    std::sort(micros.begin(), micros.end());
    return micros[micros.size() / 2];
}

int cmd_footprint(const std::string& input, const std::string& method_s, bool verify_oracle,
                  bool as_json) {
    Instance inst = parse_instance(read_file(input));
    Method method = parse_method(method_s);
    auto t0 = std::chrono::steady_clock::now();
    FootprintResult res = compute_footprint(inst.before, inst.after, method);
    auto t1 = std::chrono::steady_clock::now();
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();

    if (verify_oracle && !res.top) {
        if (!verify_footprint(inst.before, inst.after, res.nodes, VerifyMode::Oracle)) {
            std::cerr << "verification failed: computed set is not a footprint\n";
            return kExitError;
        }
    }

    if (as_json) {
        std::cout << footprint_json(res, micros);
    } else if (res.top) {
        std::cout << "TOP\n";
    } else {
        std::cout << "footprint: " << show_nodes(res.nodes) << "\n";
        std::cout << "trace:";
        for (const auto& z : res.trace) std::cout << " " << show_nodes(z);
        std::cout << "\nmethod: " << method_name(res.method) << "\nmicros: " << micros << "\n";
        if (verify_oracle) std::cout << "verified: oracle\n";
    }
    return res.top ? kExitTop : 0;
}

int cmd_laws(const std::string& monoid_s, int iters, std::uint64_t seed) {
    MonoidTag tag = parse_monoid(monoid_s);
    LawReport report = check_separation_laws(tag, iters, effective_seed(seed));
    const char* laws[] = {"unit", "commutativity", "associativity"};
    bool any_fail = false;
    for (const char* law : laws) {
        bool fail = false;
        for (const std::string& f : report.failures)
            if (f.rfind(law, 0) == 0) fail = true;
        std::cout << "LAW " << law << "-" << tag_name(tag) << (fail ? " FAIL" : " PASS") << "\n";
        any_fail = any_fail || fail;
    }
    for (const std::string& f : report.failures) std::cout << "  " << f << "\n";
    std::cout << "checked " << report.checked << " triples\n";
    return any_fail ? kExitError : 0;
}

int cmd_bench(int count, std::uint64_t seed, const std::string& methods_s,
              const std::string& csv_path, int reps, bool verify_oracle) {
    std::vector<Method> methods;
    std::stringstream ms(methods_s);
    for (std::string tok; std::getline(ms, tok, ',');) methods.push_back(parse_method(tok));
    if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");

    std::ofstream csv(csv_path);
    if (!csv) throw FlowError(Errc::BadParams, "cannot write " + csv_path);
    csv << "instance,method,footprint_size,micros,status\n";

    std::mt19937_64 rng(effective_seed(seed));
    const ListOp ops[] = {ListOp::Insert, ListOp::Mark, ListOp::Unlink};
    for (int i = 0; i < count; ++i) {
        std::size_t length = 2 + rng() % 7;
        Instance inst = gen_list_update(ops[i % 3], length, rng());
        for (Method m : methods) {
            std::string size = "", status = "ok";
            std::vector<std::uint64_t> micros;
            try {
                FootprintResult res{};
                for (int r = 0; r < reps; ++r) {
                    auto t0 = std::chrono::steady_clock::now();
                    res = compute_footprint(inst.before, inst.after, m);
                    auto t1 = std::chrono::steady_clock::now();
                    micros.push_back(
                        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
                }
                if (res.top) {
                    status = "top";
                } else {
                    size = std::to_string(res.nodes.size());
                    if (verify_oracle &&
                        !verify_footprint(inst.before, inst.after, res.nodes, VerifyMode::Oracle))
                        status = "verify-failed";
                }
            } catch (const FlowError& e) {
                status = errc_name(e.code());
            }
            csv << inst.label << "," << method_name(m) << "," << size << ","
                << (micros.empty() ? "" : std::to_string(median_micros(micros))) << "," << status
                << "\n";
        }
    }
    std::cout << "wrote " << csv_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flow graph footprint toolkit"};
    app.require_subcommand(1);

    auto* fp = app.add_subcommand("footprint", "compute the footprint of an instance");
    std::string input, method = "new", verify;
    bool as_json = false;
    fp->add_option("--input", input, "instance file")->required();
    fp->add_option("--method", method, "naive|dist|new");
    fp->add_option("--verify", verify, "oracle: re-check the result exhaustively")
        ->check(CLI::IsMember({"oracle"}));
    fp->add_flag("--json", as_json, "machine-readable output");

    auto* laws = app.add_subcommand("laws", "randomized separation-algebra law checks");
    std::string monoid = "keyset";
    int iters = 1000;
    std::uint64_t seed = 1;
    laws->add_option("--monoid", monoid, "counting|keyset|maxcap");
    laws->add_option("--iters", iters, "number of random triples");
    laws->add_option("--seed", seed, "rng seed (FLOWFOOT_SEED overrides)");

    auto* bench = app.add_subcommand("bench", "benchmark footprint methods");
    std::string suite = "list-updates", methods = "naive,dist,new", csv_path = "bench.csv";
    std::string bench_verify;
    int count = 100, reps = 100;
    std::uint64_t bseed = 1;
    bench->add_option("--suite", suite, "benchmark suite")
        ->check(CLI::IsMember({"list-updates"}));
    bench->add_option("--count", count, "number of instances");
    bench->add_option("--seed", bseed, "rng seed (FLOWFOOT_SEED overrides)");
    bench->add_option("--methods", methods, "comma-separated method list");
    bench->add_option("--csv", csv_path, "output CSV path");
    bench->add_option("--reps", reps, "repetitions per measurement (median reported)");
    bench->add_option("--verify", bench_verify, "oracle: re-check each footprint")
        ->check(CLI::IsMember({"oracle"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (fp->parsed()) return cmd_footprint(input, method, verify == "oracle", as_json);
        if (laws->parsed()) return cmd_laws(monoid, iters, seed);
        if (bench->parsed())
            return cmd_bench(count, bseed, methods, csv_path, reps, bench_verify == "oracle");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const FlowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
