// Command line front end: build and certify lattices from conference
// matrices and quadratic ideals, rerun the worked examples, and recheck
// dumped lattices.  Exit codes: 0 success, 1 certification failure,
// 2 usage or input error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmlat/codes.hpp"
#include "cmlat/reproduce.hpp"

namespace {

using namespace cmlat;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    bool deep = false;
    int threads = 1;
    std::uint64_t budget = 1000000000ULL;
    std::string out_dir = ".";

    EnumOptions enum_opts() const {
        EnumOptions o;
        o.threads = threads;
        o.node_budget = budget;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_flag("--deep", c.deep, "run the long enumerations (full theta prefix)");
    cmd->add_option("--threads", c.threads, "enumeration worker threads")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--budget", c.budget, "enumeration node budget");
    cmd->add_option("--out", c.out_dir, "output directory");
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Certification pass shared by build and verify.  Shallow runs prove
// min norm <= 4 facts only up to rank 24; deep always enumerates to 4.
void certify(LatticeReport& rep, const ScaledLattice& lat, bool deep,
             const EnumOptions& opts, bool* budget_hit) {
    *budget_hit = false;
    try {
        if (deep) {
            ThetaPrefix th = enumerate_short(lat, 4, opts);
            rep.theta_prefix = th.entries;
            if (th.entries.empty()) {
                rep.min_norm_cap = 4;
            } else {
                rep.min_norm = th.entries.front().first;
            }
        } else if (lat.n <= 24) {
            MinNorm mn = min_norm(lat, 4, opts);
            if (mn.exceeded)
                rep.min_norm_cap = 4;
            else
                rep.min_norm = mn.value;
        }
    } catch (const budget_exhausted_error&) {
        *budget_hit = true;
    }
}

ordered_json report_to_json(const LatticeReport& rep) {
    ordered_json j;
    j["integral"] = rep.integral;
    j["even"] = rep.even;
    j["det_gram"] = rat_str(rep.det_gram);
    j["unimodular"] = rep.unimodular;
    if (rep.min_norm)
        j["min_norm"] = rat_str(*rep.min_norm);
    else
        j["min_norm"] = nullptr;
    if (rep.min_norm_cap) j["min_norm_exceeds"] = rat_str(*rep.min_norm_cap);
    if (!rep.theta_prefix.empty()) {
        auto arr = ordered_json::array();
        for (const auto& [norm, count] : rep.theta_prefix)
            arr.push_back({rat_str(norm), count.get_str()});
        j["theta"] = arr;
    }
    return j;
}

int cmd_build(long l, const std::string& matrix, const std::string& ideal_spec,
              const std::string& sign, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    ConfMatrix w;
    std::string matrix_desc;
    if (!matrix.empty() && l != 0) {
        std::cerr << "build: give either --l or --matrix, not both\n";
        return kExitUsage;
    }
    if (matrix.empty() && l == 0) {
        std::cerr << "build: need --l or --matrix\n";
        return kExitUsage;
    }
    if (!matrix.empty()) {
        if (matrix == "W1" || matrix == "W2") {
            w = builtin(matrix);
            matrix_desc = "builtin " + matrix;
        } else {
            w = load_cm(matrix);
            matrix_desc = matrix;
        }
    } else {
        w = paley(l);
        matrix_desc = "paley(" + std::to_string(l) + ")";
    }
    const long ring_l = w.n - 1;

    QuadIdeal ideal = parse_ideal(ring_l, ideal_spec);
    bool module_guaranteed = false;
    ScaledLattice lp = build_Lpm(w, sign == "-" ? -1 : +1, &module_guaranteed);
    ScaledLattice li = build_LI(ideal, lp, w);

    LatticeReport rep = gram_report(li);
    bool budget_hit = false;
    certify(rep, li, c.deep, c.enum_opts(), &budget_hit);

    ordered_json j;
    j["l"] = ring_l;
    j["matrix"] = matrix_desc;
    j["ideal"] = to_string(ideal);
    j["sign"] = sign;
    j["n"] = li.n;
    j["module_guaranteed"] = module_guaranteed;
    ordered_json cert = report_to_json(rep);
    for (auto& [key, val] : cert.items()) j[key] = val;
    if (budget_hit) j["budget_exhausted"] = true;
    j["runtime_ms"] = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count());

    write_file(c.out_dir, "lattice.txt", dump_lattice(li));
    write_file(c.out_dir, "report.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << '\n';

    bool ok = rep.integral && rep.even && rep.unimodular && !budget_hit;
    return ok ? kExitPass : kExitCertFail;
}

int cmd_reproduce(const std::string& id, const CommonOpts& c) {
    ReproReport rep = run_reproduce(id, c.deep, c.enum_opts());
    write_file(c.out_dir, id + ".json", report_json(rep));
    for (const CheckResult& chk : rep.checks) {
        if (chk.pass)
            std::cout << "pass  " << chk.name << " = " << chk.actual << '\n';
        else
            std::cout << "FAIL  " << chk.name << ": expected " << chk.expected << ", got "
                      << chk.actual << '\n';
    }
    std::cout << (rep.pass() ? "all checks passed" : "CHECKS FAILED") << " ("
              << rep.runtime_ms << " ms)\n";
    return rep.pass() ? kExitPass : kExitCertFail;
}

int cmd_verify(const std::string& path, const CommonOpts& c) {
    ScaledLattice lat = load_lattice(path);
    LatticeReport rep = gram_report(lat);
    bool budget_hit = false;
    certify(rep, lat, c.deep, c.enum_opts(), &budget_hit);
    ordered_json j = report_to_json(rep);
    j["n"] = lat.n;
    if (budget_hit) j["budget_exhausted"] = true;
    std::cout << j.dump(2) << '\n';
    bool ok = rep.integral && rep.even && rep.unimodular && !budget_hit;
    return ok ? kExitPass : kExitCertFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unimodular lattices from skew conference matrices and quadratic ideals"};
    app.require_subcommand(1);

    long l = 0;
    std::string matrix, ideal_spec = "O", sign = "+";
    CommonOpts bopts;
    CLI::App* build = app.add_subcommand("build", "construct L[I] and certify it");
    build->add_option("--l", l, "use the Paley matrix for this prime (l = 3 mod 4)");
    build->add_option("--matrix", matrix, "conference matrix: W1, W2, or a file path");
    build->add_option("--ideal", ideal_spec,
                      "ideal: O, P, Q, P^r, Q^r, or \"<g>,<a>/2+<b>/2w\"");
    build->add_option("--sign", sign, "glue sign for L+/L-")
        ->check(CLI::IsMember({"+", "-"}));
    add_common(build, bopts);

    std::string repro_id;
    CommonOpts ropts;
    CLI::App* repro = app.add_subcommand("reproduce", "rerun a worked example suite");
    repro->add_option("id", repro_id, "one of: l23 l31 l47 l15w1 l15w2")->required();
    add_common(repro, ropts);

    std::string verify_path;
    CommonOpts vopts;
    CLI::App* verify = app.add_subcommand("verify", "recertify a dumped lattice");
    verify->add_option("dump", verify_path, "lattice dump file")->required();
    add_common(verify, vopts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(l, matrix, ideal_spec, sign, bopts);
        if (repro->parsed()) return cmd_reproduce(repro_id, ropts);
        if (verify->parsed()) return cmd_verify(verify_path, vopts);
    } catch (const budget_exhausted_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCertFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
