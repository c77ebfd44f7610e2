#include "cmlat/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "cmlat/codes.hpp"

namespace cmlat {

bool ReproReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& reproduce_ids() {
    static const std::vector<std::string> ids{"l23", "l31", "l47", "l15w1", "l15w2"};
    return ids;
}

namespace {

std::string data_path(const char* name) {
    return std::string(CMLAT_DATA_DIR) + "/" + name;
}

void add(ReproReport& r, const std::string& name, const std::string& expected,
         const std::string& actual) {
    r.checks.push_back(CheckResult{name, expected, actual, expected == actual});
}

void add_bool(ReproReport& r, const std::string& name, bool actual) {
    add(r, name, "true", actual ? "true" : "false");
}

std::string show(const Rat& x) { return rat_str(x); }
std::string show(const Int& x) { return x.get_str(); }

std::string theta_count(const ThetaPrefix& th, const Rat& norm) {
    for (const auto& e : th.entries)
        if (e.first == norm) return e.second.get_str();
    return "0";
}

// image of an integral lattice mod N, as the span of its basis rows
LinearCode code_of(const ScaledLattice& lat, const Int& N) {
    if (lat.d != 1 || lat.scale2 != 1)
        throw std::invalid_argument("code_of: lattice not integral");
    return code_from_rows(lat.n, N, lat.basis);
}

void check_even_unimodular(ReproReport& rep, const std::string& tag,
                           const ScaledLattice& lat) {
    LatticeReport g = gram_report(lat);
    add_bool(rep, tag + "_integral", g.integral);
    add_bool(rep, tag + "_even", g.even);
    add(rep, tag + "_det", "1", show(g.det_gram));
}

void theorem_main_suite(ReproReport& rep, const ConfMatrix& w, const ScaledLattice& lp,
                        const std::vector<std::pair<std::string, QuadIdeal>>& ideals) {
    for (const auto& [name, ideal] : ideals) {
        rep.ideals.push_back(name + " = " + to_string(ideal));
        ScaledLattice il = ideal_times_lattice(ideal, lp, w);
        check_even_unimodular(rep, "L[" + name + "]", build_LI(ideal, lp, w));
        add(rep, "index_" + name, show(pow_int(ideal.norm(), (unsigned long)(lp.n / 2))),
            show(sublattice_index(lp, il)));
    }
}

ReproReport repro_l23(bool deep, const EnumOptions& opts) {
    ReproReport rep;
    rep.example_id = "l23";
    rep.l = 23;
    rep.matrix_source = "paley(23)";

    ConfMatrix w = paley(23);
    add_bool(rep, "conference_valid", is_skew_conference(w));
    ScaledLattice l0 = build_D(24);
    ScaledLattice lp = build_Lpm(w, +1);
    add_bool(rep, "omodule_L0", omodule_check(l0, w));
    add_bool(rep, "omodule_Lplus", omodule_check(lp, w));

    QuadIdeal O = unit_ideal(23);
    QuadIdeal P = two_adic_power(23, 1, +1).first;
    QuadIdeal Q = two_adic_power(23, 1, -1).first;
    QuadIdeal P2 = two_adic_power(23, 2, +1).first;
    QuadIdeal Q2 = two_adic_power(23, 2, -1).first;
    QuadIdeal Q3 = two_adic_power(23, 3, -1).first;
    QuadIdeal I3 = ideal_canonical(23, {from_int(23, 3), QuadInt(23, 1, 1)});
    theorem_main_suite(rep, w, lp,
                       {{"O", O},
                        {"P", P},
                        {"Q", Q},
                        {"P^2", P2},
                        {"Q^2", Q2},
                        {"Q^3", Q3},
                        {"I3", I3}});

    // binary Golay code out of Q L+
    ScaledLattice ql = ideal_times_lattice(Q, lp, w);
    LinearCode c1 = code_of(ql, 2);
    add_bool(rep, "golay_match", code_equal(c1, load_code(data_path("golay24.code"))));
    add_bool(rep, "golay_self_dual", self_dual_check(c1).self_dual);
    add(rep, "golay_min_distance", "8", std::to_string(min_distance(c1)));
    LinearCode g23 = delete_first(c1);
    add_bool(rep, "golay23_match", code_equal(g23, load_code(data_path("golay23.code"))));
    add(rep, "golay23_min_distance", "7", std::to_string(min_distance(g23)));

    // lifted quadratic residue codes, r = 1, 2, 3
    for (int r = 1; r <= 3; ++r) {
        auto [qr, t] = two_adic_power(23, r, -1);
        Int N = pow_int(Int(2), (unsigned long)r);
        LinearCode cr = code_of(ideal_times_lattice(qr, lp, w), N);
        add_bool(rep, "C" + std::to_string(r) + "_self_dual", self_dual_check(cr).self_dual);
        LinearCode lifted = lifted_qr_code(23, r, +1);
        add_bool(rep, "qr_delete_r" + std::to_string(r),
                 code_equal(delete_first(cr), lifted));
        add_bool(rep, "qr_extend_r" + std::to_string(r),
                 code_equal(extend_orthogonal(lifted, t), cr));
    }

    // construction B and density doubling against P L+
    ScaledLattice pl = ideal_times_lattice(P, lp, w);
    LinearCode dcode = extend_orthogonal(lifted_qr_code(23, 1, -1), 1);
    ScaledLattice bd = construction_B(dcode);
    ScaledLattice plz = intersect_integer(pl);
    add_bool(rep, "construction_B_match", lattice_equal(bd, plz));
    add(rep, "construction_B_index", show(pow_int(Int(2), 13)),
        show(sublattice_index(make_lattice(IntMat::identity(24), 1, Rat(1)), bd)));
    add(rep, "PL_over_PLcapZ_index", "2", show(sublattice_index(pl, plz)));
    IntMat glue(1, 24);
    glue(0, 0) = -11;
    for (int j = 1; j < 24; ++j) glue(0, j) = 1;
    add_bool(rep, "density_double_match", lattice_equal(density_double(bd, glue, 2), pl));

    // ternary structure
    TernaryQRReport tq = ternary_qr_checks(23);
    add_bool(rep, "ternary_self_dual", tq.code_self_dual);
    add_bool(rep, "ternary_qi_ideal", tq.qi_ideal_ok);
    add_bool(rep, "ternary_j_lattice", tq.j_lattice_ok);
    add_bool(rep, "ternary_qi_lattice", tq.qi_lattice_ok);
    check_even_unimodular(rep, "L[J]", tq.lat_J);
    check_even_unimodular(rep, "L[QI]", tq.lat_QI);

    add_bool(rep, "witness_P_Q2", isometry_witness(P, Q2, lp, w).verified);
    add(rep, "class_number", "3", std::to_string(class_number(23)));

    // enumeration certificates
    ScaledLattice LQ = build_LI(Q, lp, w);
    add(rep, "niemeier_root_count", "48", theta_count(enumerate_short(LQ, 2, opts), 2));
    ScaledLattice LP = build_LI(P, lp, w);
    MinNorm mn = min_norm(LP, 4, opts);
    add(rep, "leech_min_norm", "4", mn.exceeded ? ">4" : show(mn.value));
    MinNorm mnj = min_norm(tq.lat_J, 4, opts);
    add(rep, "LJ_min_norm", "4", mnj.exceeded ? ">4" : show(mnj.value));
    MinNorm mnqi = min_norm(tq.lat_QI, 4, opts);
    add(rep, "LQI_min_norm", "4", mnqi.exceeded ? ">4" : show(mnqi.value));
    if (deep) {
        ThetaPrefix kiss = enumerate_short(LP, 4, opts);
        add(rep, "leech_norm2_count", "0", theta_count(kiss, 2));
        add(rep, "leech_kissing", "196560", theta_count(kiss, 4));
    }
    return rep;
}

ReproReport repro_l31(const EnumOptions&) {
    ReproReport rep;
    rep.example_id = "l31";
    rep.l = 31;
    rep.matrix_source = "paley(31)";

    ConfMatrix w = paley(31);
    add_bool(rep, "conference_valid", is_skew_conference(w));
    ScaledLattice lp = build_Lpm(w, +1);
    add_bool(rep, "omodule_L0", omodule_check(build_D(32), w));
    add_bool(rep, "omodule_Lplus", omodule_check(lp, w));

    QuadIdeal P = two_adic_power(31, 1, +1).first;
    QuadIdeal Q2 = two_adic_power(31, 2, -1).first;
    // 3 is inert in this ring, so the odd-prime slot uses a norm-5 ideal
    QuadIdeal A5 = ideal_canonical(31, {from_int(31, 5), QuadInt(31, 3, 1)});
    theorem_main_suite(rep, w, lp,
                       {{"O", unit_ideal(31)},
                        {"P", P},
                        {"Q", two_adic_power(31, 1, -1).first},
                        {"P^2", two_adic_power(31, 2, +1).first},
                        {"Q^2", Q2},
                        {"Q^3", two_adic_power(31, 3, -1).first},
                        {"A5", A5}});

    add_bool(rep, "witness_P_Q2", isometry_witness(P, Q2, lp, w).verified);
    add(rep, "class_number", "3", std::to_string(class_number(31)));
    return rep;
}

// the rank-48 lattice assembled from the three explicit generator families
ScaledLattice lambda_prime(const ConfMatrix& w) {
    const int n = w.n;  // 48
    const long l = 47;
    std::vector<long> nonres;
    for (long q = 1; q < l; ++q)
        if (legendre(q, l) == -1) nonres.push_back(q);
    IntMat m(1 + int(l) + n * (n - 1), n);
    m(0, 0) = 5;
    for (int j = 1; j < n; ++j) m(0, j) = 1;
    int r = 1;
    for (long c = 0; c < l; ++c) {
        m(r, 1 + int(c)) = 2;
        for (long q : nonres) m(r, 1 + int((c + q) % l)) = 2;
        ++r;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(r, i) = 6;
            m(r, j) = 6;
            ++r;
            m(r, i) = 6;
            m(r, j) = -6;
            ++r;
        }
    return make_lattice(m, 2, Rat(1, 3));
}

ReproReport repro_l47(bool deep, const EnumOptions& opts) {
    ReproReport rep;
    rep.example_id = "l47";
    rep.l = 47;
    rep.matrix_source = "paley(47)";

    ConfMatrix w = paley(47);
    add_bool(rep, "conference_valid", is_skew_conference(w));
    ScaledLattice lp = build_Lpm(w, +1);
    add_bool(rep, "omodule_L0", omodule_check(build_D(48), w));
    add_bool(rep, "omodule_Lplus", omodule_check(lp, w));

    QuadIdeal Q2 = two_adic_power(47, 2, -1).first;
    QuadIdeal I3 = ideal_canonical(47, {from_int(47, 3), QuadInt(47, 1, -1)});
    theorem_main_suite(rep, w, lp,
                       {{"O", unit_ideal(47)},
                        {"P", two_adic_power(47, 1, +1).first},
                        {"Q", two_adic_power(47, 1, -1).first},
                        {"P^2", two_adic_power(47, 2, +1).first},
                        {"Q^2", Q2},
                        {"Q^3", two_adic_power(47, 3, -1).first},
                        {"I3", I3}});

    ScaledLattice L3 = build_LI(I3, lp, w);
    add_bool(rep, "lambda_prime_match", lattice_equal(lambda_prime(w), L3));
    add_bool(rep, "factor_Q2_I3",
             principal_ideal(QuadInt(47, 1, -1)) == ideal_mul(Q2, I3));
    add(rep, "class_number", "5", std::to_string(class_number(47)));
    add_bool(rep, "ternary_self_dual", ternary_qr_checks(47).code_self_dual);

    // 3 e_1 + 3 e_2 lies in the lattice and has norm 18/3 = 6
    std::vector<Int> six(size_t(48), Int(0));
    six[0] = 3;
    six[1] = 3;
    add_bool(rep, "norm6_vector_present", lattice_contains(L3, six, 1));
    if (deep) {
        MinNorm mn = min_norm(L3, 4, opts);
        add_bool(rep, "no_vectors_below_6", mn.exceeded);
        add(rep, "p48q_min_norm", "6", mn.exceeded ? "6" : show(mn.value));
    }
    return rep;
}

ReproReport repro_l15(const std::string& id, const EnumOptions& opts) {
    const bool first = id == "l15w1";
    ReproReport rep;
    rep.example_id = id;
    rep.l = 15;
    rep.matrix_source = first ? "builtin W1" : "builtin W2";

    ConfMatrix w = builtin(first ? "W1" : "W2");
    add_bool(rep, "conference_valid", is_skew_conference(w));
    if (first) {
        ConfMatrix d;
        d.n = 1;
        d.e = {0};
        for (int i = 0; i < 4; ++i) d = doubled(d);
        add_bool(rep, "doubling_tower", d.n == w.n && d.e == w.e);
    }
    ScaledLattice lp = build_Lpm(w, +1);
    add_bool(rep, "omodule_L0", omodule_check(build_D(16), w));
    add_bool(rep, "omodule_Lplus", omodule_check(lp, w));

    QuadIdeal Q = two_adic_power(15, 1, -1).first;
    rep.ideals.push_back("Q = " + to_string(Q));
    ScaledLattice ql = ideal_times_lattice(Q, lp, w);
    ScaledLattice LQ = build_LI(Q, lp, w);
    check_even_unimodular(rep, "L[Q]", LQ);
    add(rep, "index_Q", show(pow_int(Q.norm(), 8)), show(sublattice_index(lp, ql)));

    LinearCode c = code_of(ql, 2);
    add_bool(rep, "code_match",
             code_equal(c, load_code(data_path(first ? "l15_code1.code" : "l15_code2.code"))));
    add_bool(rep, "code_self_dual", self_dual_check(c).self_dual);

    auto [rank, det] = root_sublattice_det(LQ, opts);
    add(rep, "root_rank", "16", std::to_string(rank));
    add(rep, "root_det", first ? "1" : "4", show(det));
    add(rep, "class_number", "2", std::to_string(class_number(15)));
    return rep;
}

}  // namespace

ReproReport run_reproduce(const std::string& id, bool deep, const EnumOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    ReproReport rep;
    if (id == "l23")
        rep = repro_l23(deep, opts);
    else if (id == "l31")
        rep = repro_l31(opts);
    else if (id == "l47")
        rep = repro_l47(deep, opts);
    else if (id == "l15w1" || id == "l15w2")
        rep = repro_l15(id, opts);
    else
        throw std::invalid_argument("unknown example id: " + id);
    rep.deep = deep;
    rep.runtime_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
    return rep;
}

std::string report_json(const ReproReport& rep) {
    nlohmann::ordered_json j;
    j["example_id"] = rep.example_id;
    j["inputs"] = {{"l", rep.l}, {"matrix", rep.matrix_source}, {"ideals", rep.ideals}};
    j["deep"] = rep.deep;
    auto arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : rep.checks)
        arr.push_back({{"name", c.name},
                       {"expected", c.expected},
                       {"actual", c.actual},
                       {"pass", c.pass}});
    j["checks"] = arr;
    j["pass"] = rep.pass();
    j["runtime_ms"] = rep.runtime_ms;
    return j.dump(2) + "\n";
}

bool report_matches(const std::string& json_a, const std::string& json_b) {
    nlohmann::json a = nlohmann::json::parse(json_a);
    nlohmann::json b = nlohmann::json::parse(json_b);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    return a == b;
}

}  // namespace cmlat
