#include "uqsl3/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "uqsl3/tensorcheck.hpp"

namespace uqsl3 {

namespace {

// --- tiny TOML subset ---------------------------------------------------------

struct TomlValue {
    enum Kind { Number, String, Bool, Array } kind = Number;
    double num = 0.0;
    std::string str;
    bool b = false;
    std::vector<TomlValue> arr;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

TomlValue parse_value(const std::string& raw);

TomlValue parse_array(const std::string& raw) {
    TomlValue v;
    v.kind = TomlValue::Array;
    int depth = 0;
    std::string cur;
    for (size_t i = 1; i + 1 <= raw.size(); ++i) {
        const char c = raw[i];
        if (i == raw.size() - 1 && c == ']') {
            if (!trim(cur).empty()) v.arr.push_back(parse_value(trim(cur)));
            return v;
        }
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            v.arr.push_back(parse_value(trim(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    throw DomainError("config: unterminated array: " + raw);
}

TomlValue parse_value(const std::string& raw) {
    TomlValue v;
    if (raw.empty()) throw DomainError("config: empty value");
    if (raw.front() == '[') return parse_array(raw);
    if (raw.front() == '"') {
        v.kind = TomlValue::String;
        const size_t end = raw.find('"', 1);
        if (end == std::string::npos) throw DomainError("config: unterminated string");
        v.str = raw.substr(1, end - 1);
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.kind = TomlValue::Bool;
        v.b = raw == "true";
        return v;
    }
    v.kind = TomlValue::Number;
    size_t pos = 0;
    v.num = std::stod(raw, &pos);
    return v;
}

using TomlTable = std::map<std::string, TomlValue>;

std::map<std::string, TomlTable> parse_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    std::map<std::string, TomlTable> doc;
    std::string section = "";
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            const size_t end = line.find(']');
            if (end == std::string::npos) throw DomainError("config: bad section header");
            section = trim(line.substr(1, end - 1));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config: expected key = value: " + line);
        doc[section][trim(line.substr(0, eq))] = parse_value(trim(line.substr(eq + 1)));
    }
    return doc;
}

cplx as_complex(const TomlValue& v) {
    if (v.kind == TomlValue::Number) return cplx(v.num, 0.0);
    if (v.kind == TomlValue::Array && v.arr.size() == 2)
        return cplx(v.arr[0].num, v.arr[1].num);
    throw DomainError("config: expected number or [re, im] pair");
}

}  // namespace

void RunConfig::validate() const {
    if (n < 1) throw DomainError("config: n must be >= 1");
    if (zeta_grid.empty()) throw DomainError("config: zeta_grid must be nonempty");
    static const std::vector<std::string> valid{"core",   "fock",    "reps",    "lops", "chain",
                                                "transfer", "tensorB", "tensorC", "all"};
    for (const auto& s : suites)
        if (std::find(valid.begin(), valid.end(), s) == valid.end())
            throw DomainError("config: unknown suite label '" + s + "'");
}

std::vector<SpectralPoint> RunConfig::make_eta() const {
    std::vector<SpectralPoint> eta(n, SpectralPoint(cplx(0.0, 0.0)));
    if (eta_mode == "random") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
        for (auto& e : eta) e = SpectralPoint(cplx(std::log(0.9), unif(rng)));
    } else if (eta_mode != "homogeneous") {
        throw DomainError("config: eta_mode must be homogeneous or random");
    }
    return eta;
}

RunConfig load_config(const std::string& path) {
    auto doc = parse_toml(path);
    RunConfig cfg;
    const TomlTable& p = doc["params"];
    auto get = [&](const TomlTable& t, const std::string& key) -> const TomlValue& {
        auto it = t.find(key);
        if (it == t.end()) throw DomainError("config: missing key '" + key + "'");
        return it->second;
    };
    const cplx hbar = as_complex(get(p, "hbar"));
    const TomlValue& sv = get(p, "s");
    if (sv.kind != TomlValue::Array || sv.arr.size() != 3)
        throw DomainError("config: s must be a triple");
    std::array<int, 3> s{static_cast<int>(sv.arr[0].num), static_cast<int>(sv.arr[1].num),
                         static_cast<int>(sv.arr[2].num)};
    const TomlValue& phv = get(p, "phi");
    if (phv.kind != TomlValue::Array || phv.arr.size() < 2)
        throw DomainError("config: phi needs at least two components (third is derived)");
    const cplx phi0 = as_complex(phv.arr[0]), phi1 = as_complex(phv.arr[1]);
    const int cutoff = static_cast<int>(get(p, "cutoff").num);
    const double tol = get(p, "tol").num;
    int series_terms = 120;
    if (p.count("series_terms")) series_terms = static_cast<int>(p.at("series_terms").num);
    cfg.params = Params(hbar, s, phi0, phi1, cutoff, tol, series_terms);

    const TomlTable& r = doc["run"];
    if (r.count("n")) cfg.n = static_cast<int>(r.at("n").num);
    if (r.count("eta_mode")) cfg.eta_mode = r.at("eta_mode").str;
    if (r.count("seed")) cfg.seed = static_cast<uint64_t>(r.at("seed").num);
    if (r.count("suites")) {
        cfg.suites.clear();
        for (const auto& sv2 : r.at("suites").arr) cfg.suites.push_back(sv2.str);
    }
    if (r.count("zeta_grid")) {
        for (const auto& zv : r.at("zeta_grid").arr) cfg.zeta_grid.push_back(as_complex(zv));
    }
    if (cfg.zeta_grid.empty()) cfg.zeta_grid.push_back(cplx(std::log(0.3), 0.2));
    if (r.count("out")) cfg.output_path = r.at("out").str;
    cfg.validate();
    return cfg;
}

int worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 2;
    if (const char* env = std::getenv("UQSL3_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && static_cast<unsigned>(cap) < hw) hw = cap;
    }
    return static_cast<int>(hw);
}

namespace {

void append_skip(std::vector<RelationReport>& out, const std::string& id, const std::string& why,
                 const std::string& digest) {
    RelationReport r;
    r.relation_id = id;
    r.params_digest = digest;
    r.skipped = true;
    r.note = why;
    out.push_back(r);
}

std::vector<RelationReport> suite_core(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    const Params& P = cfg.params;
    const cplx q = P.q();
    std::ostringstream dg;
    dg << "core q=" << q;
    // f3 defining relation on a grid |z| <= 0.5
    double worst = 0.0, worst_tail = 0.0;
    for (double r : {0.1, 0.3, 0.5})
        for (double th : {0.0, 1.3, 2.7, 4.1}) {
            const cplx z = r * std::exp(cplx(0.0, th));
            F3Result a = f3_eval(q * q * z, q, P.series_terms);
            F3Result b = f3_eval(z, q, P.series_terms);
            F3Result c = f3_eval(z / (q * q), q, P.series_terms);
            const cplx resid = a.value + b.value + c.value + std::log(1.0 - z);
            worst = std::max(worst, std::abs(resid));
            worst_tail = std::max(worst_tail, a.tail + b.tail + c.tail);
        }
    out.push_back(make_report("core.f3_relation", worst, worst_tail,
                              std::max(P.tol, 10.0 * worst_tail), dg.str()));
    // r_s^s = -1
    const cplx rss = std::pow(P.r_s(), static_cast<double>(P.s()));
    out.push_back(make_report("core.rs_root", std::abs(rss + 1.0), 0.0, 1e-12, dg.str()));
    // Phi_1 + Phi_2 + Phi_3 = 0
    out.push_back(make_report("core.phi_sum", std::abs(P.Phi(1) + P.Phi(2) + P.Phi(3)), 0.0,
                              1e-14, dg.str()));
    // [nu]_q antisymmetry at a few points
    double anti = 0.0;
    for (cplx nu : {cplx(0.7, 0.2), cplx(-1.3, 0.5), cplx(2.0, -0.8)})
        anti = std::max(anti, std::abs(q_number(nu, q) + q_number(-nu, q)));
    out.push_back(make_report("core.qnumber_antisym", anti, 0.0, 1e-12, dg.str()));
    return out;
}

std::vector<RelationReport> suite_fock(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    const Params& P = cfg.params;
    const cplx q = P.q();
    const int D = P.cutoff;
    std::ostringstream dg;
    dg << "fock D=" << D;

    OscTriple plus = chi_plus_ops(D, 1.0, q);
    Mat nq = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) nq(n, n) = q_number(n, q);
    // b^dag b = [N]_q exactly
    out.push_back(make_report("fock.bdag_b", (plus.bdag * plus.b - nq).norm(), 0.0, 1e-12,
                              dg.str()));
    // b b^dag = [N+1]_q with the top corner masked
    Mat bb = plus.b * plus.bdag;
    Mat n1q = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) n1q(n, n) = q_number(n + 1, q);
    bb(D - 1, D - 1) = n1q(D - 1, D - 1);
    out.push_back(make_report("fock.b_bdag", (bb - n1q).norm(), 0.0, 1e-12, dg.str()));
    // weight relations
    const cplx nu(0.37, 0.11);
    OscTriple wq = chi_plus_ops(D, nu, q);
    Mat lhs = wq.qN * plus.bdag * wq.qN.inverse() - std::pow(q, nu) * plus.bdag;
    out.push_back(make_report("fock.weight_bdag", lhs.norm(), 0.0, 1e-12, dg.str()));
    // chi^- defining relation
    OscTriple minus = chi_minus_ops(D, 1.0, q);
    Mat bbm = minus.bdag * minus.b - nq;
    bbm(D - 1, D - 1) = 0.0;  // truncation corner of the chi^- ladder
    out.push_back(make_report("fock.minus_bdag_b", bbm.norm(), 0.0, 1e-12, dg.str()));
    // trace of q^{nu N} against the closed form, plain series (decaying case)
    double tr_dev = 0.0, tr_tail = 0.0;
    std::mt19937_64 rng(cfg.seed + 17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        cplx nu2;
        do {
            nu2 = cplx(3.0 * unif(rng), 2.0 * unif(rng) - 1.0);
        } while (!(std::abs(std::pow(q, nu2)) < 0.9));
        OscTriple o = chi_plus_ops(30, nu2, q);
        TraceResult tr = trace_regularized(o.qN);
        const cplx ref = 1.0 / (1.0 - std::pow(q, nu2));
        tr_dev = std::max(tr_dev, std::abs(tr.value - ref) / std::abs(ref));
        tr_tail = std::max(tr_tail, tr.tail);
    }
    out.push_back(make_report("fock.trace_plus", tr_dev, tr_tail,
                              std::max(1e-8, 2.0 * tr_tail), dg.str()));
    // resummed trace agrees with the plain sum in the decaying regime
    {
        const cplx nu1(1.4, 0.3), nu2(0.9, -0.2);
        Mat m = q_weight_two_factor(D, nu1, nu2, q);
        TraceResult plain = trace_regularized(m);
        LatticeSpec lat{nu1, nu2, 2, 2, 1};
        ResummedTrace rs = trace_resummed(m.diagonal(), D, lat, q);
        const cplx ref = 1.0 / ((1.0 - std::pow(q, nu1)) * (1.0 - std::pow(q, nu2)));
        const double dev = std::abs(rs.value - ref) / std::abs(ref);
        out.push_back(make_report("fock.trace_resummed_exact", dev, rs.certificate, 1e-10,
                                  dg.str()));
        out.push_back(make_report("fock.trace_plain_vs_ref",
                                  std::abs(plain.value - ref) / std::abs(ref), plain.tail,
                                  std::max(1e-8, 2.0 * plain.tail), dg.str()));
    }
    return out;
}

std::vector<RelationReport> suite_reps(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    const Params& P = cfg.params;
    const cplx q = P.q();
    std::ostringstream dg;
    dg << "reps q=" << q;

    // fundamental representation relations [E_i, F_j] = delta_ij [H_i]_q
    for (auto wid : {std::array<int, 3>{1, 0, 0}, std::array<int, 3>{1, 1, 0}}) {
        double dev = 0.0;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                Mat E = pi_fund(wid, i == 1 ? Gl3Gen::E1 : Gl3Gen::E2, 0.0, q);
                Mat F = pi_fund(wid, j == 1 ? Gl3Gen::F1 : Gl3Gen::F2, 0.0, q);
                Mat comm = E * F - F * E;
                if (i == j) {
                    Mat h = pi_fund(wid, i == 1 ? Gl3Gen::QG1 : Gl3Gen::QG2, 1.0, q) *
                            pi_fund(wid, i == 1 ? Gl3Gen::QG2 : Gl3Gen::QG3, -1.0, q);
                    Mat hq = (h - h.inverse()) / P.kappa_q();
                    comm -= hq;
                }
                dev = std::max(dev, comm.norm());
            }
        out.push_back(make_report(std::string("reps.pi_fund_efh.") +
                                      (wid[1] == 0 ? "100" : "110"),
                                  dev, 0.0, 1e-12, dg.str()));
    }

    // (oeqd): phibar'_zeta(a) = P phi^{*S^{-1}}_{r_s^3 q^{3/s} zeta}(a) P^{-1}
    {
        ConjMatrices cm = conj_matrices(P);
        Gl3Rep fund = fund_rep({1, 0, 0}, q);
        auto phi_images = [&](LoopGen g, cplx nu2) { return jimbo_image(g, nu2, fund, q); };
        double dev = 0.0;
        std::mt19937_64 rng(cfg.seed + 5);
        std::uniform_real_distribution<double> unif(-0.5, 0.5);
        for (int t = 0; t < 5; ++t) {
            SpectralPoint z(cplx(unif(rng), unif(rng)));
            SpectralPoint zs = spectral_shift(spectral_shift_rs(z, 3, P), 3.0, P);
            for (int gi = 0; gi < 9; ++gi) {
                LoopGen g = static_cast<LoopGen>(gi);
                const cplx nu2 = 0.63;
                // left: phibar'^{(1,0,0)} with grading at z
                LoopGen lbl = tau_label(g);
                Mat lhs = jimbo_image(lbl, nu2, fund, q);
                const int ge = gradation_exponent(g, P.s_grad);
                lhs *= z.pow(static_cast<double>(ge));
                // right: P (dual at shifted argument) P^{-1}
                Mat rhs = dual_rep_image(g, nu2, phi_images, q);
                rhs *= zs.pow(static_cast<double>(ge));
                rhs = cm.P * rhs * cm.P.inverse();
                dev = std::max(dev, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
            }
        }
        out.push_back(make_report("reps.oeqd", dev, 0.0, 1e-12, dg.str()));
    }

    // BGG character identity
    {
        double worst = 0.0;
        std::mt19937_64 rng(cfg.seed + 11);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (auto lam : {Weight(0, 0, 0), Weight(1, 0, 0), Weight(1, 1, 0), Weight(2, 0, 0),
                         Weight(2, 1, 0)}) {
            for (int t = 0; t < 5; ++t) {
                // increasing nu real parts keep |q^{nu.beta}| < 1 for |q| < 1
                double a = -2.0 - unif(rng), b = 0.5 * unif(rng) - 0.2, c = 1.0 + unif(rng);
                std::array<cplx, 3> nu{cplx(a, 0.3 * unif(rng)), cplx(b, 0.1),
                                       cplx(c, -0.2 * unif(rng))};
                worst = std::max(worst, std::abs(bgg_character_residual(lam, nu, q)));
            }
        }
        out.push_back(make_report("reps.bgg", worst, 0.0, 1e-9, dg.str()));
    }
    return out;
}

std::vector<RelationReport> suite_lops(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    Params P = cfg.params;
    const cplx q = P.q();
    std::ostringstream dg;
    dg << "lops D=" << P.cutoff;

    // rho Serre relations on interior states
    {
        const int D = P.cutoff;
        Mat e0 = rho_osc_image(1, false, LoopGen::E0, 0.0, D, q);
        Mat e1 = rho_osc_image(1, false, LoopGen::E1, 0.0, D, q);
        Mat e2 = rho_osc_image(1, false, LoopGen::E2, 0.0, D, q);
        Vec mask = Vec::Zero(D * D);
        for (int a = 0; a + 4 < D; ++a)
            for (int b = 0; b + 4 < D; ++b) mask(a * D + b) = 1.0;
        auto serre = [&](const Mat& x, const Mat& y) {
            Mat m = x * x * y - q_number(2.0, q) * (x * y * x) + y * x * x;
            return (m * mask.asDiagonal()).norm() / std::max(1.0, (x * x * y).norm());
        };
        const double dev = std::max({serre(e0, e1), serre(e1, e0), serre(e1, e2), serre(e2, e1),
                                     serre(e0, e2), serre(e2, e0)});
        out.push_back(make_report("lops.rho_serre", dev, 0.0, 1e-11, dg.str()));
    }

    // dual identity between Lbar'_i and the inverse-transposed L'_{-i+1}
    {
        Params Pd = P;
        Pd.cutoff = std::min(P.cutoff, 12);
        SpectralPoint z(cplx(std::log(0.3), 0.4));
        double worst = 0.0;
        for (int i = 1; i <= 3; ++i) worst = std::max(worst, dual_L_residual(i, z, Pd));
        out.push_back(make_report("lops.dual_L", worst, 0.0, 1e-7, dg.str()));
        // negative control: wrong shift exponent
        SpectralPoint zb = spectral_shift(z, 1.0, Pd);  // q^{1/s} mismatch
        const double control = dual_L_residual(1, zb, Pd);
        RelationReport r = make_report("lops.dual_L_control", control, 0.0, 1.0, dg.str());
        r.pass = control > 1e-2;
        r.note = "negative control, expected O(1)";
        out.push_back(r);
    }

    // sigma covariance: conjugating three times returns the i=1 operator
    {
        SpectralPoint z(cplx(std::log(0.35), -0.7));
        OpMatrix l1 = build_L(1, false, z, P);
        ConjMatrices cm = conj_matrices(P);
        OpMatrix l3 = build_L(3, false, z, P);
        // O L_3|_{s->sigma(s)} O^{-1} should equal L_1; realized by building
        // L_3 from params with cycled labels and conjugating once more.
        Params Pc = P;
        Pc.s_grad = {P.s_grad[1], P.s_grad[2], P.s_grad[0]};
        OpMatrix l3c = build_L(3, false, z, Pc);
        double dev = 0.0;
        const Mat Oi = cm.O.inverse();
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) {
                Mat acc = Mat::Zero(l1.entry[0][0].rows(), l1.entry[0][0].cols());
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2) {
                        const cplx c = cm.O(j, a2) * Oi(b2, l);
                        if (c != cplx(0.0) && l3c.entry[a2][b2].size() != 0)
                            acc += c * l3c.entry[a2][b2];
                    }
                Mat ref = l1.entry[j][l].size() == 0 ? Mat(Mat::Zero(acc.rows(), acc.cols()))
                                                     : l1.entry[j][l];
                dev = std::max(dev, (acc - ref).norm() / std::max(1.0, ref.norm()));
            }
        out.push_back(make_report("lops.sigma_cycle", dev, 0.0, 1e-12, dg.str()));
        (void)l3;
    }
    return out;
}

std::vector<RelationReport> suite_chain(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    const Params& P = cfg.params;
    std::ostringstream dg;
    dg << "chain n=" << cfg.n << " D=" << P.cutoff;
    auto eta = cfg.make_eta();
    Workspace ws(P, eta);
    SpectralPoint z(cfg.zeta_grid.front());
    SpectralPoint z2(cfg.zeta_grid.back() + cplx(0.05, 0.4));

    try {
        // commutativity across families and points
        Mat q1 = ws.Q(1, z), q2 = ws.Q(2, z2), qb3 = ws.Qbar(3, z2);
        const double c12 = (q1 * q2 - q2 * q1).norm() / std::max(1e-300, q1.norm() * q2.norm());
        const double c13 =
            (q1 * qb3 - qb3 * q1).norm() / std::max(1e-300, q1.norm() * qb3.norm());
        out.push_back(make_report("chain.commute_qq", c12, ws.max_cert(), 1e-8, dg.str()));
        out.push_back(make_report("chain.commute_qqbar", c13, ws.max_cert(), 1e-8, dg.str()));
        // weight-block preservation
        out.push_back(make_report("chain.weight_blocks",
                                  std::max(off_block_mass(q1, cfg.n), off_block_mass(qb3, cfg.n)),
                                  0.0, 1e-10, dg.str()));
        // Q' depends on zeta only through zeta^s
        ChainOp qp0 = q_prime_operator(1, false, z, eta, P);
        SpectralPoint zshift(z.w + cplx(0.0, 2.0 * kPi / P.s()));
        ChainOp qp1 = q_prime_operator(1, false, zshift, eta, P);
        out.push_back(make_report("chain.zeta_s_periodicity", rel_distance(qp0.data, qp1.data),
                                  qp0.cert + qp1.cert, 1e-10, dg.str()));
        // Q' simultaneous rescaling invariance
        const cplx nu_resc(0.21, 0.33);
        std::vector<SpectralPoint> eta_shift;
        for (const auto& e : eta) eta_shift.emplace_back(e.w + nu_resc);
        ChainOp qp2 =
            q_prime_operator(1, false, SpectralPoint(z.w + nu_resc), eta_shift, P);
        out.push_back(make_report("chain.qprime_rescaling", rel_distance(qp0.data, qp2.data),
                                  qp0.cert + qp2.cert, 1e-10, dg.str()));
        // sigma covariance on the chain
        {
            Params Pc = P;
            Pc.phi = {P.phi[1], P.phi[2], P.phi[0]};
            Pc.s_grad = {P.s_grad[1], P.s_grad[2], P.s_grad[0]};
            Workspace wsc(Pc, eta);
            Mat qi = wsc.Q(1, z);
            ConjMatrices cm = conj_matrices(P);
            Mat On = kron_power(cm.O, cfg.n);
            Mat lhs = ws.Q(2, z);
            Mat rhs = On * qi * On.inverse();
            out.push_back(make_report("chain.sigma_covariance", rel_distance(lhs, rhs),
                                      ws.max_cert() + wsc.max_cert(), 1e-8, dg.str()));
        }
        // polynomial certification with negative control
        {
            auto eta_l = eta;
            Params Pl = P;
            auto f_good = [&](const SpectralPoint& p) {
                return q_operator_poly(1, p, eta_l, Pl).data;
            };
            PolyCert good = certify_laurent(f_good, std::sqrt(0.35), cfg.n + 1, 8 * cfg.n,
                                            1e-8, P);
            RelationReport r = make_report("chain.qpoly_cert", good.fit_residual, 0.0, 1e-8,
                                           dg.str());
            r.pass = good.certified;
            out.push_back(r);
            auto f_bad = [&](const SpectralPoint& p) {
                QParts parts = q_parts(1, false, p, eta_l, Pl);
                const cplx scale = std::exp(-p.w * static_cast<double>(parts.n) * static_cast<double>(Pl.s()) / 6.0 +
                                            parts.log_prefactor);
                return Mat(scale * parts.core);
            };
            PolyCert bad = certify_laurent(f_bad, std::sqrt(0.35), cfg.n + 1, 8 * cfg.n, 1e-8, P);
            RelationReport rb = make_report("chain.qpoly_cert_control", bad.fit_residual, 0.0,
                                            1.0, dg.str());
            rb.pass = !bad.certified && bad.fit_residual > 1e-2;
            rb.note = "negative control: f3 prefactor left in place";
            out.push_back(rb);
        }
        // cutoff stability
        {
            Params P4 = P;
            P4.cutoff = P.cutoff + 4;
            ChainOp qa = q_operator(1, z, eta, P);
            ChainOp qb = q_operator(1, z, eta, P4);
            out.push_back(make_report("chain.cutoff_stability", rel_distance(qa.data, qb.data),
                                      qa.cert + qb.cert, 1e-8, dg.str()));
        }
    } catch (const DomainError& err) {
        append_skip(out, "chain.suite", err.what(), dg.str());
    }
    return out;
}

std::vector<RelationReport> suite_transfer(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    const Params& P = cfg.params;
    auto eta = cfg.make_eta();
    Workspace ws(P, eta);
    std::ostringstream dg;
    dg << "transfer n=" << cfg.n << " D=" << P.cutoff;

    try {
        for (const cplx& w : cfg.zeta_grid) {
            SpectralPoint z(w);
            for (int i = 1; i <= 3; ++i) {
                out.push_back(wronskian_residual(ws, i, false, z));
                out.push_back(wronskian_residual(ws, i, true, z));
            }
            for (int k = 1; k <= 3; ++k) {
                out.push_back(tq_residual(ws, k, false, z));
                out.push_back(tq_residual(ws, k, true, z));
                out.push_back(tq_poly_residual(ws, k, false, z));
                out.push_back(tq_poly_residual(ws, k, true, z));
            }
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    if (i == j) continue;
                    out.push_back(mixed_tq_residual(ws, "t100", i, j, z));
                    out.push_back(mixed_tq_residual(ws, "t110", i, j, z));
                }
            out.push_back(t_zero_identity(ws, false, z));
            out.push_back(t_zero_identity(ws, true, z));
            out.push_back(t_antisymmetry(ws, z));
            out.push_back(t_equal_columns_zero(ws, z));
            out.push_back(t_lambda_shift(ws, z));
            for (int l = 1; l <= 3; ++l) out.push_back(tt_residual(ws, "fr1", l, 0, z));
            for (int l = 1; l <= 2; ++l) out.push_back(tt_residual(ws, "fr2", l, 0, z));
            out.push_back(tt_residual(ws, "fr3", 2, 1, z));
            out.push_back(tt_residual(ws, "fr3", 3, 1, z));
            out.push_back(tt_residual(ws, "pjt1", 3, 3, z));
            out.push_back(tt_residual(ws, "pjt2", 2, 0, z));
            out.push_back(tt_residual(ws, "pjt3", 2, 0, z));
            out.push_back(tt_residual(ws, "pjt4", 2, 0, z));
            out.push_back(utt_residual(ws, {cplx(2), cplx(1), cplx(0), cplx(-1), cplx(3), cplx(1)},
                                       z));
            out.push_back(jacobi_trudi_residual(ws, 2, 1, z));
            out.push_back(octct_residual(ws, 0, z));
            out.push_back(octct_residual(ws, 1, z));
            out.push_back(bttot_residual(ws, 1, false, z));
            out.push_back(bttot_residual(ws, 1, true, z));
        }
    } catch (const DomainError& err) {
        append_skip(out, "transfer.suite", err.what(), dg.str());
    }
    return out;
}

std::vector<RelationReport> suite_tensorB(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    std::ostringstream dg;
    dg << "tensorB D=5";
    try {
        AppendixReport r =
            appendixB_residual(cplx(0.83, 0.21), cplx(1.12, -0.34), cfg.params, 5);
        RelationReport rep = make_report("tensorB.actions", r.max_deviation, 0.0, 1e-10, dg.str());
        rep.note = "states=" + std::to_string(r.checked_states) +
                   " ids=" + std::to_string(r.checked_identities) + " worst=" + r.worst;
        out.push_back(rep);
    } catch (const DomainError& err) {
        append_skip(out, "tensorB.actions", err.what(), dg.str());
    }
    return out;
}

std::vector<RelationReport> suite_tensorC(const RunConfig& cfg) {
    std::vector<RelationReport> out;
    std::ostringstream dg;
    dg << "tensorC D=3";
    try {
        AppendixReport r = appendixC_residual(cplx(0.77, 0.18), cplx(1.05, -0.29),
                                              cplx(0.91, 0.42), cfg.params, 3);
        RelationReport rep = make_report("tensorC.actions", r.max_deviation, 0.0, 1e-9, dg.str());
        rep.note = "states=" + std::to_string(r.checked_states) +
                   " ids=" + std::to_string(r.checked_identities) + " worst=" + r.worst;
        out.push_back(rep);
        BasicRepReport b = basic_rep_residual(cfg.params);
        out.push_back(make_report("tensorC.basic_rep", b.action_deviation, 0.0, 1e-12, dg.str()));
        out.push_back(make_report("tensorC.basic_serre", b.serre_deviation, 0.0, 1e-11, dg.str()));
        out.push_back(
            make_report("tensorC.limit_rate", b.limit_rate_error, 0.0, 1e-6, dg.str()));
    } catch (const DomainError& err) {
        append_skip(out, "tensorC.actions", err.what(), dg.str());
    }
    return out;
}

}  // namespace

std::vector<RelationReport> run_suite(const std::string& suite, const RunConfig& cfg) {
    if (suite == "core") return suite_core(cfg);
    if (suite == "fock") return suite_fock(cfg);
    if (suite == "reps") return suite_reps(cfg);
    if (suite == "lops") return suite_lops(cfg);
    if (suite == "chain") return suite_chain(cfg);
    if (suite == "transfer") return suite_transfer(cfg);
    if (suite == "tensorB") return suite_tensorB(cfg);
    if (suite == "tensorC") return suite_tensorC(cfg);
    throw DomainError("run_suite: unknown suite " + suite);
}

std::vector<RelationReport> run_verify(const RunConfig& cfg) {
    cfg.validate();
    std::vector<std::string> suites = cfg.suites;
    if (std::find(suites.begin(), suites.end(), "all") != suites.end())
        suites = {"core", "fock", "reps", "lops", "chain", "transfer", "tensorB", "tensorC"};

    std::vector<std::vector<RelationReport>> results(suites.size());
    std::atomic<size_t> next{0};
    const int nthreads = std::min<int>(worker_threads(), static_cast<int>(suites.size()));
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= suites.size()) return;
            try {
                results[i] = run_suite(suites[i], cfg);
            } catch (const std::exception& e) {
                std::vector<RelationReport> r;
                append_skip(r, suites[i] + ".suite", e.what(), "");
                results[i] = r;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<RelationReport> all;
    for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const RelationReport& a, const RelationReport& b) {
                         return a.relation_id < b.relation_id;
                     });
    return all;
}

void emit_report(const std::vector<RelationReport>& reports, const std::string& path) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["generated_by"] = "uqsl3-verify";
    doc["timestamp"] = static_cast<long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["relation_id"] = r.relation_id;
        j["params"] = r.params_digest;
        j["residual"] = r.residual;
        j["tail_certificate"] = r.tail_certificate;
        j["pass"] = r.pass;
        j["skipped"] = r.skipped;
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(j);
    }
    doc["reports"] = arr;
    std::ofstream out(path);
    if (!out) throw DomainError("emit_report: cannot write " + path);
    out << doc.dump(2) << "\n";
}

void print_summary(const std::vector<RelationReport>& reports, std::ostream& os) {
    int pass = 0, fail = 0, skip = 0;
    os << std::left << std::setw(34) << "relation" << std::right << std::setw(13) << "residual"
       << std::setw(13) << "certificate" << "  status\n";
    for (const auto& r : reports) {
        os << std::left << std::setw(34) << r.relation_id << std::right << std::setw(13)
           << std::setprecision(3) << std::scientific << r.residual << std::setw(13)
           << r.tail_certificate << "  ";
        if (r.skipped) {
            ++skip;
            os << "SKIP (" << r.note << ")";
        } else if (r.pass) {
            ++pass;
            os << "pass";
        } else {
            ++fail;
            os << "FAIL";
        }
        os << "\n";
    }
    os << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
}

int exit_status(const std::vector<RelationReport>& reports) {
    for (const auto& r : reports)
        if (r.skipped || !r.pass) return 1;
    return 0;
}

void probe_convergence(const RunConfig& cfg, std::ostream& os) {
    os << "cutoff sweep (wronskian i=1, tq k=1 residuals; Q-norm deltas)\n";
    os << std::setw(8) << "D" << std::setw(14) << "wronskian" << std::setw(14) << "tq"
       << std::setw(14) << "|dQ|/|Q|" << "\n";
    Mat prev;
    for (int D : {10, 12, 14, 16, 18}) {
        RunConfig c = cfg;
        c.params.cutoff = D;
        auto eta = c.make_eta();
        Workspace ws(c.params, eta);
        SpectralPoint z(c.zeta_grid.front());
        double w1 = -1.0, t1 = -1.0, dq = -1.0;
        try {
            w1 = wronskian_residual(ws, 1, false, z).residual;
            t1 = tq_residual(ws, 1, false, z).residual;
            Mat qm = ws.Q(1, z);
            if (prev.size() != 0) dq = rel_distance(prev, qm);
            prev = qm;
        } catch (const DomainError& e) {
            os << "  D=" << D << " skipped: " << e.what() << "\n";
            continue;
        }
        os << std::setw(8) << D << std::setw(14) << std::setprecision(3) << std::scientific << w1
           << std::setw(14) << t1 << std::setw(14) << dq << "\n";
    }
}

}  // namespace uqsl3
