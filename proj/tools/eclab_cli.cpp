// eclab: command-line laboratory for the y^2 = x^3 + ax + b family.
//
// Subcommands bind the library experiments and verifications into
// reproducible runs. Every run writes a JSON report (schema_version 1) that
// echoes the full configuration; identical config and thread count give a
// byte-identical report except for the wall_time_sec field. Exit codes:
// 0 all checks passed, 1 a verification failed, 2 usage error, 3 cost guard.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eclab/arith.hpp"
#include "eclab/asymptotics.hpp"
#include "eclab/charsums.hpp"
#include "eclab/curves.hpp"
#include "eclab/fit.hpp"
#include "eclab/moments.hpp"
#include "eclab/parallel.hpp"

using namespace eclab;
using ordered_json = nlohmann::ordered_json;
namespace cs = eclab::charsums;
namespace cv = eclab::curves;
namespace mo = eclab::moments;
namespace as = eclab::asymptotics;

namespace {

const arith::FactorSieve& sieve() {
    static arith::FactorSieve s(2'000'000);
    return s;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

struct Run {
    std::string experiment;
    std::string out_path;
    ordered_json config;
    ordered_json results;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    int finish(int code) const {
        ordered_json rep;
        rep["schema_version"] = 1;
        rep["experiment"] = experiment;
        rep["config"] = config;
        rep["results"] = results;
        rep["exit_code"] = code;
        rep["wall_time_sec"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << rep.dump(2) << "\n";
        }
        return code;
    }
};

ordered_json moment_json(const mo::MomentReport& r) {
    ordered_json j;
    j["X"] = r.X;
    j["SX"] = r.SX;
    j["curves"] = r.curves;
    j["grid"] = r.grid;
    j["values"] = r.values;
    j["predicted"] = r.predicted;
    j["ratio"] = r.ratio;
    j["slope_vs_grid"] = r.slope_vs_grid;
    j["growth_exponent"] = r.growth.exponent();
    j["growth_exponent_offset_fit"] = r.growth.exponent_offset;
    j["growth_exponent_loglog"] = r.growth.exponent_loglog;
    j["growth_flat"] = r.growth.flat;
    j["runtime_sec"] = r.runtime_sec;
    for (const auto& [k, v] : r.extras) j[k] = v;
    return j;
}

SmoothWeight make_weight(const std::string& mode) {
    SmoothWeight w{};
    w.mode = mode == "sharp" ? SmoothWeight::Mode::sharp : SmoothWeight::Mode::bump;
    return w;
}

std::vector<double> poly_from_flag(const std::string& poly) {
    // --poly "c1,c2,..." are the coefficients of x, x^2, ...; P(0) = 0 always
    std::vector<double> P{0.0};
    for (double c : parse_list(poly)) P.push_back(c);
    return P;
}

void check_unit_poly(const std::vector<double>& P, bool force) {
    double s = 0;
    for (double c : P) s += c;
    if (!force && std::abs(s - 1.0) > 1e-12)
        throw CLI::ValidationError("--poly", "P(1) must be 1 (pass --force to override)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eclab: elliptic-curve family moments laboratory"};
    app.require_subcommand(1);

    int threads = default_threads();
    bool force = false;

    // --- verify-lemmas -----------------------------------------------------
    auto* vl = app.add_subcommand("verify-lemmas", "exhaustively verify the complete-sum lemmas");
    i64 vl_rmax = 35;
    double vl_tol = 1e-6;
    std::string vl_out;
    vl->add_option("--rmax", vl_rmax, "largest odd squarefree modulus");
    vl->add_option("--tol", vl_tol, "comparison tolerance");
    vl->add_option("--out", vl_out, "report path");
    vl->add_option("--threads", threads, "worker threads");

    // --- coeffs ------------------------------------------------------------
    auto* co = app.add_subcommand("coeffs", "dump exact coefficients a(n) for one curve");
    i64 co_a = 1, co_b = 1, co_nmax = 1000;
    std::string co_fmt = "csv", co_out;
    co->add_option("--a", co_a, "curve parameter a")->required();
    co->add_option("--b", co_b, "curve parameter b")->required();
    co->add_option("--nmax", co_nmax, "table bound");
    co->add_option("--format", co_fmt, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    co->add_option("--out", co_out, "output path (default stdout)");

    // --- complete-sums -----------------------------------------------------
    auto* qs = app.add_subcommand("complete-sums", "exact Q_t(r) / Q'_k(r) tables");
    i64 qs_rmax = 64, qs_t = 1, qs_k = 0, qs_guard = 100'000'000;
    std::string qs_out;
    qs->add_option("--rmax", qs_rmax, "compute for all r <= rmax");
    qs->add_option("--t", qs_t, "divisibility parameter t of Q_t");
    qs->add_option("--k", qs_k, "if > 0, compute Q'_k instead of Q_t");
    qs->add_option("--guard", qs_guard, "inner-evaluation cost guard");
    qs->add_option("--out", qs_out, "report path");

    // --- constants ---------------------------------------------------------
    auto* ct = app.add_subcommand("constants", "the Euler-product constant c_S");
    i64 ct_pmax = 47;
    int ct_kmax = 3;
    std::string ct_out;
    ct->add_option("--pmax", ct_pmax, "prime cutoff");
    ct->add_option("--kmax", ct_kmax, "shell cutoff");
    ct->add_option("--out", ct_out, "report path");

    // --- afe-check ---------------------------------------------------------
    auto* af = app.add_subcommand("afe-check", "conductor/sign consistency search");
    i64 af_a = 0, af_b = 0;
    std::string af_out;
    af->add_option("--a", af_a, "curve a (omit both to run the default suite)");
    af->add_option("--b", af_b, "curve b");
    af->add_option("--out", af_out, "report path");

    // --- family-count ------------------------------------------------------
    auto* fc = app.add_subcommand("family-count", "weighted |S_X| against the closed form");
    double fc_X = 1e6;
    std::string fc_weight = "bump", fc_out;
    fc->add_option("--X", fc_X, "family size parameter");
    fc->add_option("--weight", fc_weight, "bump or sharp")->check(CLI::IsMember({"bump", "sharp"}));
    fc->add_option("--threads", threads, "worker threads");
    fc->add_option("--out", fc_out, "report path");

    // --- first-moment ------------------------------------------------------
    auto* fm = app.add_subcommand("first-moment", "family average of L_U vs c_S");
    double fm_X = 1e6, fm_nu = 0.5;
    std::string fm_weight = "bump", fm_out;
    fm->add_option("--X", fm_X, "family size parameter");
    fm->add_option("--nu", fm_nu, "U = X^nu, 0 < nu < 7/9");
    fm->add_option("--weight", fm_weight, "bump or sharp")->check(CLI::IsMember({"bump", "sharp"}));
    fm->add_option("--threads", threads, "worker threads");
    fm->add_option("--out", fm_out, "report path");
    fm->add_flag("--force", force, "skip exponent-range validation");

    // --- mollified-first-moment ---------------------------------------------
    auto* mm = app.add_subcommand("mollified-first-moment", "family average of L_U M(E) vs 1/2");
    double mm_X = 1e6, mm_nu = 0.4, mm_kappa = 0.1;
    std::string mm_poly = "1", mm_weight = "bump", mm_out;
    mm->add_option("--X", mm_X, "family size parameter");
    mm->add_option("--nu", mm_nu, "U = X^nu");
    mm->add_option("--kappa", mm_kappa, "M = X^kappa, 0 < kappa < 7/9 - nu");
    mm->add_option("--poly", mm_poly, "P coefficients c1,c2,... of x, x^2, ...");
    mm->add_option("--weight", mm_weight, "bump or sharp")->check(CLI::IsMember({"bump", "sharp"}));
    mm->add_option("--threads", threads, "worker threads");
    mm->add_option("--out", mm_out, "report path");
    mm->add_flag("--force", force, "skip exponent-range validation");

    // --- second-moment -----------------------------------------------------
    auto* sm = app.add_subcommand("second-moment", "family average of L_V^2 over a V grid");
    double sm_X = 1e6;
    std::string sm_alphas = "0.18,0.20,0.22,0.24,0.26,0.277", sm_weight = "bump", sm_out;
    sm->add_option("--X", sm_X, "family size parameter");
    sm->add_option("--alphas", sm_alphas, "V = X^alpha grid, each alpha < 5/18");
    sm->add_option("--weight", sm_weight, "bump or sharp")->check(CLI::IsMember({"bump", "sharp"}));
    sm->add_option("--threads", threads, "worker threads");
    sm->add_option("--out", sm_out, "report path");
    sm->add_flag("--force", force, "skip exponent-range validation");

    // --- cross-moment ------------------------------------------------------
    auto* cm = app.add_subcommand("cross-moment", "family average of L_V1 L_V2 M1 M2");
    double cm_X = 1e6, cm_a1 = 0.03, cm_a2 = 0.03, cm_b1 = 0.24, cm_b2 = 0.24;
    std::string cm_scales = "0.5,0.625,0.75,0.875,1.0", cm_poly = "1", cm_weight = "bump", cm_out;
    cm->add_option("--X", cm_X, "family size parameter");
    cm->add_option("--alpha1", cm_a1, "V1 = X^alpha1 (0 means L = 1)");
    cm->add_option("--alpha2", cm_a2, "V2 = X^alpha2 (0 means L = 1)");
    cm->add_option("--beta1", cm_b1, "M1 = X^beta1 (0 means M = 1)");
    cm->add_option("--beta2", cm_b2, "M2 = X^beta2 (0 means M = 1)");
    cm->add_option("--scales", cm_scales, "multipliers applied to the beta pair");
    cm->add_option("--poly", cm_poly, "P coefficients c1,c2,...");
    cm->add_option("--weight", cm_weight, "bump or sharp")->check(CLI::IsMember({"bump", "sharp"}));
    cm->add_option("--threads", threads, "worker threads");
    cm->add_option("--out", cm_out, "report path");
    cm->add_flag("--force", force, "skip exponent-range validation");

    // --- root-signs (diagnostic only) ----------------------------------------
    auto* rs = app.add_subcommand("root-signs",
                                  "tabulate sign(sqrt(D) lambda(D)) over squarefree-D curves; exploratory "
                                  "diagnostic, never averaged into any moment");
    double rs_X = 1e4;
    i64 rs_max = 500;
    std::string rs_out;
    rs->add_option("--X", rs_X, "family size parameter");
    rs->add_option("--max-curves", rs_max, "cap on tabulated curves");
    rs->add_option("--out", rs_out, "report path");

    // --- asymptotics ---------------------------------------------------------
    auto* ay = app.add_subcommand("asymptotics", "growth-law oracles for the moment integrals");
    int ay_prop = 1, ay_j1 = 1, ay_j2 = 1;
    double ay_V = 1000.0, ay_a1 = 0.5, ay_a2 = 0.5, ay_b1 = 0.5, ay_b2 = 0.5;
    std::string ay_Ms = "1e5,1e6,1e7", ay_Xs = "1e4,1e5,1e6,1e7", ay_out;
    ay->add_option("--prop", ay_prop, "proposition 1, 2, or 3")->check(CLI::Range(1, 3));
    ay->add_option("--V", ay_V, "prop 1: kernel length");
    ay->add_option("--M-grid", ay_Ms, "prop 2: M grid");
    ay->add_option("--j1", ay_j1, "kernel power j1");
    ay->add_option("--j2", ay_j2, "kernel power j2");
    ay->add_option("--alpha1", ay_a1, "prop 3: V1 = X^alpha1");
    ay->add_option("--alpha2", ay_a2, "prop 3: V2 = X^alpha2");
    ay->add_option("--beta1", ay_b1, "prop 3: M1 = X^beta1");
    ay->add_option("--beta2", ay_b2, "prop 3: M2 = X^beta2");
    ay->add_option("--X-grid", ay_Xs, "prop 3: X grid");
    ay->add_option("--out", ay_out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        // ------------------------------------------------------------------
        if (vl->parsed()) {
            Run run;
            run.experiment = "verify-lemmas";
            run.out_path = vl_out;
            run.config = {{"rmax", vl_rmax}, {"tol", vl_tol}, {"threads", threads}};
            std::vector<i64> moduli;
            for (i64 r = 1; r <= vl_rmax; r += 2)
                if (sieve().factor(r).squarefree()) moduli.push_back(r);

            ordered_json matrix;
            bool all_pass = true;
            std::vector<ordered_json> rows(moduli.size());
            run_blocks(moduli.size(), threads, moduli.size(), [&](size_t lo, size_t hi, size_t) {
                for (size_t i = lo; i < hi; ++i) {
                    const i64 r = moduli[i];
                    cs::LemmaVerifier v(r, sieve());
                    double mc = 0, de = 0, dc = 0, mcs = 0;
                    for (i64 h = 0; h < r; ++h)
                        for (i64 k = 0; k < r; ++k) {
                            mc = std::max(mc, v.maincharsum_error(h, k));
                            de = std::max(de, v.degenerate_exp_error(h, k));
                            dc = std::max(dc, v.degenerate_char_error(h, k));
                            for (i64 t = 1; t <= r; ++t)
                                if (r % t == 0) mcs = std::max(mcs, v.maincompletesum_error(t, h, k));
                        }
                    ordered_json row;
                    row["maincharsum"] = mc;
                    row["degenerate_exp"] = de;
                    row["degenerate_char"] = dc;
                    row["maincompletesum"] = mcs;
                    row["parameterization"] = v.parameterization_ok();
                    rows[i] = std::move(row);
                }
            });
            for (size_t i = 0; i < moduli.size(); ++i) {
                const auto& row = rows[i];
                const bool pass = row["maincharsum"].get<double>() <= vl_tol &&
                                  row["degenerate_exp"].get<double>() <= vl_tol &&
                                  row["degenerate_char"].get<double>() <= vl_tol &&
                                  row["maincompletesum"].get<double>() <= vl_tol && row["parameterization"].get<bool>();
                all_pass = all_pass && pass;
                ordered_json entry = rows[i];
                entry["pass"] = pass;
                matrix["r=" + std::to_string(moduli[i])] = entry;
            }
            // Gauss sums and the Poisson identity ride along
            double gauss_worst = 0;
            for (i64 r : moduli)
                for (i64 k = 0; k < r; ++k)
                    gauss_worst = std::max(gauss_worst, std::abs(arith::gauss_sum(r, k) - arith::gauss_sum_closed(r, k)));
            matrix["gauss"] = {{"max_error", gauss_worst}, {"pass", gauss_worst <= 1e-9}};
            all_pass = all_pass && gauss_worst <= 1e-9;
            ordered_json poisson;
            for (i64 r : {1, 5, 7, 15}) {
                if (r > vl_rmax) continue;
                const auto pc = cs::poisson_identity_check(r, 1, 1, 50, 50, sieve(), SmoothWeight{});
                poisson["r=" + std::to_string(r)] = {{"rel_error", pc.rel_error}, {"pass", pc.rel_error < 1e-3}};
                all_pass = all_pass && pc.rel_error < 1e-3;
            }
            matrix["poisson_identity"] = poisson;
            run.results["matrix"] = matrix;
            run.results["all_pass"] = all_pass;
            std::printf("verify-lemmas: %s over %zu moduli (gauss %.1e)\n", all_pass ? "PASS" : "FAIL",
                        moduli.size(), gauss_worst);
            return run.finish(all_pass ? 0 : 1);
        }

        // ------------------------------------------------------------------
        if (co->parsed()) {
            cv::CurveParams c{co_a, co_b};
            c.validate();
            cv::CoeffSeries s(c, co_nmax, sieve());
            std::string text;
            if (co_fmt == "csv") {
                text = "# curve a=" + std::to_string(co_a) + " b=" + std::to_string(co_b) + "\n";
                text += "n,a_n\n";
                for (i64 n = 1; n <= co_nmax; ++n)
                    text += std::to_string(n) + "," + std::to_string(s.a(n)) + "\n";
            } else {
                ordered_json j;
                j["a"] = co_a;
                j["b"] = co_b;
                j["nmax"] = co_nmax;
                std::vector<i64> vals;
                for (i64 n = 1; n <= co_nmax; ++n) vals.push_back(s.a(n));
                j["a_n"] = vals;
                text = j.dump(2) + "\n";
            }
            if (co_out.empty()) {
                std::fputs(text.c_str(), stdout);
            } else {
                std::ofstream f(co_out);
                f << text;
            }
            return 0;
        }

        // ------------------------------------------------------------------
        if (qs->parsed()) {
            Run run;
            run.experiment = "complete-sums";
            run.out_path = qs_out;
            run.config = {{"rmax", qs_rmax}, {"t", qs_t}, {"k", qs_k}, {"guard", qs_guard}};
            ordered_json table;
            int code = 0;
            for (i64 r = 1; r <= qs_rmax; ++r) {
                try {
                    const auto q = qs_k > 0 ? cs::Q_prime(qs_k, r, sieve(), qs_guard) : cs::Q_t(r, qs_t, sieve(), qs_guard);
                    table["r=" + std::to_string(r)] = {{"scaled", q.scaled}, {"value", q.value}};
                } catch (const CostGuardError& e) {
                    // keep whatever was computed: partial report, exit 3
                    run.results["cost_guard_error"] = e.what();
                    run.results["stopped_at_r"] = r;
                    code = 3;
                    break;
                }
            }
            run.results["table"] = table;
            std::printf("complete-sums: wrote %zu values%s\n", table.size(), code == 3 ? " (cost guard tripped)" : "");
            return run.finish(code);
        }

        // ------------------------------------------------------------------
        if (ct->parsed()) {
            Run run;
            run.experiment = "constants";
            run.out_path = ct_out;
            run.config = {{"pmax", ct_pmax}, {"kmax", ct_kmax}};
            const auto c = cs::c_S(ct_pmax, ct_kmax, sieve());
            run.results["c_S"] = c.value;
            run.results["tail_estimate"] = c.tail_estimate;
            ordered_json locals;
            for (const auto& [p, f] : c.local_factors) locals["p=" + std::to_string(p)] = f;
            run.results["local_factors"] = locals;
            std::printf("c_S(%lld, %d) = %.10f  (tail estimate %.2e)\n", static_cast<long long>(ct_pmax), ct_kmax,
                        c.value, c.tail_estimate);
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (af->parsed()) {
            Run run;
            run.experiment = "afe-check";
            run.out_path = af_out;
            std::vector<std::pair<i64, i64>> curves;
            if (af_a > 0 && af_b > 0)
                curves = {{af_a, af_b}};
            else
                curves = {{1, 1}, {2, 1}, {1, 3}, {1, 5}, {4, 1}, {5, 1}, {4, 3}, {2, 5}};
            run.config = {{"curves", curves.size()}};
            bool all_ok = true;
            ordered_json rows;
            for (const auto& [a, b] : curves) {
                const auto res = cv::afe_consistency_search({a, b}, sieve());
                const bool ok = !res.ambiguous && res.best_competitor_variance >= 10.0 * res.variance &&
                                res.grid_spread <= 1e-6;
                all_ok = all_ok && ok;
                ordered_json row;
                row["N"] = res.N;
                row["eps"] = res.eps;
                row["central_value"] = res.central_value;
                row["variance"] = res.variance;
                row["best_competitor_variance"] = res.best_competitor_variance;
                row["grid_spread"] = res.grid_spread;
                row["conclusive"] = ok;
                rows["curve(" + std::to_string(a) + "," + std::to_string(b) + ")"] = row;
                std::printf("afe (%lld,%lld): N=%lld eps=%+d central=%.8f var=%.2e %s\n", static_cast<long long>(a),
                            static_cast<long long>(b), static_cast<long long>(res.N), res.eps, res.central_value,
                            res.variance, ok ? "conclusive" : "AMBIGUOUS");
            }
            run.results["searches"] = rows;
            run.results["all_conclusive"] = all_ok;
            return run.finish(all_ok ? 0 : 1);
        }

        // ------------------------------------------------------------------
        if (fc->parsed()) {
            Run run;
            run.experiment = "family-count";
            run.out_path = fc_out;
            run.config = {{"X", fc_X}, {"weight", fc_weight}, {"threads", threads}};
            mo::FamilyWindow w{fc_X, make_weight(fc_weight)};
            const auto rep = mo::family_count(w, sieve(), threads);
            run.results = moment_json(rep);
            std::printf("family-count X=%g: |S_X| = %.3f, predicted %.3f, ratio %.5f\n", fc_X, rep.SX, rep.predicted,
                        rep.ratio);
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (fm->parsed()) {
            if (!force && (fm_nu <= 0 || fm_nu >= 7.0 / 9.0))
                throw CLI::ValidationError("--nu", "require 0 < nu < 7/9 (pass --force to override)");
            Run run;
            run.experiment = "first-moment";
            run.out_path = fm_out;
            run.config = {{"X", fm_X}, {"nu", fm_nu}, {"weight", fm_weight}, {"threads", threads}};
            mo::FamilyWindow w{fm_X, make_weight(fm_weight)};
            const auto rep = mo::first_moment_LU(w, fm_nu, sieve(), threads);
            run.results = moment_json(rep);
            std::printf("first-moment X=%g nu=%g: <L_U> = %.6f, c_S = %.6f, ratio %.4f\n", fm_X, fm_nu, rep.values[0],
                        rep.predicted, rep.ratio);
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (mm->parsed()) {
            if (!force && (mm_nu <= 0 || mm_kappa <= 0 || mm_kappa >= 7.0 / 9.0 - mm_nu))
                throw CLI::ValidationError("--kappa", "require 0 < kappa < 7/9 - nu (pass --force to override)");
            const auto P = poly_from_flag(mm_poly);
            check_unit_poly(P, force);
            Run run;
            run.experiment = "mollified-first-moment";
            run.out_path = mm_out;
            run.config = {{"X", mm_X}, {"nu", mm_nu}, {"kappa", mm_kappa}, {"poly", mm_poly},
                          {"weight", mm_weight}, {"threads", threads}};
            mo::FamilyWindow w{mm_X, make_weight(mm_weight)};
            const auto rep = mo::mollified_first_moment(w, mm_nu, mm_kappa, P, sieve(), threads);
            run.results = moment_json(rep);
            std::printf("mollified-first-moment X=%g nu=%g kappa=%g: value %.6f, ratio to 1/2 = %.4f\n", mm_X, mm_nu,
                        mm_kappa, rep.values[0], rep.ratio);
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (sm->parsed()) {
            const auto alphas = parse_list(sm_alphas);
            if (!force)
                for (double a : alphas)
                    if (a <= 0 || a >= 5.0 / 18.0)
                        throw CLI::ValidationError("--alphas", "require 0 < alpha < 5/18 (pass --force to override)");
            Run run;
            run.experiment = "second-moment";
            run.out_path = sm_out;
            run.config = {{"X", sm_X}, {"alphas", sm_alphas}, {"weight", sm_weight}, {"threads", threads}};
            mo::FamilyWindow w{sm_X, make_weight(sm_weight)};
            const auto rep = mo::second_moment_LV(w, alphas, sieve(), threads);
            run.results = moment_json(rep);
            std::printf("second-moment X=%g: slope vs log V = %.4f, growth exponent %.3f\n", sm_X, rep.slope_vs_grid,
                        rep.growth.exponent());
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (cm->parsed()) {
            const auto scales = parse_list(cm_scales);
            const auto P = poly_from_flag(cm_poly);
            check_unit_poly(P, force);
            double smax = 0;
            for (double t : scales) smax = std::max(smax, t);
            if (!force) {
                if (cm_a1 + cm_a2 + (cm_b1 + cm_b2) * smax >= 5.0 / 9.0)
                    throw CLI::ValidationError("--beta1", "require alpha1+alpha2+beta1+beta2 < 5/9 (pass --force)");
                if (cm_a1 == cm_a2 && cm_b1 == cm_b2 && cm_b1 > 0 && cm_a1 + cm_b1 * smax >= 5.0 / 18.0)
                    throw CLI::ValidationError("--beta1", "require alpha + beta < 5/18 when alpha1 = alpha2 (pass --force)");
            }
            Run run;
            run.experiment = "cross-moment";
            run.out_path = cm_out;
            run.config = {{"X", cm_X},     {"alpha1", cm_a1},   {"alpha2", cm_a2}, {"beta1", cm_b1},
                          {"beta2", cm_b2}, {"scales", cm_scales}, {"poly", cm_poly}, {"weight", cm_weight},
                          {"threads", threads}};
            mo::FamilyWindow w{cm_X, make_weight(cm_weight)};
            const auto rep = mo::cross_moment(w, cm_a1, cm_a2, cm_b1, cm_b2, scales, P, sieve(), threads);
            run.results = moment_json(rep);
            std::printf("cross-moment X=%g (a1=%g a2=%g b1=%g b2=%g): growth exponent %.3f%s\n", cm_X, cm_a1, cm_a2,
                        cm_b1, cm_b2, rep.growth.exponent(), rep.growth.flat ? " (flat)" : "");
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (rs->parsed()) {
            Run run;
            run.experiment = "root-signs";
            run.out_path = rs_out;
            run.config = {{"X", rs_X}, {"max_curves", rs_max}};
            mo::FamilyWindow w{rs_X, SmoothWeight{}};
            const auto counts = mo::root_number_signs(w, sieve(), rs_max);
            ordered_json j;
            for (const auto& [sign, n] : counts) j["sign=" + std::to_string(sign)] = n;
            run.results["counts"] = j;
            std::printf("root-signs X=%g:", rs_X);
            for (const auto& [sign, n] : counts) std::printf(" %+d x %lld", sign, static_cast<long long>(n));
            std::printf("\n");
            return run.finish(0);
        }

        // ------------------------------------------------------------------
        if (ay->parsed()) {
            Run run;
            run.experiment = "asymptotics";
            run.out_path = ay_out;
            run.config = {{"prop", ay_prop}, {"j1", ay_j1}, {"j2", ay_j2}};
            if (ay_prop == 1) {
                run.config["V"] = ay_V;
                const double v = as::I1_oracle(ay_V);
                run.results["I1"] = v;
                run.results["I1_minus_logV"] = v - std::log(ay_V);
                run.results["limit_constant"] = -std::log(4.0 * std::numbers::pi);
                run.results["truncation_bound"] = 0.0;
                std::printf("I1(V=%g) = %.6f, I1 - log V = %.6f (limit %.6f)\n", ay_V, v, v - std::log(ay_V),
                            -std::log(4.0 * std::numbers::pi));
            } else if (ay_prop == 2) {
                run.config["M_grid"] = ay_Ms;
                ordered_json rows;
                for (double M : parse_list(ay_Ms)) {
                    const auto o = as::I2_oracle(M, ay_j1, ay_j2);
                    ordered_json row;
                    row["oracle"] = o.value;
                    row["closed_residue_normalization"] = as::I2_closed_residue(M, ay_j1, ay_j2);
                    row["closed_stated_normalization"] = as::I2_closed_stated(M, ay_j1, ay_j2);
                    row["ratio_residue"] = o.value / as::I2_closed_residue(M, ay_j1, ay_j2);
                    row["ratio_stated"] = o.value / as::I2_closed_stated(M, ay_j1, ay_j2);
                    row["truncation_bound"] = o.truncation_bound;
                    rows["M=" + std::to_string(M)] = row;
                    std::printf("I2(M=%g): oracle %.4f, ratio to residue form %.4f, to stated form %.4f\n", M, o.value,
                                o.value / as::I2_closed_residue(M, ay_j1, ay_j2),
                                o.value / as::I2_closed_stated(M, ay_j1, ay_j2));
                }
                run.results["grid"] = rows;
                run.results["note"] = "the oracle matches the residue normalization (factorials in the denominator)";
            } else {
                run.config["alpha1"] = ay_a1;
                run.config["alpha2"] = ay_a2;
                run.config["beta1"] = ay_b1;
                run.config["beta2"] = ay_b2;
                run.config["X_grid"] = ay_Xs;
                std::vector<double> lx, vals;
                ordered_json rows;
                for (double X : parse_list(ay_Xs)) {
                    const auto o = as::I3_full_oracle(std::pow(X, ay_a1), std::pow(X, ay_a2), std::pow(X, ay_b1),
                                                      std::pow(X, ay_b2), ay_j1, ay_j2);
                    lx.push_back(std::log(X));
                    vals.push_back(o.value);
                    rows["X=" + std::to_string(X)] = {{"value", o.value}, {"terms", o.terms},
                                                      {"truncation_bound", o.truncation_bound}};
                }
                const auto f = fit::growth(lx, vals);
                run.results["grid"] = rows;
                run.results["growth_exponent"] = f.exponent();
                run.results["growth_exponent_loglog"] = f.exponent_loglog;
                run.results["expected_exponent_equal_V"] = ay_j1 + ay_j2 + 3;
                run.results["expected_exponent_unequal_V"] = ay_j1 + ay_j2;
                std::printf("I3 exponent fit %.3f (equal-V law %d, unequal-V law %d)\n", f.exponent(),
                            ay_j1 + ay_j2 + 3, ay_j1 + ay_j2);
            }
            return run.finish(0);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const CostGuardError& e) {
        std::fprintf(stderr, "cost guard: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
