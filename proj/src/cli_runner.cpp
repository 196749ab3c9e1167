#include "ecir/cli_runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <vector>

#include "ecir/gnm.hpp"
#include "ecir/symbolic.hpp"

namespace ecir {

namespace {

// Fixed float rendering: 17 significant digits, locale-independent.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int run_price(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const ECIRModel model = cfg.make_model();
    // One-shot pricing always carries the q vs q+2 refinement diagnostic.
    SeriesOptions opt = cfg.series;
    opt.refinement_diagnostics = true;
    const SeriesPricer pricer(cfg.window(), model, opt);
    const SeriesTerms a0 = pricer.coefficient(0, opt.N);
    const SeriesTerms a1 = pricer.coefficient(1, std::max(opt.N - 1, 0));
    const BondPrice p = pricer.assemble(a0, a1, cfg.r0, opt.N);
    const double quad_delta = std::max(a0.max_q_delta(), a1.max_q_delta());
    out << "t,T,terms,q,price,a_part,b_part,a0,a1,tail_bound,quad_delta\n";
    out << fmt(cfg.t) << ',' << fmt(cfg.T) << ',' << p.terms << ',' << cfg.series.q << ','
        << fmt(p.price) << ',' << fmt(p.a_part) << ',' << fmt(p.b_part) << ',' << fmt(p.a0) << ','
        << fmt(p.a1) << ',' << fmt(p.tail_bound) << ',' << fmt(quad_delta) << '\n';
    return 0;
}

int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ECIRModel model = cfg.make_model();
    const PricingWindow window = cfg.window();
    const SeriesPricer pricer(window, model, cfg.series);
    const BondPrice series = pricer.price(cfg.r0);
    const McEstimate mc = mc_price(window, model, cfg.r0, cfg.mc);
    const double riccati =
        riccati_solve(window, model, cfg.riccati_step(), cfg.riccati_convention).price(cfg.r0);

    const double diff_mc = std::fabs(series.price - mc.mean);
    const double diff_ric = std::fabs(series.price - riccati);
    const double mc_tol = std::max(cfg.compare_tol_mc, cfg.compare_mc_sigmas * mc.std_error);
    const bool mc_ok = diff_mc <= mc_tol;
    const bool ric_ok = diff_ric <= cfg.compare_tol_riccati;

    out << "t,T,price_series,price_mc,stderr_mc,price_riccati,abs_diff_mc,abs_diff_riccati\n";
    out << fmt(cfg.t) << ',' << fmt(cfg.T) << ',' << fmt(series.price) << ',' << fmt(mc.mean) << ','
        << fmt(mc.std_error) << ',' << fmt(riccati) << ',' << fmt(diff_mc) << ',' << fmt(diff_ric)
        << '\n';
    if (!mc_ok)
        err << "compare: |series - mc| = " << fmt(diff_mc) << " exceeds tolerance " << fmt(mc_tol)
            << "\n";
    if (!ric_ok)
        err << "compare: |series - riccati| = " << fmt(diff_ric) << " exceeds tolerance "
            << fmt(cfg.compare_tol_riccati) << "\n";
    return (mc_ok && ric_ok) ? 0 : 1;
}

int run_experiment_s4(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    static const char* kPresets[] = {"linear_decay", "exp_decay", "sin"};
    out << "preset,t,T,terms,price_series,price_mc,stderr_mc,price_riccati,abs_diff_mc,abs_diff_riccati\n";
    for (const char* preset : kPresets) {
        RunConfig pc = cfg;
        pc.sigma_spec = preset;
        const ECIRModel model = pc.make_model();
        const PricingWindow window = pc.window();
        const SeriesPricer pricer(window, model, pc.series);
        const SeriesTerms a0 = pricer.coefficient(0, pc.series.N);
        const SeriesTerms a1 = pricer.coefficient(1, std::max(pc.series.N - 1, 0));
        const McEstimate mc = mc_price(window, model, pc.r0, pc.mc);
        const double riccati =
            riccati_solve(window, model, pc.riccati_step(), pc.riccati_convention).price(pc.r0);
        for (int terms = 1; terms <= pc.series.N; ++terms) {
            const BondPrice p = pricer.assemble(a0, a1, pc.r0, terms);
            out << preset << ',' << fmt(pc.t) << ',' << fmt(pc.T) << ',' << terms << ','
                << fmt(p.price) << ',' << fmt(mc.mean) << ',' << fmt(mc.std_error) << ','
                << fmt(riccati) << ',' << fmt(std::fabs(p.price - mc.mean)) << ','
                << fmt(std::fabs(p.price - riccati)) << '\n';
        }
    }
    return 0;
}

int run_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double t = cfg.t, T = cfg.T;
    const int tuples = 100;
    const double tol = 1e-12;
    out << "drift,n,m,max_rel_err\n";
    bool ok = true;
    std::mt19937_64 gen(cfg.mc.seed);
    std::uniform_real_distribution<double> node(t, T);
    const GnmEvaluator gnm;
    for (const char* drift : {"0", "1"}) {
        RunConfig dc = cfg;
        dc.k_spec = drift;
        const ECIRModel model = dc.make_model();
        const ModelContext ctx(model, T);
        const bool const_k = model.k.is_identically_zero();
        for (int n = 1; n <= 3; ++n) {
            const auto terms = differentiate(n);
            std::vector<double> max_err(n + 1, 0.0);
            for (int r = 0; r < tuples; ++r) {
                std::vector<double> nodes(n);
                for (double& s : nodes) s = node(gen);
                const auto oracle = const_k ? freeze_and_collect_const(terms, nodes, T)
                                            : freeze_and_collect_timedep(terms, t, nodes, ctx);
                for (int m = 0; m <= n; ++m) {
                    const double engine = const_k ? gnm.g_const(n, m, nodes, T)
                                                  : gnm.g_timedep(n, m, t, nodes, ctx);
                    const double scale = std::max({std::fabs(oracle[m]), std::fabs(engine), 1e-300});
                    max_err[m] = std::max(max_err[m], std::fabs(engine - oracle[m]) / scale);
                }
            }
            for (int m = 0; m <= n; ++m) {
                out << drift << ',' << n << ',' << m << ',' << fmt(max_err[m]) << '\n';
                if (max_err[m] > tol) {
                    ok = false;
                    err << "oracle-check: drift=" << drift << " n=" << n << " m=" << m
                        << " max rel err " << fmt(max_err[m]) << " exceeds " << fmt(tol) << "\n";
                }
            }
        }
    }
    return ok ? 0 : 1;
}

int run_dump_terms(int n, std::ostream& out) {
    const auto terms = differentiate(n);
    dump_terms(terms, out);
    return 0;
}

}  // namespace ecir
