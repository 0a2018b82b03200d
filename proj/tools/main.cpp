// ricefield command line: level-crossing and critical-point moments of
// stationary Gaussian fields, density bounds for the maximum, and the
// simulation oracle used to cross-check them.

#include "ricefield/counting.hpp"
#include "ricefield/field.hpp"
#include "ricefield/harness.hpp"
#include "ricefield/max_density.hpp"
#include "ricefield/rice.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace ricefield;

namespace {

struct ModelArgs {
    std::string name = "gaussian2d";
    std::string table;
    int dim = 2;

    SpectralModel resolve() const {
        if (!table.empty()) return model_from_table(table, dim, "table");
        return model_by_name(name);
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--model", name, "catalog model name")
            ->default_str(name);
        cmd->add_option("--model-table", table, "CSV density table rho,f");
        cmd->add_option("--dim", dim, "dimension for --model-table");
    }
};

Domain parse_domain(const std::string& spec) {
    ExperimentConfig cfg;
    cfg.domain = spec;
    return cfg.resolve_domain();
}

int cmd_validate(const ModelArgs& margs) {
    SpectralModel model = margs.resolve();
    ValidationReport rep = validate_model(model);
    for (const auto& c : rep.checks)
        std::printf("%-24s %s  %s\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.detail.c_str());
    if (!rep.all_pass()) return 1;
    SpectralMoments m = compute_spectral_moments(model);
    if (model.dim == 2) {
        std::printf("J1=%.8g J2=%.8g J3=%.8g J4=%.8g J5=%.8g\n", m.J[1],
                    m.J[2], m.J[3], m.J[4], m.J[5]);
        std::printf("Lambda = pi*J3*I, pi*J3=%.8g, det=%.8g\n",
                    m.lambda_mat[0][0], m.lambda_det());
    } else {
        std::printf("lambda0=%.8g lambda2=%.8g lambda4=%.8g\n", m.lambda0,
                    m.lambda2, m.lambda4);
    }
    return 0;
}

int cmd_simulate(const ModelArgs& margs, const std::string& domain_spec,
                 int n_freq, std::uint64_t seed, double grid_step,
                 const std::string& out_path) {
    SpectralModel model = margs.resolve();
    Domain dom = parse_domain(domain_spec);
    FieldSample s = sample_field(model, n_freq, seed);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open " << out_path << "\n";
            return 1;
        }
        out = &file;
    }
    if (dom.dim() == 1) {
        int n = static_cast<int>(std::ceil(dom.side1() / grid_step)) + 1;
        double h = dom.side1() / (n - 1);
        auto values = values_on_grid_1d(s, 0.0, h, n);
        *out << "t,X\n";
        for (int i = 0; i < n; ++i)
            *out << i * h << ',' << values[static_cast<std::size_t>(i)] << '\n';
    } else {
        export_grid_csv(s, dom, grid_step, *out);
    }
    return 0;
}

int cmd_count(const ModelArgs& margs, const std::string& domain_spec, double u,
              double grid_step, int n_freq, std::uint64_t seed) {
    SpectralModel model = margs.resolve();
    Domain dom = parse_domain(domain_spec);
    FieldSample s = sample_field(model, n_freq, seed);
    if (dom.dim() == 1) {
        CountResult r = count_level_roots_1d(s, dom, u, grid_step);
        std::printf("level_roots=%d refine_failures=%d separation=%.6g\n",
                    r.count(), r.refine_failures, r.separation);
        return 0;
    }
    CountResult roots = count_gradient_roots_2d(s, dom, Vec2{0, 0}, grid_step);
    auto [m1, m2] = classify_critical(s, roots, u);
    std::printf("critical=%d  M_u1=%d  M_u2=%d  indeterminate=%d  "
                "newton_divergences=%d\n",
                roots.count(), m1.count(), m2.count(), m2.indeterminate,
                roots.newton_divergences);
    if (dom.boundary_measure() > 0) {
        BoundaryProcess b = restrict_to_boundary(s, dom);
        CountResult br = count_boundary_critical(b, u);
        std::printf("boundary_maxima_above_u=%d%s\n", br.count(),
                    br.degenerate_input ? " (degenerate boundary trace)" : "");
    }
    return 0;
}

int cmd_rice(const ModelArgs& margs, const std::string& domain_spec, double u,
             const std::string& kind, long inner_mc, std::uint64_t seed) {
    SpectralModel model = margs.resolve();
    Domain dom = parse_domain(domain_spec);
    if (dom.dim() == 1) {
        SpectralMoments m = compute_spectral_moments(model);
        double v = rice_d1_closed_form(m.lambda0, m.lambda2, u, dom.side1());
        std::printf("E[N_u] = %.8g  (closed form)\n", v);
        return 0;
    }
    DetKind dk = kind == "delta1" ? DetKind::delta1 : DetKind::delta2;
    RiceEstimate est = expected_critical(model, dom, u, dk, inner_mc, seed);
    std::printf("E[M_u,%s] = %.8g +- %.3g  (inner MC n=%ld)\n",
                dk == DetKind::delta1 ? "1" : "2", est.value, est.std_error,
                est.n_inner_mc);
    return 0;
}

int cmd_bound(const ModelArgs& margs, const std::vector<double>& us) {
    SpectralModel model = margs.resolve();
    SpectralMoments m = compute_spectral_moments(model);
    DiscBoundConstants consts(m.J[3], m.J[5]);
    Domain disc = Domain::unit_disc();
    std::printf("u,I1,I2,bound,asymptotic,psi\n");
    for (double u : us) {
        double i1 = disc_I1(consts, u), i2 = disc_I2(consts, u);
        std::printf("%.6g,%.8g,%.8g,%.8g,%.8g,%.8g\n", u, i1, i2, i1 + i2,
                    tail_asymptotic(m, disc, u), ylvisaker_bound(u));
    }
    return 0;
}

int cmd_tail(const ModelArgs& margs, const std::string& domain_spec,
             const std::vector<double>& us) {
    SpectralModel model = margs.resolve();
    Domain dom = parse_domain(domain_spec);
    SpectralMoments m = compute_spectral_moments(model);
    std::printf("u,asymptotic\n");
    for (double u : us)
        std::printf("%.6g,%.8g\n", u, tail_asymptotic(m, dom, u));
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    ExperimentConfig cfg = parse_config_file(config_path);
    ExperimentReport rep = run_experiment(cfg);
    for (const auto& r : rep.rows)
        std::printf("u=%-6g analytic=%-12.6g mc=%-12.6g se=%-10.3g %s\n", r.u,
                    r.analytic, r.mc, r.mc_se, r.pass ? "pass" : "FAIL");
    std::printf("report: %s  %s  (hash %s)\n", rep.csv_path.c_str(),
                rep.json_path.c_str(), rep.config_hash.c_str());
    // statistical failures are reported in the files, not via exit code
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rice moments and maximum-density bounds for stationary "
                 "Gaussian fields"};
    app.require_subcommand(1);

    ModelArgs m_validate, m_sim, m_count, m_rice, m_bound, m_tail;
    std::string domain = "disc", out_path, kind = "delta2", config_path;
    double u = 1.0, grid_step = 0.05;
    int n_freq = 256;
    long inner_mc = 20000;
    std::uint64_t seed = 0;
    std::vector<double> us{1.0};
    bool seed_given = false;

    auto* validate = app.add_subcommand("validate", "check a spectral model");
    m_validate.attach(validate);

    auto* simulate = app.add_subcommand("simulate", "sample one field to CSV");
    m_sim.attach(simulate);
    simulate->add_option("--domain", domain)->default_str(domain);
    simulate->add_option("--n-freq", n_freq)->default_str("256");
    simulate->add_option("--grid-step", grid_step)->default_str("0.05");
    simulate->add_option("--seed", seed)->required();
    simulate->add_option("--out", out_path, "output CSV (default stdout)");

    auto* count = app.add_subcommand("count", "count roots / critical points "
                                              "of one realization");
    m_count.attach(count);
    count->add_option("--domain", domain)->default_str(domain);
    count->add_option("--u", u)->default_str("1");
    count->add_option("--grid-step", grid_step)->default_str("0.05");
    count->add_option("--n-freq", n_freq)->default_str("256");
    count->add_option("--seed", seed)->required();

    auto* rice = app.add_subcommand("rice", "Rice moment (closed form in d=1, "
                                            "level integral in d=2)");
    m_rice.attach(rice);
    rice->add_option("--domain", domain)->default_str(domain);
    rice->add_option("--u", u)->default_str("1");
    rice->add_option("--kind", kind, "delta1 | delta2")->default_str(kind);
    rice->add_option("--inner-mc", inner_mc)->default_str("20000");
    rice->add_option("--seed", seed)->default_str("20240101");

    auto* bound = app.add_subcommand("bound", "unit-disc density bound table");
    m_bound.attach(bound);
    bound->add_option("--u", us, "levels")->expected(-1);

    auto* tail = app.add_subcommand("tail", "large-u density equivalent");
    m_tail.attach(tail);
    tail->add_option("--domain", domain)->default_str(domain);
    tail->add_option("--u", us, "levels")->expected(-1);

    auto* experiment = app.add_subcommand("experiment", "run a config-driven "
                                                        "experiment");
    experiment->add_option("--config", config_path, "key=value config file")
        ->required();

    CLI11_PARSE(app, argc, argv);
    (void)seed_given;

    try {
        if (validate->parsed()) return cmd_validate(m_validate);
        if (simulate->parsed())
            return cmd_simulate(m_sim, domain, n_freq, seed, grid_step, out_path);
        if (count->parsed())
            return cmd_count(m_count, domain, u, grid_step, n_freq, seed);
        if (rice->parsed())
            return cmd_rice(m_rice, domain, u, kind, inner_mc, seed);
        if (bound->parsed()) return cmd_bound(m_bound, us);
        if (tail->parsed()) return cmd_tail(m_tail, domain, us);
        if (experiment->parsed()) return cmd_experiment(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
