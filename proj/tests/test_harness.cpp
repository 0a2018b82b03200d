#include "ricefield/harness.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ricefield;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* small_d1_config =
    "# crossing counts on a short interval\n"
    "kind = d1_crossings\n"
    "model = gaussian1d\n"
    "domain = interval:10\n"
    "u_grid = 0, 1, 2\n"
    "n_samples = 60\n"
    "n_freq = 128\n"
    "grid_step = 0.01\n"
    "inner_mc = 2000\n"
    "seed = 4242\n";

} // namespace

TEST_CASE("config parsing") {
    ExperimentConfig cfg = parse_config_text(small_d1_config);
    CHECK(cfg.kind == ExperimentKind::d1_crossings);
    CHECK(cfg.u_grid == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(cfg.n_samples == 60);
    CHECK(cfg.seed == 4242);
    CHECK(cfg.seed_set);
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("diagnostics carry the line number") {
        try {
            parse_config_text("kind = d1_crossings\nbogus_key = 1\n", "cfg");
            FAIL("expected a parse error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("cfg:2") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_config_text("n_samples = many\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
    }

    SUBCASE("validation rejects incomplete configs") {
        ExperimentConfig c = parse_config_text(small_d1_config);
        c.seed_set = false;
        CHECK_THROWS_AS(c.validate(), ConfigError);

        c = parse_config_text(small_d1_config);
        c.u_grid = {2.0, 1.0};
        CHECK_THROWS_AS(c.validate(), ConfigError);

        c = parse_config_text(small_d1_config);
        c.domain = "triangle:3";
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
}

TEST_CASE("domain specs") {
    ExperimentConfig c;
    c.domain = "interval:7.5";
    CHECK(c.resolve_domain().kind() == Domain::Kind::interval);
    CHECK(c.resolve_domain().side1() == doctest::Approx(7.5));
    c.domain = "rect:2,3";
    CHECK(c.resolve_domain().measure() == doctest::Approx(6.0));
    c.domain = "disc";
    CHECK(c.resolve_domain().kind() == Domain::Kind::unit_disc);
    c.domain = "rect:2";
    CHECK_THROWS_AS(c.resolve_domain(), ConfigError);
}

TEST_CASE("canonical form and hash") {
    ExperimentConfig a = parse_config_text(small_d1_config);
    ExperimentConfig b = parse_config_text(small_d1_config);
    CHECK(a.canonical() == b.canonical());
    CHECK(a.hash() == b.hash());
    b.seed = 4243;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("statistical gate") {
    CHECK(statistical_pass(1.0, 1.02, 0.01));       // within 3 sigma
    CHECK(statistical_pass(1.0, 1.04, 0.001));      // within 5% relative
    CHECK_FALSE(statistical_pass(1.0, 1.10, 0.01)); // fails both
    CHECK(statistical_pass(0.0, 0.002, 0.001));     // sigma clause at zero
}

TEST_CASE("crossing experiment end to end") {
    ExperimentConfig cfg = parse_config_text(small_d1_config);
    cfg.output_dir = "harness_test_out";
    ExperimentReport rep = run_experiment(cfg);

    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[1].analytic == doctest::Approx(1.9306470526).epsilon(1e-9));
    for (const auto& r : rep.rows) {
        CHECK(r.se_available);
        CHECK(!r.tolerance.empty());
    }
    CHECK(std::filesystem::exists(rep.csv_path));
    CHECK(std::filesystem::exists(rep.json_path));
    CHECK(std::filesystem::exists(rep.manifest_path));

    SUBCASE("same seed reproduces the report byte for byte") {
        std::string first = slurp(rep.csv_path);
        ExperimentReport again = run_experiment(cfg);
        CHECK(slurp(again.csv_path) == first);
    }

    SUBCASE("a single sample leaves the standard error unavailable") {
        cfg.n_samples = 1;
        ExperimentReport one = run_experiment(cfg);
        for (const auto& r : one.rows) CHECK_FALSE(r.se_available);
    }
    std::filesystem::remove_all("harness_test_out");
}

TEST_CASE("tail comparison writes the bound table") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::tail_comparison;
    cfg.model = "gaussian2d";
    cfg.domain = "disc";
    cfg.u_grid = {3.0, 5.0, 7.0};
    cfg.n_samples = 1;
    cfg.seed = 1;
    cfg.seed_set = true;
    cfg.output_dir = "harness_tail_out";
    ExperimentReport rep = run_experiment(cfg);
    std::string csv = slurp(rep.csv_path);
    CHECK(csv.rfind("u,I1,I2,bound,asymptotic,psi", 0) == 0);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows) {
        CHECK(r.bound > 0.0);
        CHECK(r.asymptotic > 0.0);
        CHECK_FALSE(r.se_available);
    }
    std::filesystem::remove_all("harness_tail_out");
}

TEST_CASE("empirical law of the maximum") {
    auto model = model_by_name("gaussian2d");
    Domain disc = Domain::unit_disc();
    MaxDistribution d =
        estimate_max_distribution(model, disc, 300, 64, 0.1, 515151);
    REQUIRE(d.sup_values.size() == 300);
    CHECK(std::is_sorted(d.sup_values.begin(), d.sup_values.end()));
    CHECK(d.cdf(d.sup_values.back()) == 1.0);
    double prev = 0.0;
    for (double u = -1.0; u <= 4.0; u += 0.1) {
        double v = d.cdf(u);
        CHECK(v >= prev);
        prev = v;
    }

    // the median should be stable under grid refinement
    MaxDistribution fine =
        estimate_max_distribution(model, disc, 300, 64, 0.05, 515151);
    double med = d.quantile(0.5), med_fine = fine.quantile(0.5);
    CHECK(std::abs(med - med_fine) < 0.1);
    CHECK(med_fine >= med - 1e-12); // refinement only raises each sup
}
