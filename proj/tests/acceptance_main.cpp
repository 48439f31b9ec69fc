// Acceptance suite: one pass/fail line per criterion.
//
// Usage: plk_acceptance <path-to-cli-binary>
//
// Criteria:
//   1  kernel and linear-spline interpolants coincide on randomized cases
//   2  Green-kernel identities: slope jump, Robin residuals, forced zeros
//   3  reproducing property of the inner product on piecewise linear data
//   4  kernel quadrature weights equal trapezoid weights
//   5  trapezoid bound sharpness for the quadratic at p = inf
//   6  sampling inequality across the bank, p in {1, 2, 4}
//   7  superconvergence bound at theta = 1 across the bank
//   8  fitted convergence orders match the predicted exponents
//   9  random-node robustness of the smooth rate
//  10  CLI determinism and exit-code contract

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plk/errors.hpp"
#include "plk/function_bank.hpp"
#include "plk/interpolation.hpp"
#include "plk/kernel.hpp"
#include "plk/nodes.hpp"
#include "plk/quadrature.hpp"
#include "plk/rates.hpp"

using namespace plk;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

KernelParams random_valid_params(std::mt19937_64& rng) {
    KernelParams p;
    p.alpha0 = 0.3 + 2.2 * uniform01(rng);
    p.alpha1 = 0.3 + 2.2 * uniform01(rng);
    p.alpha2 = 0.9 * (2.0 * uniform01(rng) - 1.0) * std::sqrt(p.alpha0 * p.alpha1);
    p.beta = 0.4 + 1.6 * uniform01(rng);
    return p;
}

NodeSet random_nodes_with_endpoints(std::mt19937_64& rng, int count, double min_gap) {
    for (;;) {
        std::vector<double> nodes{0.0, 1.0};
        for (int i = 0; i < count - 2; ++i) nodes.push_back(uniform01(rng));
        std::sort(nodes.begin(), nodes.end());
        bool ok = true;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i] - nodes[i - 1] < min_gap) ok = false;
        }
        if (ok) return NodeSet(std::move(nodes));
    }
}

// --- criteria -------------------------------------------------------------

void criterion_1_equivalence() {
    std::mt19937_64 rng(20260808);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        KernelModel model = [&] {
            switch (trial % 3) {
                case 0: return KernelModel::general_w1(random_valid_params(rng));
                case 1: return KernelModel::released_brownian(0.3 + 2.0 * uniform01(rng),
                                                              0.4 + 1.6 * uniform01(rng));
                default: return KernelModel::released_reverse_brownian(0.3 + 2.0 * uniform01(rng),
                                                                       0.4 + 1.6 * uniform01(rng));
            }
        }();
        const int count = 3 + static_cast<int>(uniform01(rng) * 37.99);
        const NodeSet nodes = random_nodes_with_endpoints(rng, count, 1e-3);
        std::vector<double> values(nodes.size());
        for (double& v : values) v = 4.0 * uniform01(rng) - 2.0;
        worst = std::max(worst, equivalence_gap(model, nodes, values, 1000));
    }
    report(1, worst < 1e-9,
           "interpolant equivalence over 100 randomized cases: max gap " + fmt(worst) + " (< 1e-9)");
}

void criterion_2_green() {
    std::mt19937_64 rng(31337);
    double worst_jump = 0.0, worst_bc = 0.0;
    for (int set = 0; set < 20; ++set) {
        const KernelModel model = KernelModel::general_w1(random_valid_params(rng));
        for (int i = 0; i < 50; ++i) {
            const double x = 0.01 + 0.98 * uniform01(rng);
            worst_jump = std::max(worst_jump, std::fabs(model.jump_residual(x)));
            const BoundaryResiduals bc = model.boundary_residuals(x);
            worst_bc = std::max({worst_bc, std::fabs(bc.left), std::fabs(bc.right)});
        }
    }
    double worst_zero = 0.0;
    const std::vector<KernelModel> limits = {
        KernelModel::brownian_motion(0.7),
        KernelModel::reverse_brownian_motion(1.4),
        KernelModel::brownian_bridge(1.0),
    };
    for (const KernelModel& m : limits) {
        const ForcedZeros fz = m.forced_zeros();
        for (int i = 0; i < 50; ++i) {
            const double x = 0.01 + 0.98 * uniform01(rng);
            if (fz.left) worst_zero = std::max(worst_zero, std::fabs(m.evaluate(x, 0.0)));
            if (fz.right) worst_zero = std::max(worst_zero, std::fabs(m.evaluate(x, 1.0)));
        }
    }
    const bool pass = worst_jump < 1e-12 && worst_bc < 1e-10 && worst_zero < 1e-14;
    report(2, pass,
           "green kernel: max jump " + fmt(worst_jump) + " (< 1e-12), max bc " + fmt(worst_bc) +
               " (< 1e-10), max forced-zero " + fmt(worst_zero) + " (< 1e-14)");
}

void criterion_3_reproducing() {
    std::mt19937_64 rng(424242);
    double worst = 0.0;
    const std::vector<KernelParams> sets = {
        {1.0, 1.0, 0.0, 1.0}, {2.0, 1.0, -0.5, 0.7}, {0.5, 2.0, 0.3, 1.5}};
    for (const KernelParams& p : sets) {
        const KernelModel model = KernelModel::general_w1(p);
        std::vector<TestFunction> fs = {
            affine(1.0, 0.0),
            affine(2.0 * uniform01(rng) - 1.0, 0.0),
            affine(uniform01(rng), 2.0 * uniform01(rng) - 1.0),
            hat(0.2 + 0.6 * uniform01(rng)),
            hat(0.2 + 0.6 * uniform01(rng)),
        };
        for (const TestFunction& f : fs) {
            for (int i = 0; i < 20; ++i) {
                const double x = 0.02 + 0.96 * uniform01(rng);
                const TestFunction kx = kernel_translate(model, x);
                worst = std::max(worst, std::fabs(rkhs_inner_product(p, f, kx) - f.eval(x)));
            }
        }
    }
    report(3, worst < 1e-10,
           "reproducing property <f, K_x> = f(x): max deviation " + fmt(worst) + " (< 1e-10)");
}

void criterion_4_quadrature_coincidence() {
    std::mt19937_64 rng(777);
    const std::vector<KernelModel> models = {
        KernelModel::general_w1({1.0, 1.0, 0.0, 1.0}),
        KernelModel::general_w1({2.0, 1.0, -0.5, 0.7}),
        KernelModel::released_brownian(1.0, 1.0),
        KernelModel::released_reverse_brownian(2.0, 0.5),
        KernelModel::wendland_linear(0.8),
    };
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int count = 3 + static_cast<int>(uniform01(rng) * 20.99);
        const NodeSet nodes = random_nodes_with_endpoints(rng, count, 5e-3);
        const QuadratureRule trap = trapezoid_rule(nodes);
        for (const KernelModel& m : models) {
            const QuadratureRule kq = kernel_quadrature_weights(m, nodes);
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                worst = std::max(worst, std::fabs(kq.weights[i] - trap.weights[i]));
            }
        }
    }
    report(4, worst < 1e-10,
           "kernel quadrature = trapezoid over 20 node sets x 5 models: max weight gap " +
               fmt(worst) + " (< 1e-10)");
}

void criterion_5_sharpness() {
    double worst = 0.0;
    for (int n = 2; n <= 64; n *= 2) {
        const double tn = trapezoid_rule(NodeSet::uniform(n)).apply([](double x) { return x * x; });
        const double err = std::fabs(1.0 / 3.0 - tn);
        const BoundReport bound =
            trapezoid_bound("cu_d", n, SmoothnessSpace::sobolev(kInf, 2.0), 2.0);
        worst = std::max(worst, std::fabs(err / *bound.rhs - 1.0));
    }
    report(5, worst < 1e-10,
           "trapezoid sharpness |I - T_n| = 1/(6 n^2) for x^2: max relative deviation " + fmt(worst) +
               " (< 1e-10)");
}

void criterion_6_sampling() {
    int checked = 0, violations = 0;
    for (const TestFunction& f : builtin_bank()) {
        for (double p : {1.0, 2.0, 4.0}) {
            if (!member_of_w1p(f, p)) continue;  // the inequality presumes f in W^1_p
            for (int n : {4, 16, 64}) {
                const NodeSet nodes = NodeSet::uniform(n);
                std::vector<double> values(nodes.size());
                for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f.eval(nodes[i]);
                const PiecewiseLinearInterpolant s = piecewise_linear(nodes, values);
                const BoundReport report = check_sampling_inequality(f, p, s);
                ++checked;
                if (!report.satisfied) ++violations;
            }
        }
    }
    report(6, violations == 0 && checked >= 60,
           "sampling inequality: " + std::to_string(violations) + " violations in " +
               std::to_string(checked) + " bank x p x n cases");
}

void criterion_7_superconvergence() {
    const std::vector<KernelParams> sets = {
        {1.0, 1.0, 0.0, 1.0}, {2.0, 1.0, -0.5, 0.7}, {0.5, 2.0, 0.3, 1.5}};
    int checked = 0, violations = 0;
    for (const KernelParams& p : sets) {
        std::vector<TestFunction> fs = builtin_bank();
        fs.push_back(bc_quadratic(p));
        for (const TestFunction& f : fs) {
            if (!f.has_d1()) continue;
            for (int n : {4, 16, 64}) {
                const BoundReport report =
                    check_superconvergence_bound(f, p, NodeSet::uniform(n));
                ++checked;
                if (!report.satisfied) ++violations;
            }
        }
    }
    report(7, violations == 0 && checked >= 80,
           "superconvergence bound (theta = 1): " + std::to_string(violations) + " violations in " +
               std::to_string(checked) + " cases");
}

void criterion_8_rates() {
    struct Case {
        TestFunction f;
        double sigma;
        double band;
    };
    const std::vector<Case> cases = {
        {sin_pi(), 2.0, 0.10},
        {quadratic(), 2.0, 0.10},
        {power_fn(0.75), 1.25, 0.15},
        {abs_power(0.6), 1.10, 0.15},
        {hat(default_hat_breakpoint()), 1.5, 0.15},
    };
    const std::vector<int> levels{16, 32, 64, 128, 256, 512};
    bool pass = true;
    std::string detail = "fitted orders:";
    for (const Case& c : cases) {
        const SmoothnessSpace space = SmoothnessSpace::sobolev(2.0, c.sigma);
        const ExponentPrediction pred = predict_exponent(space, 2.0);
        RateSpec spec{c.f.id, space, 2.0, pred.exponent, pred.source};
        const RateStudy study = run_study(spec, c.f, std::nullopt, NodeScheme::uniform(), levels);
        const bool ok = std::fabs(study.fitted_slope - pred.exponent) <= c.band;
        pass = pass && ok;
        detail += " " + c.f.id + "=" + fmt(study.fitted_slope) + "/" + fmt(pred.exponent) +
                  (ok ? "" : "(!)");
    }
    report(8, pass, detail);
}

void criterion_9_random_nodes() {
    RateSpec spec{"sin_pi", SmoothnessSpace::sobolev(2.0, 2.0), 2.0, 2.0, RateSource::spline_f};
    const RateStudy study = run_study(spec, sin_pi(), std::nullopt, NodeScheme::random(12345, 3.0),
                                      {16, 32, 64, 128, 256, 512});
    const bool pass = std::fabs(study.fitted_slope - 2.0) <= 0.25;
    report(9, pass,
           "random nodes (rho = 3, fixed seed): fitted order " + fmt(study.fitted_slope) +
               " within 2 +/- 0.25");
}

// --- criterion 10: CLI ----------------------------------------------------

struct CliResult {
    std::string output;
    int code{-1};
};

CliResult run_cli(const std::string& command) {
    CliResult result;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::vector<double> fields_of(const std::string& line) {
    std::vector<double> out;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            out.push_back(std::nan(""));
        }
    }
    return out;
}

void criterion_10_cli(const std::string& cli) {
    bool pass = true;
    std::string detail;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    };

    const std::string eval_cmd =
        cli + " kernel eval --kind released-bm --alpha0 1 --beta 1 --x 0.3 --y 0.7";
    const CliResult eval1 = run_cli(eval_cmd);
    const CliResult eval2 = run_cli(eval_cmd);
    expect(eval1.code == 0, "kernel eval exit code");
    expect(eval1.output == eval2.output, "kernel eval determinism");
    {
        const auto lines = data_lines(eval1.output);
        expect(lines.size() == 2, "kernel eval row count");
        if (lines.size() == 2) {
            const auto row = fields_of(lines[1]);
            expect(row.size() == 3 && std::fabs(row[2] - 1.3) < 1e-14, "kernel eval value 1.3");
        }
    }

    expect(run_cli(cli + " kernel eval --kind general-w1 --alpha0 1 --alpha1 1 --alpha2 1 "
                         "--beta 1 --x 0.5 --y 0.5")
                   .code == 2,
           "invalid params exit 2");
    expect(run_cli(cli + " kernel eval --kind released-bm --alpha0 1 --beta 1 --x 1.5 --y 0.5")
                   .code == 2,
           "domain error exit 2");

    const std::string green_cmd =
        cli + " verify green --kind general-w1 --alpha0 1 --alpha1 1 --alpha2 0 --beta 1";
    const CliResult green1 = run_cli(green_cmd);
    expect(green1.code == 0, "verify green exit code");
    expect(green1.output == run_cli(green_cmd).output, "verify green determinism");
    expect(run_cli(cli + " verify green --kind brownian-bridge --beta 1").code == 2,
           "verify green on a limit kernel exits 2");
    expect(run_cli(cli + " verify green --kind brownian-bridge --beta 1 --dirichlet").code == 0,
           "verify green --dirichlet exit 0");

    const std::string rates_cmd =
        cli + " rates --function sin_pi --scheme uniform --levels 8:256 --r 2";
    const CliResult rates1 = run_cli(rates_cmd);
    expect(rates1.code == 0, "rates exit code");
    expect(rates1.output == run_cli(rates_cmd).output, "rates determinism");
    expect(run_cli(cli + " rates --function affine:1,2 --scheme uniform --levels 8:256 --r 2")
                   .code == 1,
           "rates on an exactly reproduced function exits 1");

    const CliResult quad = run_cli(
        cli + " quad --function quadratic --bound cu_d --p inf --levels 2:64");
    expect(quad.code == 0, "quad exit code");
    {
        const auto lines = data_lines(quad.output);
        expect(lines.size() == 7, "quad row count");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto row = fields_of(lines[i]);
            // n,Tn,I,abs_err,bound,satisfied
            expect(row.size() == 6, "quad column count");
            if (row.size() == 6) {
                expect(std::fabs(row[3] / row[4] - 1.0) < 1e-10, "quad sharpness row");
                expect(row[5] == 1.0, "quad satisfied flag");
            }
        }
    }

    // Seed handling: PLK_SEED overrides --seed.
    const std::string random_rates = " rates --function sin_pi --scheme random --levels 16:128 --r 2";
    const CliResult seed1 = run_cli(cli + random_rates + " --seed 1");
    const CliResult seed2 = run_cli(cli + random_rates + " --seed 2");
    const CliResult env2 = run_cli("PLK_SEED=2 " + cli + random_rates + " --seed 1");
    expect(seed1.code == 0 && seed2.code == 0 && env2.code == 0, "random rates exit codes");
    expect(seed1.output != seed2.output, "seeds change the node draw");
    expect(env2.output == seed2.output, "PLK_SEED overrides --seed");

    report(10, pass, pass ? "CLI determinism and exit codes (0/1/2) verified end-to-end"
                          : "CLI contract: " + detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
        return 2;
    }
    const std::string cli = std::string("'") + argv[1] + "'";

    criterion_1_equivalence();
    criterion_2_green();
    criterion_3_reproducing();
    criterion_4_quadrature_coincidence();
    criterion_5_sharpness();
    criterion_6_sampling();
    criterion_7_superconvergence();
    criterion_8_rates();
    criterion_9_random_nodes();
    criterion_10_cli(cli);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
