// plk: piecewise linear kernel interpolation toolkit.
//
// Subcommands:
//   kernel eval   evaluate a kernel at a point or on a grid
//   verify green  sweep the Green-kernel residuals of a general kernel
//                 (--dirichlet checks the forced zeros of the limit kernels)
//   rates         refinement study with fitted convergence order
//   quad          trapezoid rule values against the sharp error bounds
//
// Output is CSV with #-prefixed metadata lines; floats carry 17 significant
// digits, so identical configurations produce byte-identical output.
// Exit codes: 0 success, 1 check failure, 2 usage or validation error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plk/errors.hpp"
#include "plk/function_bank.hpp"
#include "plk/gauss_legendre.hpp"
#include "plk/interpolation.hpp"
#include "plk/kernel.hpp"
#include "plk/nodes.hpp"
#include "plk/quadrature.hpp"
#include "plk/rates.hpp"

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

/// Raised when a verification command finds a violated check (exit code 1).
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_extended(const std::string& text, const char* what) {
    if (text == "inf" || text == "Inf" || text == "INF") return plk::kInf;
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("cannot parse ") + what + " value \"" + text + "\"");
    }
}

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> levels;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad level range \"" + text + "\"");
        for (int n = lo; n <= hi; n *= 2) levels.push_back(n);
        return levels;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        levels.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (levels.empty()) throw std::invalid_argument("empty level list");
    return levels;
}

struct KernelSpecOpts {
    std::string kind;
    double alpha0 = kUnset;
    double alpha1 = kUnset;
    double alpha2 = kUnset;
    double beta = kUnset;
    double epsilon = kUnset;
};

void add_kernel_options(CLI::App* cmd, KernelSpecOpts& o) {
    cmd->add_option("--kind", o.kind,
                    "kernel kind: general-w1 | released-bm | released-rbm | bm | reverse-bm | "
                    "brownian-bridge | wendland")
        ->required();
    cmd->add_option("--alpha0", o.alpha0, "left boundary weight");
    cmd->add_option("--alpha1", o.alpha1, "right boundary weight");
    cmd->add_option("--alpha2", o.alpha2, "cross boundary weight");
    cmd->add_option("--beta", o.beta, "derivative term weight");
    cmd->add_option("--epsilon", o.epsilon, "Wendland shape parameter");
}

double require(double v, const char* flag, const std::string& kind) {
    if (std::isnan(v)) {
        throw std::invalid_argument(std::string("kind \"") + kind + "\" requires " + flag);
    }
    return v;
}

plk::KernelModel build_model(const KernelSpecOpts& o) {
    using plk::KernelModel;
    const std::string& k = o.kind;
    if (k == "general-w1" || k == "general") {
        plk::KernelParams p;
        p.alpha0 = require(o.alpha0, "--alpha0", k);
        p.alpha1 = require(o.alpha1, "--alpha1", k);
        p.alpha2 = require(o.alpha2, "--alpha2", k);
        p.beta = require(o.beta, "--beta", k);
        return KernelModel::general_w1(p);
    }
    if (k == "released-bm") {
        return KernelModel::released_brownian(require(o.alpha0, "--alpha0", k), require(o.beta, "--beta", k));
    }
    if (k == "released-rbm") {
        return KernelModel::released_reverse_brownian(require(o.alpha1, "--alpha1", k), require(o.beta, "--beta", k));
    }
    if (k == "bm" || k == "brownian") return KernelModel::brownian_motion(require(o.beta, "--beta", k));
    if (k == "reverse-bm" || k == "rbm") return KernelModel::reverse_brownian_motion(require(o.beta, "--beta", k));
    if (k == "brownian-bridge" || k == "bridge") return KernelModel::brownian_bridge(require(o.beta, "--beta", k));
    if (k == "wendland") return KernelModel::wendland_linear(require(o.epsilon, "--epsilon", k));
    throw std::invalid_argument("unknown kernel kind \"" + k + "\"");
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("PLK_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return flag_seed;
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file \"" + path + "\"");
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

// ---------------------------------------------------------------------------

int cmd_kernel_eval(const KernelSpecOpts& spec, double x, double y, int grid, Output& output) {
    const plk::KernelModel model = build_model(spec);
    auto& out = output.out();
    out << "# cmd=kernel-eval kernel=" << model.describe();
    if (grid > 0) {
        out << " grid=" << grid << "\n";
    } else {
        if (std::isnan(x) || std::isnan(y)) throw std::invalid_argument("provide --x and --y, or --grid");
        out << " x=" << fmt17(x) << " y=" << fmt17(y) << "\n";
    }
    out << "x,y,K\n";
    if (grid > 0) {
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; j <= grid; ++j) {
                const double xi = static_cast<double>(i) / grid;
                const double yj = static_cast<double>(j) / grid;
                out << fmt17(xi) << "," << fmt17(yj) << "," << fmt17(model.evaluate(xi, yj)) << "\n";
            }
        }
    } else {
        out << fmt17(x) << "," << fmt17(y) << "," << fmt17(model.evaluate(x, y)) << "\n";
    }
    return 0;
}

int cmd_verify_green(const KernelSpecOpts& spec, int points, double tol, bool dirichlet,
                     Output& output) {
    const plk::KernelModel model = build_model(spec);
    auto& out = output.out();

    if (dirichlet) {
        const plk::ForcedZeros fz = model.forced_zeros();
        if (fz.empty()) {
            throw std::invalid_argument("--dirichlet requires a kernel with forced boundary zeros "
                                        "(bm, reverse-bm or brownian-bridge)");
        }
        out << "# cmd=verify-green mode=dirichlet kernel=" << model.describe()
            << " points=" << points << " tol=" << fmt17(tol) << "\n";
        out << "x";
        if (fz.left) out << ",K_at_0";
        if (fz.right) out << ",K_at_1";
        out << "\n";
        double worst = 0.0;
        for (int i = 1; i <= points; ++i) {
            const double x = static_cast<double>(i) / (points + 1);
            out << fmt17(x);
            if (fz.left) {
                const double v = model.evaluate(x, 0.0);
                worst = std::max(worst, std::fabs(v));
                out << "," << fmt17(v);
            }
            if (fz.right) {
                const double v = model.evaluate(x, 1.0);
                worst = std::max(worst, std::fabs(v));
                out << "," << fmt17(v);
            }
            out << "\n";
        }
        out << "# max_abs=" << fmt17(worst) << "\n";
        if (worst > tol) throw CheckFailure("forced-zero residual " + fmt17(worst) + " exceeds tol");
        return 0;
    }

    if (model.kind() != plk::KernelModel::Kind::general_w1) {
        throw plk::UnsupportedKindError(
            "green verification sweeps the general kernel; pass --dirichlet for the limit kernels");
    }
    out << "# cmd=verify-green kernel=" << model.describe() << " points=" << points
        << " tol=" << fmt17(tol) << "\n";
    out << "x,jump_residual,bc_left,bc_right\n";
    double worst_jump = 0.0, worst_bc = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double x = static_cast<double>(i) / (points + 1);
        const double jump = model.jump_residual(x);
        const plk::BoundaryResiduals bc = model.boundary_residuals(x);
        worst_jump = std::max(worst_jump, std::fabs(jump));
        worst_bc = std::max({worst_bc, std::fabs(bc.left), std::fabs(bc.right)});
        out << fmt17(x) << "," << fmt17(jump) << "," << fmt17(bc.left) << "," << fmt17(bc.right) << "\n";
    }
    out << "# max_jump=" << fmt17(worst_jump) << " max_bc=" << fmt17(worst_bc) << "\n";
    if (worst_jump > tol || worst_bc > tol) {
        throw CheckFailure("green residual exceeds tol: max_jump=" + fmt17(worst_jump) +
                           " max_bc=" + fmt17(worst_bc));
    }
    return 0;
}

int cmd_rates(const std::string& function_id, const std::string& scheme_name,
              const std::string& levels_text, const std::string& r_text,
              const KernelSpecOpts& spec, bool have_kind, std::uint64_t seed, double rho,
              double band, int quad_order, Output& output) {
    const plk::TestFunction f = plk::find_function(function_id);
    const double r = parse_extended(r_text, "--r");
    const std::vector<int> levels = parse_levels(levels_text);
    seed = effective_seed(seed);

    plk::NodeScheme scheme;
    if (scheme_name == "uniform") {
        scheme = plk::NodeScheme::uniform();
    } else if (scheme_name == "random") {
        scheme = plk::NodeScheme::random(seed, rho);
    } else {
        throw std::invalid_argument("unknown node scheme \"" + scheme_name + "\"");
    }

    // The sharpest stated rate across the function's declared classes.
    std::optional<plk::SmoothnessSpace> space;
    std::optional<plk::ExponentPrediction> pred;
    for (const plk::Membership& m : f.memberships) {
        try {
            const plk::ExponentPrediction candidate = plk::predict_exponent(m.space, r);
            if (!pred || candidate.exponent > pred->exponent) {
                pred = candidate;
                space = m.space;
            }
        } catch (const std::invalid_argument&) {
            // class outside the stated rate table; skip it
        }
    }
    if (!pred) {
        throw std::invalid_argument("function \"" + f.id + "\" has no membership with a stated rate");
    }

    std::optional<plk::KernelModel> model;
    if (have_kind) model = build_model(spec);

    plk::RateSpec rate_spec{f.id, *space, r, pred->exponent, pred->source};
    const plk::RateStudy study = plk::run_study(rate_spec, f, model, scheme, levels, quad_order);

    auto& out = output.out();
    out << "# cmd=rates function=" << f.id << " scheme=" << scheme_name
        << " kernel=" << (model ? model->describe() : "direct") << " r=" << fmt17(r)
        << " seed=" << seed << " rho=" << fmt17(rho) << " quad_order=" << quad_order
        << " space=" << space->describe() << "\n";
    out << "n,h,error\n";
    for (const plk::RateRow& row : study.rows) {
        out << row.n << "," << fmt17(row.h) << "," << fmt17(row.error) << "\n";
    }
    std::string source = plk::to_string(pred->source);
    if (pred->superconvergence) source += ",superconv_W1";
    out << "# slope=" << fmt17(study.fitted_slope) << " r2=" << fmt17(study.r_squared)
        << " expected=" << fmt17(pred->exponent) << " source=" << source << "\n";

    if (std::fabs(study.fitted_slope - pred->exponent) > band) {
        throw CheckFailure("fitted slope " + fmt17(study.fitted_slope) + " deviates from expected " +
                           fmt17(pred->exponent) + " by more than " + fmt17(band));
    }
    return 0;
}

int cmd_quad(const std::string& function_id, const std::string& bound_id,
             const std::string& levels_text, const std::string& p_text, double alpha,
             int quad_order, Output& output) {
    const plk::TestFunction f = plk::find_function(function_id);
    const std::vector<int> levels = parse_levels(levels_text);

    const double reference = f.integral
                                 ? *f.integral
                                 : plk::integrate_panels(f.eval, 0.0, 1.0, f.singular_points,
                                                         f.singular_points, 24);

    // The bound's constant and seminorm do not depend on n; resolve them once.
    std::optional<plk::SmoothnessSpace> space;
    double seminorm_value = 0.0;
    bool rate_only = false;
    if (bound_id == "cu_a") {
        if (std::isnan(alpha)) throw std::invalid_argument("cu_a requires --alpha");
        space = plk::SmoothnessSpace::holder(0, alpha);
        seminorm_value = plk::inf_shifted_seminorm(f, *space, quad_order);
    } else if (bound_id == "cu_b") {
        const double p = parse_extended(p_text, "--p");
        space = plk::SmoothnessSpace::sobolev(p, 1.0);
        seminorm_value = plk::inf_shifted_seminorm(f, *space, quad_order);
    } else if (bound_id == "cu_c" || bound_id == "cu_c_rate_only") {
        if (std::isnan(alpha)) throw std::invalid_argument("cu_c requires --alpha");
        space = plk::SmoothnessSpace::holder(1, alpha);
        rate_only = true;
    } else if (bound_id == "cu_d") {
        const double p = parse_extended(p_text, "--p");
        space = plk::SmoothnessSpace::sobolev(p, 2.0);
        const auto stored = plk::stored_sobolev_seminorm(f, p, 2.0);
        seminorm_value = stored ? *stored : plk::seminorm(f, *space, quad_order);
    } else if (bound_id != "none") {
        throw std::invalid_argument("unknown bound id \"" + bound_id + "\"");
    }

    auto& out = output.out();
    out << "# cmd=quad function=" << f.id << " bound=" << bound_id << " quad_order=" << quad_order;
    if (space) out << " space=" << space->describe() << " seminorm=" << fmt17(seminorm_value);
    out << " I=" << fmt17(reference) << "\n";
    out << "n,Tn,I,abs_err,bound,satisfied\n";

    bool all_satisfied = true;
    for (int n : levels) {
        const plk::QuadratureRule rule = plk::trapezoid_rule(plk::NodeSet::uniform(n));
        const double tn = rule.apply(f.eval);
        const double abs_err = std::fabs(reference - tn);
        std::string bound_text, satisfied_text;
        if (space) {
            const std::string canonical = bound_id == "cu_c" ? "cu_c_rate_only" : bound_id;
            plk::BoundReport report = plk::trapezoid_bound(canonical, n, *space, seminorm_value);
            if (!rate_only && report.rhs) {
                report.with_lhs(abs_err);
                bound_text = fmt17(*report.rhs);
                satisfied_text = report.satisfied ? "1" : "0";
                all_satisfied = all_satisfied && report.satisfied;
            }
        }
        out << n << "," << fmt17(tn) << "," << fmt17(reference) << "," << fmt17(abs_err) << ","
            << bound_text << "," << satisfied_text << "\n";
    }
    if (!all_satisfied) throw CheckFailure("at least one trapezoid bound is violated");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"piecewise linear kernel interpolation toolkit"};
    app.require_subcommand(1);

    // kernel eval
    auto* kernel_cmd = app.add_subcommand("kernel", "kernel evaluation");
    kernel_cmd->require_subcommand(1);
    auto* eval_cmd = kernel_cmd->add_subcommand("eval", "evaluate K(x, y)");
    KernelSpecOpts eval_spec;
    add_kernel_options(eval_cmd, eval_spec);
    double eval_x = kUnset, eval_y = kUnset;
    int eval_grid = 0;
    std::string eval_output;
    eval_cmd->add_option("--x", eval_x, "first argument");
    eval_cmd->add_option("--y", eval_y, "second argument");
    eval_cmd->add_option("--grid", eval_grid, "emit an (n+1)^2 equispaced grid instead");
    eval_cmd->add_option("-o,--output", eval_output, "write CSV to a file instead of stdout");

    // verify green
    auto* verify_cmd = app.add_subcommand("verify", "verification checks");
    verify_cmd->require_subcommand(1);
    auto* green_cmd = verify_cmd->add_subcommand("green", "Green kernel residual sweep");
    KernelSpecOpts green_spec;
    add_kernel_options(green_cmd, green_spec);
    int green_points = 99;
    double green_tol = 1e-10;
    bool green_dirichlet = false;
    std::string green_output;
    green_cmd->add_option("--points", green_points, "number of interior sweep points")
        ->check(CLI::PositiveNumber);
    green_cmd->add_option("--tol", green_tol, "residual tolerance");
    green_cmd->add_flag("--dirichlet", green_dirichlet, "check forced zeros of a limit kernel");
    green_cmd->add_option("-o,--output", green_output, "write CSV to a file instead of stdout");

    // rates
    auto* rates_cmd = app.add_subcommand("rates", "interpolation refinement study");
    std::string rates_function, rates_scheme = "uniform", rates_levels = "16:512", rates_r = "2";
    KernelSpecOpts rates_spec;
    std::uint64_t rates_seed = 0;
    double rates_rho = 3.0, rates_band = 0.15;
    int rates_quad_order = 16;
    std::string rates_output;
    rates_cmd->add_option("--function", rates_function, "test function id, e.g. sin_pi or pow:0.75")
        ->required();
    rates_cmd->add_option("--scheme", rates_scheme, "node scheme: uniform | random");
    rates_cmd->add_option("--levels", rates_levels, "doubling range a:b or comma list");
    rates_cmd->add_option("--r", rates_r, "error norm order (inf allowed)");
    auto* rates_kind = rates_cmd->add_option("--kind", rates_spec.kind,
                                             "interpolate through a kernel model instead of directly");
    rates_cmd->add_option("--alpha0", rates_spec.alpha0, "");
    rates_cmd->add_option("--alpha1", rates_spec.alpha1, "");
    rates_cmd->add_option("--alpha2", rates_spec.alpha2, "");
    rates_cmd->add_option("--beta", rates_spec.beta, "");
    rates_cmd->add_option("--epsilon", rates_spec.epsilon, "");
    rates_cmd->add_option("--seed", rates_seed, "random scheme seed (PLK_SEED overrides)");
    rates_cmd->add_option("--rho", rates_rho, "quasi-uniformity ratio for random nodes");
    rates_cmd->add_option("--band", rates_band, "allowed |slope - expected| deviation");
    rates_cmd->add_option("--quad-order", rates_quad_order, "Gauss-Legendre points per panel");
    rates_cmd->add_option("-o,--output", rates_output, "write CSV to a file instead of stdout");

    // quad
    auto* quad_cmd = app.add_subcommand("quad", "trapezoid rule with error bounds");
    std::string quad_function, quad_bound = "none", quad_levels = "2:64", quad_p = "2";
    double quad_alpha = kUnset;
    int quad_quad_order = 16;
    std::string quad_output;
    quad_cmd->add_option("--function", quad_function, "test function id")->required();
    quad_cmd->add_option("--bound", quad_bound, "bound id: cu_a | cu_b | cu_c | cu_d | none");
    quad_cmd->add_option("--levels", quad_levels, "doubling range a:b or comma list");
    quad_cmd->add_option("--p", quad_p, "integrability index for cu_b/cu_d (inf allowed)");
    quad_cmd->add_option("--alpha", quad_alpha, "Holder exponent for cu_a/cu_c");
    quad_cmd->add_option("--quad-order", quad_quad_order, "Gauss-Legendre points per panel");
    quad_cmd->add_option("-o,--output", quad_output, "write CSV to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Output output;
        if (eval_cmd->parsed()) {
            output.open(eval_output);
            return cmd_kernel_eval(eval_spec, eval_x, eval_y, eval_grid, output);
        }
        if (green_cmd->parsed()) {
            output.open(green_output);
            return cmd_verify_green(green_spec, green_points, green_tol, green_dirichlet, output);
        }
        if (rates_cmd->parsed()) {
            output.open(rates_output);
            return cmd_rates(rates_function, rates_scheme, rates_levels, rates_r, rates_spec,
                             rates_kind->count() > 0, rates_seed, rates_rho, rates_band,
                             rates_quad_order, output);
        }
        if (quad_cmd->parsed()) {
            output.open(quad_output);
            return cmd_quad(quad_function, quad_bound, quad_levels, quad_p, quad_alpha,
                            quad_quad_order, output);
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const plk::DegenerateFitError& e) {
        std::cerr << "check failed: " << e.what()
                  << " (the function is reproduced exactly; no rate to fit)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
