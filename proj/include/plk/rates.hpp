#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plk/function_bank.hpp"
#include "plk/interpolation.hpp"
#include "plk/quadrature.hpp"

namespace plk {

enum class RateSource { spline_a, spline_b, spline_c, spline_de, spline_f, superconv_w1 };

std::string to_string(RateSource source);

struct ExponentPrediction {
    double exponent{0.0};
    RateSource source{RateSource::spline_b};
    /// Set when the L2 power-space route applies as well (p = 2, r = 2,
    /// order in [1, 2]) and yields the same exponent.
    bool superconvergence{false};
};

/// Expected L_r convergence order of piecewise linear interpolation:
///   Holder(0, a):  a - (1/2 - 1/r)+           Holder(1, a): 1 + a - (1/2 - 1/r)+
///   W^1_p:         1 - (1/p - 1/r)+           W^s_p, Besov, s in (1, 2): s - (1/p - 1/r)+
///   W^2_p:         2 - (1/p - 1/r)+
double positive_part(double x);
ExponentPrediction predict_exponent(const SmoothnessSpace& space, double r);

/// ||f - s||_{L_r(0, 1)} with panels split at the interpolation nodes and f's
/// singular points; r = inf uses a dense per-panel maximum (65 samples/panel).
double measure_error(const TestFunction& f, const PiecewiseLinearInterpolant& s, double r,
                     int quad_order = 16);
double measure_error(const TestFunction& f, const KernelInterpolant& s, double r,
                     int quad_order = 16);

struct RateSpec {
    std::string function_id;
    SmoothnessSpace space;
    double r{2.0};
    double expected_exponent{0.0};
    RateSource source{RateSource::spline_b};
};

enum class NodeSchemeKind { uniform, random };

struct NodeScheme {
    NodeSchemeKind kind{NodeSchemeKind::uniform};
    std::uint64_t seed{0};
    double rho{3.0};

    static NodeScheme uniform() { return {}; }
    static NodeScheme random(std::uint64_t seed, double rho = 3.0) {
        return {NodeSchemeKind::random, seed, rho};
    }
};

struct RateRow {
    int n{0};
    double h{0.0};
    double error{0.0};
};

struct RateStudy {
    RateSpec spec;
    std::optional<KernelModel> model;  // nullopt: direct piecewise linear interpolation
    NodeScheme scheme;
    std::vector<int> levels;
    std::vector<RateRow> rows;
    double fitted_slope{0.0};
    double r_squared{0.0};
    int rows_used{0};
};

/// Refinement study over the given levels (n = panel counts). Per level the
/// nodes are built (uniform or seeded quasi-uniform random), f is
/// interpolated either through the kernel model or directly as a linear
/// spline, and the L_r error is recorded against the fill distance. The slope
/// comes from least squares on (log h, log error) over rows whose error
/// exceeds the 1e-13 floor; the two coarsest usable rows are dropped when at
/// least five are available. Throws DegenerateFitError with fewer than three
/// usable rows.
RateStudy run_study(const RateSpec& spec, const TestFunction& f,
                    const std::optional<KernelModel>& model, const NodeScheme& scheme,
                    const std::vector<int>& levels, int quad_order = 16);

/// Checks ||f - s||_{L_p} <= p^{-1/p} h |f - s|_{W^1_p} for p in [1, inf).
BoundReport check_sampling_inequality(const TestFunction& f, double p,
                                      const PiecewiseLinearInterpolant& s, int quad_order = 16);
BoundReport check_sampling_inequality(const TestFunction& f, double p, const KernelInterpolant& s,
                                      int quad_order = 16);

/// Checks the L2 superconvergence bound at order theta = 1, the only order
/// whose power-space norm is computable from the inner product:
///   ||f - P_n f||_{L2} <= h sqrt(<f, f>) / (sqrt(2) beta).
BoundReport check_superconvergence_bound(const TestFunction& f, const KernelParams& params,
                                         const NodeSet& nodes, double theta = 1.0,
                                         int quad_order = 16);

/// Whether f satisfies both Robin boundary conditions within tol.
bool satisfies_green_bc(const TestFunction& f, const KernelParams& params, double tol);

}  // namespace plk
