#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace plk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smoothness class a test function is known to belong to.
struct SmoothnessSpace {
    enum class Kind { holder, sobolev, besov };

    Kind kind{Kind::sobolev};
    int s{0};           // Holder: derivative order
    double alpha{0.0};  // Holder exponent, in (0, 1]
    double p{2.0};      // integrability index, in [1, inf]
    double q{2.0};      // secondary Besov index, in [1, inf]
    double sigma{0.0};  // smoothness order (Sobolev/Besov)

    static SmoothnessSpace holder(int s, double alpha);
    static SmoothnessSpace sobolev(double p, double sigma);
    /// Besov class; p == q collapses to the fractional Sobolev class.
    static SmoothnessSpace besov(double p, double q, double sigma);

    std::string describe() const;
};

struct Membership {
    SmoothnessSpace space;
    std::optional<double> value;    // seminorm (or norm) when known in closed form
    bool sigma_is_supremum{false};  // order is a supremum over admissible values, not attained
    std::string note;
};

/// Analytic test function on [0, 1] with optional derivatives, declared
/// singular points, and smoothness metadata.
struct TestFunction {
    std::string id;
    std::function<double(double)> eval;
    std::function<double(double)> d1;     // may be empty
    std::function<double(double)> d2;     // may be empty
    std::vector<double> singular_points;  // sorted, in [0, 1]
    std::vector<Membership> memberships;
    std::optional<double> integral;  // exact value of the integral over [0, 1], when known
    std::string notes;

    bool has_d1() const { return static_cast<bool>(d1); }
    bool has_d2() const { return static_cast<bool>(d2); }
    double operator()(double x) const { return eval(x); }
};

}  // namespace plk
