#include "plk/functions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace plk {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_integrability(double p, const char* name) {
    if (!(p >= 1.0)) throw std::invalid_argument(std::string(name) + " index must be in [1, inf]");
}

}  // namespace

SmoothnessSpace SmoothnessSpace::holder(int s, double alpha) {
    if (s < 0) throw std::invalid_argument("Holder derivative order must be nonnegative");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("Holder exponent must be in (0, 1]");
    SmoothnessSpace space;
    space.kind = Kind::holder;
    space.s = s;
    space.alpha = alpha;
    return space;
}

SmoothnessSpace SmoothnessSpace::sobolev(double p, double sigma) {
    check_integrability(p, "Sobolev p");
    if (!(sigma > 0.0)) throw std::invalid_argument("Sobolev order must be positive");
    SmoothnessSpace space;
    space.kind = Kind::sobolev;
    space.p = p;
    space.q = p;
    space.sigma = sigma;
    return space;
}

SmoothnessSpace SmoothnessSpace::besov(double p, double q, double sigma) {
    check_integrability(p, "Besov p");
    check_integrability(q, "Besov q");
    if (!(sigma > 0.0)) throw std::invalid_argument("Besov order must be positive");
    if (p == q) return sobolev(p, sigma);  // B^s_{p,p} is the fractional Sobolev class
    SmoothnessSpace space;
    space.kind = Kind::besov;
    space.p = p;
    space.q = q;
    space.sigma = sigma;
    return space;
}

std::string SmoothnessSpace::describe() const {
    switch (kind) {
        case Kind::holder:
            return "holder(s=" + std::to_string(s) + ",alpha=" + fmt_g(alpha) + ")";
        case Kind::sobolev:
            return "sobolev(p=" + fmt_g(p) + ",sigma=" + fmt_g(sigma) + ")";
        case Kind::besov:
            return "besov(p=" + fmt_g(p) + ",q=" + fmt_g(q) + ",sigma=" + fmt_g(sigma) + ")";
    }
    return "?";
}

}  // namespace plk
