#include "plk/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace plk {

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53 mantissa bits, independent of the standard library's distribution internals.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

NodeSet::NodeSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("node set must not be empty");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(nodes_[i] >= 0.0 && nodes_[i] <= 1.0)) {
            throw std::invalid_argument("node " + std::to_string(i) + " lies outside [0, 1]");
        }
        if (i > 0) {
            if (nodes_[i] == nodes_[i - 1]) {
                throw std::invalid_argument("duplicate node value at index " + std::to_string(i));
            }
            if (nodes_[i] < nodes_[i - 1]) {
                throw std::invalid_argument("nodes must be strictly increasing");
            }
        }
    }
    double h = 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) h = std::max(h, nodes_[i] - nodes_[i - 1]);
    if (nodes_.front() > 0.0) h = std::max(h, nodes_.front());
    if (nodes_.back() < 1.0) h = std::max(h, 1.0 - nodes_.back());
    fill_distance_ = h;
}

NodeSet NodeSet::uniform(int panels) {
    if (panels < 1) throw std::invalid_argument("uniform node set needs at least one panel");
    std::vector<double> nodes(panels + 1);
    for (int i = 0; i <= panels; ++i) nodes[i] = static_cast<double>(i) / panels;
    return NodeSet(std::move(nodes));
}

NodeSet NodeSet::random_quasi_uniform(int panels, std::uint64_t seed, double rho, int max_attempts) {
    if (panels < 1) throw std::invalid_argument("random node set needs at least one panel");
    if (!(rho >= 1.0)) throw std::invalid_argument("quasi-uniformity ratio must be at least 1");
    std::mt19937_64 rng(seed);

    auto gap_ok = [rho](const std::vector<double>& nodes) {
        double lo = 1.0, hi = 0.0;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const double gap = nodes[i] - nodes[i - 1];
            lo = std::min(lo, gap);
            hi = std::max(hi, gap);
        }
        return lo > 0.0 && hi <= rho * lo;
    };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> nodes;
        nodes.reserve(panels + 1);
        nodes.push_back(0.0);
        for (int i = 0; i < panels - 1; ++i) nodes.push_back(uniform01(rng));
        nodes.push_back(1.0);
        std::sort(nodes.begin(), nodes.end());
        if (gap_ok(nodes)) return NodeSet(std::move(nodes));
    }

    // Jittered uniform grid: gaps lie in [(1 - 2d)/n, (1 + 2d)/n], so the
    // ratio is below rho whenever d < (rho - 1) / (2 (rho + 1)).
    const double d = 0.99 * (rho - 1.0) / (2.0 * (rho + 1.0));
    std::vector<double> nodes(panels + 1);
    nodes.front() = 0.0;
    nodes.back() = 1.0;
    for (int i = 1; i < panels; ++i) {
        nodes[i] = (i + d * (2.0 * uniform01(rng) - 1.0)) / panels;
    }
    return NodeSet(std::move(nodes));
}

double NodeSet::gap_ratio() const {
    if (nodes_.size() < 3) return 1.0;
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double gap = nodes_[i] - nodes_[i - 1];
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
    }
    return hi / lo;
}

}  // namespace plk
