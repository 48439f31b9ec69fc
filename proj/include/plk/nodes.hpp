#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plk {

/// Strictly increasing interpolation points in [0, 1].
class NodeSet {
public:
    /// Throws std::invalid_argument on empty input, values outside [0, 1],
    /// unsorted input, or duplicate nodes.
    explicit NodeSet(std::vector<double> nodes);

    /// {i/n : i = 0..n}; n panels.
    static NodeSet uniform(int panels);

    /// n-1 interior uniform draws plus both endpoints, redrawn until the
    /// max/min gap ratio is at most rho. When rejection stalls (which it does
    /// for large n: iid draws almost never satisfy a small ratio) the nodes
    /// fall back to a seeded jittered uniform grid, which meets the ratio by
    /// construction. Deterministic for a fixed seed.
    static NodeSet random_quasi_uniform(int panels, std::uint64_t seed, double rho,
                                        int max_attempts = 200);

    std::span<const double> values() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }
    bool contains_zero() const { return nodes_.front() == 0.0; }
    bool contains_one() const { return nodes_.back() == 1.0; }
    bool has_both_endpoints() const { return contains_zero() && contains_one(); }

    /// Fill distance: the largest gap between consecutive nodes, counting the
    /// gap to an endpoint whenever that endpoint is absent, so it remains the
    /// covering radius of [0, 1].
    double fill_distance() const { return fill_distance_; }

    /// max gap / min gap over consecutive stored nodes (1 for fewer than 3 nodes).
    double gap_ratio() const;

private:
    std::vector<double> nodes_;
    double fill_distance_{0.0};
};

}  // namespace plk
