#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "airoas/rng.hpp"

namespace airoas::domains {

/// Rectangular grid with blocked cells. Free cells carry compact ids
/// 0..free_count-1 used as positions in domain states.
class GridMap {
public:
    GridMap(int width, int height, const std::vector<std::uint8_t>& blocked);

    int width() const { return width_; }
    int height() const { return height_; }
    int free_count() const { return static_cast<int>(xy_of_cell_.size()); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }
    bool is_free(int x, int y) const {
        return in_bounds(x, y) && cell_of_xy_[index(x, y)] >= 0;
    }
    /// Compact id of the free cell at (x, y), or -1.
    int cell_at(int x, int y) const {
        return in_bounds(x, y) ? cell_of_xy_[index(x, y)] : -1;
    }
    std::pair<int, int> xy(int cell) const { return xy_of_cell_[cell]; }

    /// Moves one step in a cardinal direction (0=N, 1=E, 2=S, 3=W);
    /// blocked moves stay in place.
    int move(int cell, int direction) const;

    /// True when every free cell is reachable from every other one.
    bool connected() const;

    static int manhattan(std::pair<int, int> a, std::pair<int, int> b) {
        return std::abs(a.first - b.first) + std::abs(a.second - b.second);
    }

private:
    int index(int x, int y) const { return y * width_ + x; }

    int width_;
    int height_;
    std::vector<int> cell_of_xy_;
    std::vector<std::pair<int, int>> xy_of_cell_;
};

/// The standard 29-cell arena: a 10 x 2 corridor with a 3 x 3 block on top
/// of columns 5..7.
GridMap make_tag_map();

/// A width x height grid with `obstacles` blocked cells drawn from the
/// seed, redrawn until the free cells form one connected component.
GridMap make_random_obstacle_map(int width, int height, int obstacles, std::uint64_t seed);

/// Evasion step shared by the tag domains: with probability p/2 the
/// opponent moves one cell away from the agent along x, with p/2 along y,
/// otherwise it stays; blocked or ambiguous escape directions stay.
int opponent_flee(const GridMap& map, int agent_cell, int opponent_cell, double flee_prob,
                  Rng& rng);

/// Gaussian over cell centers, discretized to unit cells and normalized
/// over the free cells of a map. Sampling and density agree exactly, so
/// Metropolis-Hastings ratios built from it are exact.
class DiscreteGaussianKernel {
public:
    DiscreteGaussianKernel(const GridMap& map, int center_cell, double sigma);

    int sample(Rng& rng) const;
    double density(int cell) const;

private:
    std::vector<double> mass_;
    double total_;
};

}  // namespace airoas::domains
