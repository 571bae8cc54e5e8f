#include "airoas/domains/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace airoas::domains {

namespace {

constexpr int kDx[4] = {0, 1, 0, -1};
constexpr int kDy[4] = {1, 0, -1, 0};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Mass of the unit interval [c - 0.5, c + 0.5] under N(mu, sigma^2).
double interval_mass(double c, double mu, double sigma) {
    return normal_cdf((c + 0.5 - mu) / sigma) - normal_cdf((c - 0.5 - mu) / sigma);
}

}  // namespace

GridMap::GridMap(int width, int height, const std::vector<std::uint8_t>& blocked)
    : width_(width), height_(height), cell_of_xy_(width * height, -1) {
    if (blocked.size() != static_cast<std::size_t>(width * height))
        throw std::invalid_argument("GridMap: blocked mask size mismatch");
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (!blocked[index(x, y)]) {
                cell_of_xy_[index(x, y)] = static_cast<int>(xy_of_cell_.size());
                xy_of_cell_.emplace_back(x, y);
            }
        }
    }
}

int GridMap::move(int cell, int direction) const {
    const auto [x, y] = xy(cell);
    const int nx = x + kDx[direction];
    const int ny = y + kDy[direction];
    const int target = cell_at(nx, ny);
    return target >= 0 ? target : cell;
}

bool GridMap::connected() const {
    if (free_count() == 0) return false;
    std::vector<std::uint8_t> seen(free_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int cell = stack.back();
        stack.pop_back();
        for (int d = 0; d < 4; ++d) {
            const int next = move(cell, d);
            if (next != cell && !seen[next]) {
                seen[next] = 1;
                ++visited;
                stack.push_back(next);
            }
        }
    }
    return visited == free_count();
}

GridMap make_tag_map() {
    const int width = 10;
    const int height = 5;
    std::vector<std::uint8_t> blocked(width * height, 1);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < width; ++x) blocked[y * width + x] = 0;
    for (int y = 2; y < 5; ++y)
        for (int x = 5; x < 8; ++x) blocked[y * width + x] = 0;
    return GridMap(width, height, blocked);
}

GridMap make_random_obstacle_map(int width, int height, int obstacles, std::uint64_t seed) {
    Rng rng(seed);
    const int cells = width * height;
    if (obstacles >= cells)
        throw std::invalid_argument("make_random_obstacle_map: too many obstacles");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::uint8_t> blocked(cells, 0);
        int placed = 0;
        while (placed < obstacles) {
            const auto cell = static_cast<int>(rng.uniform_below(cells));
            if (!blocked[cell]) {
                blocked[cell] = 1;
                ++placed;
            }
        }
        GridMap map(width, height, blocked);
        if (map.connected()) return map;
    }
    throw std::runtime_error("make_random_obstacle_map: no connected layout found");
}

int opponent_flee(const GridMap& map, int agent_cell, int opponent_cell, double flee_prob,
                  Rng& rng) {
    const auto [ax, ay] = map.xy(agent_cell);
    const auto [ox, oy] = map.xy(opponent_cell);
    const double u = rng.uniform01();
    if (u < flee_prob / 2.0) {
        if (ox == ax) return opponent_cell;
        return map.move(opponent_cell, ox > ax ? 1 : 3);
    }
    if (u < flee_prob) {
        if (oy == ay) return opponent_cell;
        return map.move(opponent_cell, oy > ay ? 0 : 2);
    }
    return opponent_cell;
}

DiscreteGaussianKernel::DiscreteGaussianKernel(const GridMap& map, int center_cell,
                                               double sigma)
    : mass_(map.free_count(), 0.0), total_(0.0) {
    const auto [cx, cy] = map.xy(center_cell);
    for (int cell = 0; cell < map.free_count(); ++cell) {
        const auto [x, y] = map.xy(cell);
        mass_[cell] = interval_mass(x, cx, sigma) * interval_mass(y, cy, sigma);
        total_ += mass_[cell];
    }
    if (!(total_ > 0.0)) {
        // Sigma so small that every mass underflowed: collapse onto the center.
        mass_[center_cell] = 1.0;
        total_ = 1.0;
    }
}

int DiscreteGaussianKernel::sample(Rng& rng) const {
    const double target = rng.uniform01() * total_;
    double cumulative = 0.0;
    for (std::size_t cell = 0; cell < mass_.size(); ++cell) {
        cumulative += mass_[cell];
        if (target < cumulative) return static_cast<int>(cell);
    }
    return static_cast<int>(mass_.size()) - 1;
}

double DiscreteGaussianKernel::density(int cell) const { return mass_[cell] / total_; }

}  // namespace airoas::domains
