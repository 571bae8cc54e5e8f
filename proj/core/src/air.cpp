#include "airoas/air.hpp"

#include <stdexcept>

namespace airoas {

double tempering_beta(double x) { return 1.0 / (1.0 + std::exp(-10.0 * (x - 0.5))); }

TemperingSchedule tempering_schedule(int k) {
    if (k < 2) throw std::invalid_argument("tempering_schedule: K must be at least 2");

    // Raw sigmoid over [1e-3, 1] spans [0.00676, 0.99331]; the bridging
    // endpoints must be exact so the first distribution is the transition
    // prior and the last is the posterior.
    TemperingSchedule schedule;
    schedule.betas.reserve(static_cast<std::size_t>(k) + 1);
    schedule.betas.push_back(0.0);
    const double lo = 1e-3;
    const double span = 1.0 - lo;
    for (int i = 0; i < k; ++i) {
        const double x = lo + span * static_cast<double>(i) / static_cast<double>(k - 1);
        schedule.betas.push_back(tempering_beta(x));
    }
    schedule.betas.back() = 1.0;
    return schedule;
}

}  // namespace airoas
