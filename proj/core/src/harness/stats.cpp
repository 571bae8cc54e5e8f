#include "airoas/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace airoas::harness {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double mu = mean(xs);
    double sum_sq = 0.0;
    for (double x : xs) sum_sq += (x - mu) * (x - mu);
    return std::sqrt(sum_sq / static_cast<double>(xs.size() - 1));
}

double standard_error(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    return sample_stddev(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

namespace {

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

}  // namespace

std::string summary_csv_header() {
    return "domain,solver,particles,episodes,mean_return,sem,sem_defined,median_return,"
           "min_return,max_return,mean_steps,mean_wall_s,total_wall_s";
}

std::string summary_csv_row(const SummaryRow& row) {
    std::ostringstream out;
    out << row.domain << ',' << row.solver << ',' << row.particles << ',' << row.episodes
        << ',' << fmt(row.mean_return) << ',' << fmt(row.sem) << ','
        << (row.sem_defined ? 1 : 0) << ',' << fmt(row.median_return) << ','
        << fmt(row.min_return) << ',' << fmt(row.max_return) << ',' << fmt(row.mean_steps)
        << ',' << fmt(row.mean_wall_s) << ',' << fmt(row.total_wall_s);
    return out.str();
}

SummaryRow parse_summary_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() != 13)
        throw std::invalid_argument("summary row: expected 13 fields, got " +
                                    std::to_string(fields.size()));
    SummaryRow row;
    row.domain = fields[0];
    row.solver = fields[1];
    row.particles = std::stoi(fields[2]);
    row.episodes = std::stoi(fields[3]);
    row.mean_return = std::stod(fields[4]);
    row.sem = std::stod(fields[5]);
    row.sem_defined = fields[6] == "1";
    row.median_return = std::stod(fields[7]);
    row.min_return = std::stod(fields[8]);
    row.max_return = std::stod(fields[9]);
    row.mean_steps = std::stod(fields[10]);
    row.mean_wall_s = std::stod(fields[11]);
    row.total_wall_s = std::stod(fields[12]);
    return row;
}

}  // namespace airoas::harness
