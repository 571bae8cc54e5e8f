#pragma once

#include <string>
#include <vector>

namespace airoas::harness {

double mean(const std::vector<double>& xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(const std::vector<double>& xs);
/// Standard error of the mean, stddev / sqrt(n); 0 (flagged upstream) for n = 1.
double standard_error(const std::vector<double>& xs);
double median(std::vector<double> xs);

/// One row of the experiment summary table.
struct SummaryRow {
    std::string domain;
    std::string solver;
    int particles = 0;
    int episodes = 0;
    double mean_return = 0.0;
    double sem = 0.0;
    bool sem_defined = true;
    double median_return = 0.0;
    double min_return = 0.0;
    double max_return = 0.0;
    double mean_steps = 0.0;
    double mean_wall_s = 0.0;
    double total_wall_s = 0.0;
};

std::string summary_csv_header();
std::string summary_csv_row(const SummaryRow& row);
SummaryRow parse_summary_csv_row(const std::string& line);

}  // namespace airoas::harness
