#ifndef RICEFIELD_STATS_HPP
#define RICEFIELD_STATS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace ricefield {

/// Online mean / standard error accumulator (Welford).
class RunningStat {
public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }
    double std_error() const {
        return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0, m2_ = 0.0;
};

struct DensityBin {
    double center = 0.0;
    double density = 0.0;
    double std_error = 0.0; // binomial
    std::size_t count = 0;
};

/// Binned density estimate with binomial standard errors per bin.
std::vector<DensityBin> binned_density(const std::vector<double>& samples,
                                       double lo, double hi, double bin_width);

/// Empirical distribution function of a sample (sorts a copy on build).
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }
    double quantile(double p) const;

private:
    std::vector<double> sorted_;
};

} // namespace ricefield

#endif
