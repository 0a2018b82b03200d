#include "ricefield/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace ricefield {

std::vector<DensityBin> binned_density(const std::vector<double>& samples,
                                       double lo, double hi, double bin_width) {
    if (!(hi > lo) || !(bin_width > 0))
        throw std::invalid_argument("binned_density: bad range");
    std::size_t nb = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width));
    std::vector<DensityBin> bins(nb);
    for (std::size_t b = 0; b < nb; ++b)
        bins[b].center = lo + (static_cast<double>(b) + 0.5) * bin_width;

    std::size_t n = samples.size();
    for (double x : samples) {
        if (x < lo || x >= hi) continue;
        auto b = static_cast<std::size_t>((x - lo) / bin_width);
        if (b >= nb) b = nb - 1;
        ++bins[b].count;
    }
    if (n == 0) return bins;
    for (auto& bin : bins) {
        double p = static_cast<double>(bin.count) / static_cast<double>(n);
        bin.density = p / bin_width;
        bin.std_error =
            std::sqrt(p * (1.0 - p) / static_cast<double>(n)) / bin_width;
    }
    return bins;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
    if (p <= 0) return sorted_.front();
    if (p >= 1) return sorted_.back();
    auto idx = static_cast<std::size_t>(p * static_cast<double>(sorted_.size()));
    if (idx >= sorted_.size()) idx = sorted_.size() - 1;
    return sorted_[idx];
}

} // namespace ricefield
