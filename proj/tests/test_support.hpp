#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace test {

inline std::string data(const std::string& name) { return std::string(AVC_TEST_DATA) + "/" + name; }

// Entropy helpers kept separate from the library so oracle values are computed independently.
inline double h2(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x) / std::log(2.0) - (1.0 - x) * std::log(1.0 - x) / std::log(2.0);
}

inline double conv(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

inline std::vector<double> random_pmf(std::size_t n, std::mt19937_64& rng) {
    std::gamma_distribution<double> g(1.0, 1.0);
    std::vector<double> p(n);
    double s = 0.0;
    for (double& v : p) s += (v = g(rng));
    for (double& v : p) v /= s;
    return p;
}

}  // namespace test
