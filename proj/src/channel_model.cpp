#include "avc/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "avc/errors.hpp"

namespace avc {

namespace {

constexpr double kStochasticTol = 1e-12;

using nlohmann::json;

const json& require(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ParseError(what + ": expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(what + ": expected a nonnegative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

std::vector<double> number_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], what + "[" + std::to_string(i) + "]"));
    return out;
}

Constraints constraints_from(const json& j) {
    return {number(require(j, "gamma"), "gamma"), number(require(j, "lambda"), "lambda")};
}

void put_constraints(json& j, const Constraints& c) {
    j["gamma"] = c.gamma;
    j["lambda"] = c.lambda;
}

void check_finite(const std::vector<double>& v, const std::string& field) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw ValidationError(field + "[" + std::to_string(i) + "]", "must be finite");
}

void check_pmf(const std::vector<double>& p, const std::string& field) {
    if (p.empty()) throw ValidationError(field, "must be nonempty");
    check_finite(p, field);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) throw ValidationError(field + "[" + std::to_string(i) + "]", "must be >= 0");
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
        throw ValidationError(field, "must sum to 1 (sum = " + std::to_string(sum) + ")");
}

void check_cost(const std::vector<double>& c, std::size_t size, const std::string& field) {
    if (c.size() != size)
        throw ValidationError(field, "expected " + std::to_string(size) + " entries");
    check_finite(c, field);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] < 0.0) throw ValidationError(field + "[" + std::to_string(i) + "]", "must be >= 0");
    if (*std::min_element(c.begin(), c.end()) != 0.0)
        throw ValidationError(field, "minimum cost must be exactly 0");
}

}  // namespace

SpecKind parse_spec_kind(const std::string& name) {
    if (name == "product") return SpecKind::Product;
    if (name == "spectral") return SpecKind::Spectral;
    if (name == "discrete") return SpecKind::Discrete;
    if (name == "fading") return SpecKind::Fading;
    throw ParseError("unknown spec kind '" + name + "'");
}

void validate(const Constraints& c) {
    if (!(std::isfinite(c.gamma) && c.gamma > 0.0)) throw ValidationError("gamma", "must be > 0");
    if (!(std::isfinite(c.lambda) && c.lambda > 0.0)) throw ValidationError("lambda", "must be > 0");
}

void validate(const ParallelGaussianSpec& spec) {
    if (spec.sigma2.empty()) throw ValidationError("sigma2", "need at least one channel");
    for (std::size_t j = 0; j < spec.sigma2.size(); ++j)
        if (!(std::isfinite(spec.sigma2[j]) && spec.sigma2[j] > 0.0))
            throw ValidationError("sigma2[" + std::to_string(j) + "]", "noise variance must be > 0");
    validate(spec.constraints);
}

void validate(const SpectralSpec& spec) {
    if (const auto* sampled = std::get_if<SampledPsd>(&spec.psd)) {
        const auto& v = sampled->values;
        if (v.empty()) throw ValidationError("psd.grid", "must be nonempty");
        check_finite(v, "psd.grid");
        const std::size_t m = v.size();
        for (std::size_t k = 0; k < m; ++k) {
            if (v[k] < 0.0) throw ValidationError("psd.grid[" + std::to_string(k) + "]", "must be >= 0");
            const double mirror = v[m - 1 - k];
            if (std::abs(v[k] - mirror) > 1e-12 * (1.0 + std::abs(v[k])))
                throw ValidationError("psd.grid[" + std::to_string(k) + "]",
                                      "not symmetric under w -> -w");
        }
    } else {
        const auto& r = std::get<AutocorrPsd>(spec.psd).r;
        if (r.empty()) throw ValidationError("psd.autocorr", "must be nonempty");
        check_finite(r, "psd.autocorr");
        const std::size_t grid = std::max<std::size_t>(4096, 16 * r.size());
        double scale = 0.0;
        for (double c : r) scale += std::abs(c);
        for (std::size_t k = 0; k <= grid; ++k) {
            // Endpoints 0 and pi plus the midpoint grid used for quadrature.
            const double w = (k == grid) ? 0.0 : grid_frequency(k, grid);
            const double psi = autocorr_psd_at(std::get<AutocorrPsd>(spec.psd), w);
            if (psi < -1e-12 * (1.0 + scale))
                throw ValidationError("psd.autocorr", "spectral density is negative at w = " +
                                                          std::to_string(w));
        }
        if (autocorr_psd_at(std::get<AutocorrPsd>(spec.psd), std::numbers::pi) < -1e-12 * (1.0 + scale))
            throw ValidationError("psd.autocorr", "spectral density is negative at w = pi");
    }
    validate(spec.constraints);
}

void validate(const DiscreteAVCSpec& spec) {
    if (spec.nx == 0) throw ValidationError("X", "alphabet must be nonempty");
    if (spec.ns == 0) throw ValidationError("S", "alphabet must be nonempty");
    if (spec.nt == 0) throw ValidationError("T", "alphabet must be nonempty");
    if (spec.ny == 0) throw ValidationError("Y", "alphabet must be nonempty");
    if (spec.kernel.size() != spec.nt * spec.nx * spec.ns * spec.ny)
        throw ValidationError("W", "shape does not match T x X x S x Y");
    for (std::size_t t = 0; t < spec.nt; ++t)
        for (std::size_t x = 0; x < spec.nx; ++x)
            for (std::size_t s = 0; s < spec.ns; ++s) {
                const std::string where = "W[t=" + std::to_string(t) + "][x=" + std::to_string(x) +
                                          "][s=" + std::to_string(s) + "]";
                double sum = 0.0;
                for (std::size_t y = 0; y < spec.ny; ++y) {
                    const double v = spec.w(t, x, s, y);
                    if (!std::isfinite(v) || v < 0.0) throw ValidationError(where, "entries must be >= 0");
                    sum += v;
                }
                if (std::abs(sum - 1.0) > kStochasticTol)
                    throw ValidationError(where, "row sums to " + std::to_string(sum) + ", not 1");
            }
    if (spec.param_type.size() != spec.nt) throw ValidationError("P_T", "expected T entries");
    check_pmf(spec.param_type, "P_T");
    check_cost(spec.input_cost, spec.nx, "phi");
    check_cost(spec.state_cost, spec.ns, "l");
    validate(spec.constraints);
}

void validate(const FadingSpec& spec) {
    if (spec.theta.empty()) throw ValidationError("theta", "need at least one coefficient");
    check_finite(spec.theta, "theta");
    if (spec.param_type.size() != spec.theta.size())
        throw ValidationError("P_T", "expected one probability per coefficient");
    check_pmf(spec.param_type, "P_T");
    if (!(std::isfinite(spec.sigma2) && spec.sigma2 > 0.0))
        throw ValidationError("sigma2", "noise variance must be > 0");
    validate(spec.constraints);
}

ParallelGaussianSpec product_from_json(const json& j) {
    ParallelGaussianSpec spec;
    spec.sigma2 = number_list(require(j, "sigma2"), "sigma2");
    spec.constraints = constraints_from(j);
    if (auto it = j.find("d"); it != j.end()) {
        if (count(*it, "d") != spec.sigma2.size())
            throw ValidationError("d", "does not match the length of sigma2");
    }
    validate(spec);
    return spec;
}

SpectralSpec spectral_from_json(const json& j) {
    SpectralSpec spec;
    const json& psd = require(j, "psd");
    if (!psd.is_object()) throw ParseError("psd: expected an object");
    const bool has_grid = psd.contains("grid");
    const bool has_autocorr = psd.contains("autocorr");
    if (has_grid == has_autocorr) throw ParseError("psd: exactly one of 'grid' or 'autocorr' is required");
    if (has_grid)
        spec.psd = SampledPsd{number_list(psd["grid"], "psd.grid")};
    else
        spec.psd = AutocorrPsd{number_list(psd["autocorr"], "psd.autocorr")};
    spec.constraints = constraints_from(j);
    validate(spec);
    return spec;
}

DiscreteAVCSpec discrete_from_json(const json& j) {
    DiscreteAVCSpec spec;
    spec.nx = count(require(j, "X"), "X");
    spec.ns = count(require(j, "S"), "S");
    spec.nt = count(require(j, "T"), "T");
    spec.ny = count(require(j, "Y"), "Y");
    const json& w = require(j, "W");
    auto expect_array = [](const json& a, std::size_t n, const std::string& what) {
        if (!a.is_array() || a.size() != n)
            throw ValidationError(what, "expected an array of " + std::to_string(n));
    };
    expect_array(w, spec.nt, "W");
    spec.kernel.reserve(spec.nt * spec.nx * spec.ns * spec.ny);
    for (std::size_t t = 0; t < spec.nt; ++t) {
        expect_array(w[t], spec.nx, "W[" + std::to_string(t) + "]");
        for (std::size_t x = 0; x < spec.nx; ++x) {
            expect_array(w[t][x], spec.ns, "W[" + std::to_string(t) + "][" + std::to_string(x) + "]");
            for (std::size_t s = 0; s < spec.ns; ++s) {
                const std::string where = "W[" + std::to_string(t) + "][" + std::to_string(x) + "][" +
                                          std::to_string(s) + "]";
                expect_array(w[t][x][s], spec.ny, where);
                for (std::size_t y = 0; y < spec.ny; ++y) spec.kernel.push_back(number(w[t][x][s][y], where));
            }
        }
    }
    spec.param_type = number_list(require(j, "P_T"), "P_T");
    spec.input_cost = number_list(require(j, "phi"), "phi");
    spec.state_cost = number_list(require(j, "l"), "l");
    spec.constraints = constraints_from(j);
    validate(spec);
    return spec;
}

FadingSpec fading_from_json(const json& j) {
    FadingSpec spec;
    spec.theta = number_list(require(j, "theta"), "theta");
    spec.param_type = number_list(require(j, "P_T"), "P_T");
    spec.sigma2 = number(require(j, "sigma2"), "sigma2");
    spec.constraints = constraints_from(j);
    validate(spec);
    return spec;
}

json to_json(const ParallelGaussianSpec& spec) {
    json j;
    j["d"] = spec.d();
    j["sigma2"] = spec.sigma2;
    put_constraints(j, spec.constraints);
    return j;
}

json to_json(const SpectralSpec& spec) {
    json j;
    if (const auto* sampled = std::get_if<SampledPsd>(&spec.psd))
        j["psd"] = {{"grid", sampled->values}};
    else
        j["psd"] = {{"autocorr", std::get<AutocorrPsd>(spec.psd).r}};
    put_constraints(j, spec.constraints);
    return j;
}

json to_json(const DiscreteAVCSpec& spec) {
    json j;
    j["X"] = spec.nx;
    j["S"] = spec.ns;
    j["T"] = spec.nt;
    j["Y"] = spec.ny;
    json w = json::array();
    for (std::size_t t = 0; t < spec.nt; ++t) {
        json wt = json::array();
        for (std::size_t x = 0; x < spec.nx; ++x) {
            json wx = json::array();
            for (std::size_t s = 0; s < spec.ns; ++s) {
                json row = json::array();
                for (std::size_t y = 0; y < spec.ny; ++y) row.push_back(spec.w(t, x, s, y));
                wx.push_back(std::move(row));
            }
            wt.push_back(std::move(wx));
        }
        w.push_back(std::move(wt));
    }
    j["W"] = std::move(w);
    j["P_T"] = spec.param_type;
    j["phi"] = spec.input_cost;
    j["l"] = spec.state_cost;
    put_constraints(j, spec.constraints);
    return j;
}

json to_json(const FadingSpec& spec) {
    json j;
    j["theta"] = spec.theta;
    j["P_T"] = spec.param_type;
    j["sigma2"] = spec.sigma2;
    put_constraints(j, spec.constraints);
    return j;
}

AnySpec spec_from_json(const json& j, SpecKind kind) {
    try {
        switch (kind) {
            case SpecKind::Product: return product_from_json(j);
            case SpecKind::Spectral: return spectral_from_json(j);
            case SpecKind::Discrete: return discrete_from_json(j);
            case SpecKind::Fading: return fading_from_json(j);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown spec kind");
}

json to_json(const AnySpec& spec) {
    return std::visit([](const auto& s) { return to_json(s); }, spec);
}

AnySpec load_spec(const std::filesystem::path& path, SpecKind kind) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return spec_from_json(j, kind);
}

double grid_frequency(std::size_t k, std::size_t grid) noexcept {
    return -std::numbers::pi + (static_cast<double>(k) + 0.5) * 2.0 * std::numbers::pi /
                                   static_cast<double>(grid);
}

double autocorr_psd_at(const AutocorrPsd& psd, double omega) noexcept {
    double value = psd.r.empty() ? 0.0 : psd.r[0];
    for (std::size_t l = 1; l < psd.r.size(); ++l)
        value += 2.0 * psd.r[l] * std::cos(static_cast<double>(l) * omega);
    return value;
}

std::vector<double> psd_on_grid(const SpectralSpec& spec, std::size_t grid) {
    std::vector<double> out(grid);
    if (const auto* sampled = std::get_if<SampledPsd>(&spec.psd)) {
        const std::size_t m = sampled->values.size();
        for (std::size_t k = 0; k < grid; ++k) {
            // Cell of the source grid containing the target midpoint.
            const std::size_t cell = std::min(m - 1, (2 * k + 1) * m / (2 * grid));
            out[k] = sampled->values[cell];
        }
    } else {
        const auto& ac = std::get<AutocorrPsd>(spec.psd);
        for (std::size_t k = 0; k < grid; ++k)
            out[k] = std::max(0.0, autocorr_psd_at(ac, grid_frequency(k, grid)));
    }
    return out;
}

}  // namespace avc
