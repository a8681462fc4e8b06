#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "avc/channel_model.hpp"
#include "avc/discrete_avc.hpp"
#include "avc/errors.hpp"
#include "avc/fading.hpp"
#include "avc/jamming_sim.hpp"
#include "avc/spectral.hpp"
#include "avc/units.hpp"
#include "avc/waterfill.hpp"
#include "json.hpp"

namespace avc::cli {

namespace {

using nlohmann::json;

struct Globals {
    double tol = 1e-6;
    std::string log_base = "2";
    std::uint64_t seed = 1;
    std::string out = "json";

    LogBase base() const { return log_base == "e" ? LogBase::E : LogBase::Two; }
};

/// What a subcommand hands back for serialization.
struct Envelope {
    explicit Envelope(std::string cmd, std::string spec_digest = {})
        : command(std::move(cmd)), digest(std::move(spec_digest)) {}

    std::string command;
    std::string digest;
    json parameters = json::object();
    json results = json::object();
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// 12 significant digits; non-finite values become strings since JSON has no infinity.
json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return std::stod(g12(v));
}

json nums(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

json matrix(std::span<const double> flat, std::size_t rows, std::size_t cols) {
    json m = json::array();
    for (std::size_t r = 0; r < rows; ++r) m.push_back(nums(flat.subspan(r * cols, cols)));
    return m;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

void emit(const Envelope& env, const Globals& g, std::ostream& out) {
    if (g.out == "csv") {
        for (std::size_t i = 0; i < env.header.size(); ++i) out << (i ? "," : "") << env.header[i];
        out << '\n';
        for (const auto& row : env.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << g12(row[i]);
            out << '\n';
        }
        return;
    }
    json j;
    j["command"] = env.command;
    j["spec_digest"] = env.digest;
    j["parameters"] = env.parameters;
    j["results"] = env.results;
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
}

SolverOptions solver_options(const Globals& g) {
    SolverOptions o;
    o.tolerance = g.tol;
    o.seed = g.seed;
    return o;
}

json base_parameters(const Globals& g) {
    return {{"tol", num(g.tol)}, {"log_base", g.log_base}, {"seed", g.seed}};
}

// ---------------------------------------------------------------------------

Envelope waterfill_product(const std::string& path, const Globals& g) {
    const auto spec = load_spec_as<ParallelGaussianSpec>(path, SpecKind::Product);
    const auto a = double_waterfill(spec);
    const auto u = g.base();
    Envelope env{"waterfill product", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters["spec"] = to_json(spec);
    const double random = product_payoff(spec.sigma2, a.p_star, a.n_star);
    env.results = {{"beta", num(a.beta)},
                   {"alpha", num(a.alpha)},
                   {"n_star", nums(a.n_star)},
                   {"p_star", nums(a.p_star)},
                   {"theta", num(a.alpha > 0.0 && a.beta > 0.0 ? (a.alpha - a.beta) / (a.alpha * a.beta) : 0.0)},
                   {"capacity_random", num(in_unit(random, u))},
                   {"capacity_deterministic", num(in_unit(deterministic_code_capacity_product(spec), u))}};
    env.header = {"j", "sigma2", "n_star", "p_star", "beta", "alpha", "capacity"};
    for (std::size_t j = 0; j < spec.d(); ++j)
        env.rows.push_back({double(j), spec.sigma2[j], a.n_star[j], a.p_star[j], a.beta, a.alpha, in_unit(random, u)});
    return env;
}

Envelope waterfill_spectral(const std::string& path, std::size_t grid, const Globals& g) {
    const auto spec = load_spec_as<SpectralSpec>(path, SpecKind::Spectral);
    const auto a = freq_double_waterfill(spec, grid);
    const double random = colored_capacity_from(a);
    const auto u = g.base();
    Envelope env{"waterfill spectral", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters["grid"] = grid;
    env.results = {{"beta", num(a.beta)},
                   {"alpha", num(a.alpha)},
                   {"capacity_random", num(in_unit(random, u))},
                   {"capacity_deterministic",
                    num(in_unit(spec.constraints.gamma > spec.constraints.lambda ? random : 0.0, u))},
                   {"omega", nums(a.omega)},
                   {"psi", nums(a.psi)},
                   {"b_star", nums(a.b_star)},
                   {"a_star", nums(a.a_star)}};
    env.header = {"omega", "psi", "b_star", "a_star"};
    for (std::size_t k = 0; k < a.omega.size(); ++k) env.rows.push_back({a.omega[k], a.psi[k], a.b_star[k], a.a_star[k]});
    return env;
}

json capacity_json(const CapacityResult& r, LogBase u) {
    json j = {{"value", num(in_unit(r.value, u))},
              {"upper", num(in_unit(r.upper, u))},
              {"lower", num(in_unit(r.lower, u))},
              {"gap", num(in_unit(r.gap, u))},
              {"iterations", r.iterations},
              {"p", matrix(r.p.flat(), r.p.rows(), r.p.cols())},
              {"q", matrix(r.q.flat(), r.q.rows(), r.q.cols())}};
    if (r.oracle_value) {
        j["oracle_value"] = num(in_unit(*r.oracle_value, u));
        j["oracle_slack"] = num(in_unit(*r.oracle_slack, u));
    }
    return j;
}

std::string branch_name(DeterministicCapacity::Branch b) {
    switch (b) {
        case DeterministicCapacity::Branch::Positive: return "positive";
        case DeterministicCapacity::Branch::Zero: return "zero";
        case DeterministicCapacity::Branch::Boundary: return "boundary";
    }
    return "unknown";
}

Envelope capacity_discrete(const std::string& path, std::size_t oracle_grid, bool det, const Globals& g) {
    const auto spec = load_spec_as<DiscreteAVCSpec>(path, SpecKind::Discrete);
    auto opts = solver_options(g);
    opts.oracle_grid = oracle_grid;
    const auto u = g.base();
    Envelope env{"capacity discrete", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters["oracle_grid"] = oracle_grid;
    env.parameters["det"] = det;
    const auto r = random_capacity_fixed_params(spec, opts);
    env.results["random"] = capacity_json(r, u);
    env.header = {"value", "upper", "lower", "gap"};
    env.rows.push_back({in_unit(r.value, u), in_unit(r.upper, u), in_unit(r.lower, u), in_unit(r.gap, u)});
    if (r.oracle_value) {
        env.header.insert(env.header.end(), {"oracle_value", "oracle_slack"});
        env.rows.back().insert(env.rows.back().end(), {in_unit(*r.oracle_value, u), in_unit(*r.oracle_slack, u)});
    }
    if (det) {
        opts.oracle_grid = 0;
        const auto d = deterministic_capacity_fixed_params(spec, opts);
        json dj = {{"value", num(in_unit(d.value, u))},
                   {"threshold", num(d.threshold)},
                   {"branch", branch_name(d.branch)},
                   {"boundary", d.boundary},
                   {"nonsymmetrizable", d.nonsymmetrizable}};
        env.results["deterministic"] = dj;
        env.header.insert(env.header.end(), {"det_value", "threshold", "boundary"});
        env.rows.back().insert(env.rows.back().end(), {in_unit(d.value, u), d.threshold, d.boundary ? 1.0 : 0.0});
    }
    return env;
}

Envelope capacity_fading(const std::string& path, bool det, const Globals& g) {
    const auto spec = load_spec_as<FadingSpec>(path, SpecKind::Fading);
    const auto u = g.base();
    Envelope env{"capacity fading", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters["det"] = det;
    const auto r = fading_random_capacity(spec);
    env.results["random"] = {{"value", num(in_unit(r.value, u))},
                             {"upper", num(in_unit(r.upper, u))},
                             {"lower", num(in_unit(r.lower, u))},
                             {"gap", num(in_unit(r.gap, u))},
                             {"omega", nums(r.allocation.omega)},
                             {"lambda", nums(r.allocation.lambda)}};
    env.header = {"theta", "P_T", "omega", "lambda"};
    for (std::size_t i = 0; i < spec.theta.size(); ++i)
        env.rows.push_back({spec.theta[i], spec.param_type[i], r.allocation.omega[i], r.allocation.lambda[i]});
    if (det) {
        const auto d = fading_det_capacity(spec);
        env.results["deterministic"] = {{"value", num(in_unit(d.value, u))},
                                        {"threshold", num(d.threshold)},
                                        {"boundary", d.boundary}};
    }
    return env;
}

Envelope capacity_scalar(double gamma, double lambda, double sigma2, const Globals& g) {
    validate(Constraints{gamma, lambda});
    if (!(std::isfinite(sigma2) && sigma2 > 0.0)) throw ValidationError("sigma2", "noise variance must be > 0");
    const auto c = scalar_capacity(gamma, lambda, sigma2);
    const auto u = g.base();
    Envelope env{"capacity scalar"};
    env.parameters = base_parameters(g);
    env.parameters.update({{"gamma", num(gamma)}, {"lambda", num(lambda)}, {"sigma2", num(sigma2)}});
    env.digest = sha256_hex(env.parameters.dump());
    env.results = {{"random", num(in_unit(c.random, u))}, {"deterministic", num(in_unit(c.deterministic, u))}};
    env.header = {"gamma", "lambda", "sigma2", "random", "deterministic"};
    env.rows.push_back({gamma, lambda, sigma2, in_unit(c.random, u), in_unit(c.deterministic, u)});
    return env;
}

Envelope capacity_colored(const std::string& path, std::size_t grid, const Globals& g) {
    const auto spec = load_spec_as<SpectralSpec>(path, SpecKind::Spectral);
    const auto c = colored_capacity(spec, grid);
    const auto u = g.base();
    Envelope env{"capacity colored", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters["grid"] = grid;
    env.results = {{"random", num(in_unit(c.random, u))}, {"deterministic", num(in_unit(c.deterministic, u))}};
    env.header = {"random", "deterministic"};
    env.rows.push_back({in_unit(c.random, u), in_unit(c.deterministic, u)});
    return env;
}

Envelope symmetrize(const std::string& path, std::size_t t, std::vector<double> p, const Globals& g) {
    const auto spec = load_spec_as<DiscreteAVCSpec>(path, SpecKind::Discrete);
    if (t >= spec.nt) throw ValidationError("t", "parameter index out of range");
    if (p.empty()) p.assign(spec.nx, 1.0 / double(spec.nx));
    if (p.size() != spec.nx) throw ValidationError("p", "expected one probability per input symbol");
    Envelope env{"symmetrize", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters.update({{"t", t}, {"p", nums(p)}});
    const auto sc = min_symm_cost(slice(spec, t), p, spec.state_cost);
    env.results["symmetrizable"] = sc.kernel.has_value();
    env.results["cost"] = num(sc.cost);
    env.header = {"x", "s", "J"};
    if (sc.kernel) {
        env.results["J"] = matrix(sc.kernel->j, spec.nx, spec.ns);
        env.results["residual"] = num(sc.kernel->residual);
        env.results["zero_one"] = sc.kernel->zero_one;
        for (std::size_t x = 0; x < spec.nx; ++x)
            for (std::size_t s = 0; s < spec.ns; ++s) env.rows.push_back({double(x), double(s), (*sc.kernel)(x, s)});
    }
    return env;
}

Envelope szego(const std::string& path, std::vector<std::size_t> n_list, std::size_t grid, const Globals& g) {
    const auto spec = load_spec_as<SpectralSpec>(path, SpecKind::Spectral);
    if (n_list.empty()) throw ValidationError("n", "need at least one dimension");
    const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
    const auto r = autocorr_from_psd(spec, n_max);
    const auto table = szego_convergence(r, spec.constraints.gamma, spec.constraints.lambda, n_list, grid);
    const auto u = g.base();
    Envelope env{"szego", file_digest(path)};
    env.parameters = base_parameters(g);
    env.parameters.update({{"n", n_list}, {"grid", grid}});
    json rows = json::array();
    env.header = {"n", "c_n", "gap"};
    for (const auto& row : table.rows) {
        rows.push_back({{"n", row.n}, {"c_n", num(in_unit(row.c_n, u))}, {"gap", num(in_unit(row.gap, u))}});
        env.rows.push_back({double(row.n), in_unit(row.c_n, u), in_unit(row.gap, u)});
    }
    env.results = {{"c_infinity", num(in_unit(table.c_infinity, u))}, {"rows", rows}, {"monotone", table.monotone}};
    return env;
}

Envelope simulate_cmd(SimConfig config, const Globals& g) {
    config.seed = g.seed;
    const auto rep = simulate(config);
    Envelope env{"simulate"};
    env.parameters = base_parameters(g);
    env.parameters.update({{"n", config.n},
                           {"rate", num(config.rate)},
                           {"gamma", num(config.gamma)},
                           {"lambda", num(config.lambda)},
                           {"sigma2", num(config.sigma2)},
                           {"strategy", to_string(config.strategy)},
                           {"trials", config.trials}});
    env.digest = sha256_hex(env.parameters.dump());
    env.results = {{"error_rate", num(rep.error_rate)},
                   {"half_width", num(rep.half_width)},
                   {"errors", rep.errors},
                   {"trials", rep.trials},
                   {"log2_messages", num(rep.log2_messages)},
                   {"explicit_codebook", rep.explicit_codebook},
                   {"strategy", to_string(rep.strategy)}};
    env.header = {"n", "rate", "error_rate", "half_width", "errors", "trials"};
    env.rows.push_back({double(config.n), config.rate, rep.error_rate, rep.half_width, double(rep.errors),
                        double(rep.trials)});
    return env;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Capacity tools for arbitrarily varying channels with fixed parameters", "avc"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "Solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--log-base", g.log_base, "Unit of reported capacities")->check(CLI::IsMember({"2", "e"}));
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "csv"}));

    std::function<Envelope()> action;
    std::string spec_path;
    std::size_t grid = kDefaultGrid;
    std::size_t oracle_grid = 0;
    bool det = false;

    auto* wf = app.add_subcommand("waterfill", "Double water filling allocations")->require_subcommand(1);
    auto* wf_product = wf->add_subcommand("product", "Parallel Gaussian channels");
    wf_product->add_option("--spec", spec_path, "Spec file")->required();
    wf_product->callback([&] { action = [&] { return waterfill_product(spec_path, g); }; });
    auto* wf_spectral = wf->add_subcommand("spectral", "Colored noise in the frequency domain");
    wf_spectral->add_option("--spec", spec_path, "Spec file")->required();
    wf_spectral->add_option("--grid", grid, "Frequency grid size")->check(CLI::Range(64, 1 << 24));
    wf_spectral->callback([&] { action = [&] { return waterfill_spectral(spec_path, grid, g); }; });

    auto* cap = app.add_subcommand("capacity", "Capacity evaluators")->require_subcommand(1);
    auto* cap_discrete = cap->add_subcommand("discrete", "Discrete AVC with fixed parameters");
    cap_discrete->add_option("--spec", spec_path, "Spec file")->required();
    cap_discrete->add_option("--oracle-grid", oracle_grid, "Grid oracle steps per simplex (0: off)");
    cap_discrete->add_flag("--det", det, "Also compute the deterministic-code capacity");
    cap_discrete->callback([&] { action = [&] { return capacity_discrete(spec_path, oracle_grid, det, g); }; });
    auto* cap_fading = cap->add_subcommand("fading", "Fixed-coefficient fading");
    cap_fading->add_option("--spec", spec_path, "Spec file")->required();
    cap_fading->add_flag("--det", det, "Also compute the deterministic-code capacity");
    cap_fading->callback([&] { action = [&] { return capacity_fading(spec_path, det, g); }; });
    double gamma = 0.0, lambda = 0.0, sigma2 = 0.0;
    auto* cap_scalar = cap->add_subcommand("scalar", "Scalar Gaussian AVC");
    cap_scalar->add_option("--gamma", gamma, "Input power")->required();
    cap_scalar->add_option("--lambda", lambda, "Jammer power")->required();
    cap_scalar->add_option("--sigma2", sigma2, "Noise variance")->required();
    cap_scalar->callback([&] { action = [&] { return capacity_scalar(gamma, lambda, sigma2, g); }; });
    auto* cap_colored = cap->add_subcommand("colored", "Colored Gaussian noise");
    cap_colored->add_option("--spec", spec_path, "Spec file")->required();
    cap_colored->add_option("--grid", grid, "Frequency grid size")->check(CLI::Range(64, 1 << 24));
    cap_colored->callback([&] { action = [&] { return capacity_colored(spec_path, grid, g); }; });

    std::size_t t_index = 0;
    std::vector<double> p_row;
    auto* sym = app.add_subcommand("symmetrize", "Cheapest symmetrizing kernel of one parameter slice");
    sym->add_option("--spec", spec_path, "Spec file")->required();
    sym->add_option("--t", t_index, "Parameter index")->required();
    sym->add_option("--p", p_row, "Input pmf used for the cost (default uniform)")->delimiter(',');
    sym->callback([&] { action = [&] { return symmetrize(spec_path, t_index, p_row, g); }; });

    std::vector<std::size_t> n_list{16, 64, 256, 1024};
    auto* sz = app.add_subcommand("szego", "Finite-n Toeplitz capacities against the spectral limit");
    sz->add_option("--spec", spec_path, "Spec file")->required();
    sz->add_option("--n", n_list, "Dimensions")->delimiter(',');
    sz->add_option("--grid", grid, "Frequency grid size")->check(CLI::Range(64, 1 << 24));
    sz->callback([&] { action = [&] { return szego(spec_path, n_list, grid, g); }; });

    SimConfig config;
    std::string strategy = "iid";
    auto* sim = app.add_subcommand("simulate", "Monte Carlo jamming experiment");
    sim->add_option("--n", config.n, "Blocklength")->required();
    sim->add_option("--rate", config.rate, "Rate in bits per channel use")->required();
    sim->add_option("--gamma", config.gamma, "Input power")->required();
    sim->add_option("--lambda", config.lambda, "Jammer power")->required();
    sim->add_option("--sigma2", config.sigma2, "Noise variance")->required();
    sim->add_option("--strategy", strategy, "iid or mimic")->check(CLI::IsMember({"iid", "mimic"}));
    sim->add_option("--trials", config.trials, "Number of trials")->required();
    sim->callback([&] {
        action = [&] {
            config.strategy = parse_strategy(strategy);
            return simulate_cmd(config, g);
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        emit(action(), g, out);
        return kOk;
    } catch (const SolverDidNotConverge& e) {
        err << "error: " << e.what() << " (residual " << g12(e.residual()) << ")\n";
        return kNoConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace avc::cli
