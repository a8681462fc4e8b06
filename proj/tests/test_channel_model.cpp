#include <fstream>

#include "avc/channel_model.hpp"
#include "avc/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avc;
using nlohmann::json;

namespace {

std::string field_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

json bsc_json() { return json::parse(std::ifstream(test::data("bsc_single.json"))); }

}  // namespace

TEST_SUITE("channel_model") {

TEST_CASE("product spec loads and round-trips") {
    const auto spec = load_spec_as<ParallelGaussianSpec>(test::data("ten_channel.json"), SpecKind::Product);
    CHECK(spec.d() == 10);
    CHECK(spec.constraints.gamma == 13.0);
    CHECK(spec.constraints.lambda == 8.0);
    CHECK(product_from_json(to_json(spec)) == spec);
}

TEST_CASE("discrete spec loads and round-trips") {
    const auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_pair.json"), SpecKind::Discrete);
    CHECK(spec.nt == 2);
    CHECK(spec.w(1, 0, 1, 1) == doctest::Approx(0.8));
    CHECK(discrete_from_json(to_json(spec)) == spec);
}

TEST_CASE("spectral and fading specs round-trip") {
    const auto ar = load_spec_as<SpectralSpec>(test::data("ar1.json"), SpecKind::Spectral);
    CHECK(spectral_from_json(to_json(ar)) == ar);
    const auto two = load_spec_as<SpectralSpec>(test::data("two_level.json"), SpecKind::Spectral);
    CHECK(spectral_from_json(to_json(two)) == two);
    const auto fad = load_spec_as<FadingSpec>(test::data("fading.json"), SpecKind::Fading);
    CHECK(fading_from_json(to_json(fad)) == fad);
}

TEST_CASE("validation names the offending field") {
    json p = {{"sigma2", {1.0, -2.0}}, {"gamma", 1.0}, {"lambda", 1.0}};
    CHECK(field_of([&] { product_from_json(p); }) == "sigma2[1]");
    p["sigma2"] = {1.0, 2.0};
    p["gamma"] = 0.0;
    CHECK(field_of([&] { product_from_json(p); }) == "gamma");
    p["gamma"] = 1.0;
    p["d"] = 3;
    CHECK(field_of([&] { product_from_json(p); }) == "d");

    json d = bsc_json();
    d["W"][0][1][0] = {0.5, 0.6};
    CHECK(field_of([&] { discrete_from_json(d); }) == "W[t=0][x=1][s=0]");
    d = bsc_json();
    d["P_T"] = {0.5, 0.5};
    CHECK(field_of([&] { discrete_from_json(d); }) == "P_T");
    d = bsc_json();
    d["l"] = {1, 2};
    CHECK(field_of([&] { discrete_from_json(d); }) == "l");
    d = bsc_json();
    d["phi"] = {0, -1};
    CHECK(field_of([&] { discrete_from_json(d); }).rfind("phi", 0) == 0);

    json s = {{"psd", {{"autocorr", {1.0, 0.8}}}}, {"gamma", 1.0}, {"lambda", 1.0}};
    CHECK(field_of([&] { spectral_from_json(s); }) == "psd.autocorr");
    s["psd"] = {{"grid", {1.0, 2.0, 3.0}}};
    CHECK_FALSE(field_of([&] { spectral_from_json(s); }).empty());
}

TEST_CASE("malformed input is a parse error") {
    CHECK_THROWS_AS(load_spec(test::data("missing.json"), SpecKind::Product), ParseError);
    CHECK_THROWS_AS(spec_from_json(json{{"gamma", 1.0}}, SpecKind::Product), ParseError);
    CHECK_THROWS_AS(parse_spec_kind("lattice"), Error);
}

TEST_CASE("psd on the midpoint grid") {
    CHECK(grid_frequency(0, 4) == doctest::Approx(-0.75 * std::numbers::pi));
    const SpectralSpec ar{AutocorrPsd{{1.0, 0.25}}, {1.0, 1.0}};
    const auto g = psd_on_grid(ar, 8);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(g[k] == doctest::Approx(1.0 + 0.5 * std::cos(grid_frequency(k, 8))).epsilon(1e-14));
    // A sampled PSD is piecewise constant: refining the grid repeats each sample.
    const SpectralSpec two{SampledPsd{{3.0, 1.0, 1.0, 3.0}}, {1.0, 1.0}};
    const auto fine = psd_on_grid(two, 8);
    CHECK(fine == std::vector<double>{3, 3, 1, 1, 1, 1, 3, 3});
}

}
