#include "apzeta/fixtures.hpp"

#include "apzeta/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace apzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json integer_strings(const RationalVector& v) {
    ordered_json out = ordered_json::array();
    for (const auto& q : v) {
        out.push_back(q.str());
    }
    return out;
}

RationalVector parse_integer_strings(const ordered_json& arr, const char* field) {
    if (!arr.is_array()) {
        throw PreconditionError(std::string("fixture field '") + field + "' must be an array");
    }
    RationalVector out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_string()) {
            throw PreconditionError(std::string("fixture field '") + field +
                                    "' must hold decimal strings");
        }
        Rational q = Rational::parse(item.get<std::string>());
        if (!q.is_integer()) {
            throw PreconditionError(std::string("fixture field '") + field +
                                    "' holds a non-integer");
        }
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace

Representation generate_representation(std::uint64_t m) {
    if (m == 2) {
        auto fc = FilterCoefficients::eta_baseline();
        auto sw = derive_weights(fc);
        return {std::move(fc), std::move(sw)};
    }
    auto fc = solve_filter(progression_modulus(m));
    auto sw = derive_weights(fc);
    return {std::move(fc), std::move(sw)};
}

CoefficientFixture make_fixture(const Representation& rep) {
    CoefficientFixture f;
    f.m = rep.filter.modulus().m;
    f.divisors = rep.filter.modulus().divisors;
    f.a = rep.filter.a();
    f.b = rep.weights.b();
    f.vanishing_order = rep.weights.vanishing_order();
    const auto published = published_filter(f.m);
    f.source = (rep.filter.is_baseline() || (published && *published == f.a)) ? "paper" : "generated";
    return f;
}

std::string fixture_to_json(const CoefficientFixture& fixture) {
    ordered_json j;
    j["m"] = fixture.m;
    j["divisors"] = fixture.divisors;
    j["a"] = integer_strings(fixture.a);
    j["b"] = integer_strings(fixture.b);
    j["vanishing_order"] = fixture.vanishing_order;
    j["source"] = fixture.source;
    return j.dump(2) + "\n";
}

CoefficientFixture fixture_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionError(std::string("fixture is not valid JSON: ") + e.what());
    }
    try {
        CoefficientFixture f;
        f.m = j.at("m").get<std::uint64_t>();
        f.divisors = j.at("divisors").get<std::vector<std::uint64_t>>();
        f.a = parse_integer_strings(j.at("a"), "a");
        f.b = parse_integer_strings(j.at("b"), "b");
        f.vanishing_order = j.at("vanishing_order").get<std::size_t>();
        f.source = j.at("source").get<std::string>();
        if (f.source != "paper" && f.source != "generated") {
            throw PreconditionError("fixture source must be 'paper' or 'generated'");
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed fixture: ") + e.what());
    }
}

std::filesystem::path fixture_directory() {
    if (const char* env = std::getenv("APZETA_FIXTURE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return APZETA_DEFAULT_FIXTURE_DIR;
}

std::filesystem::path fixture_path(const std::filesystem::path& dir, std::uint64_t m) {
    return dir / ("m" + std::to_string(m) + ".json");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PreconditionError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw PreconditionError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw PreconditionError("write failed for " + path.string());
    }
}

std::optional<CoefficientFixture> load_fixture(const std::filesystem::path& dir, std::uint64_t m) {
    const auto path = fixture_path(dir, m);
    if (!std::filesystem::exists(path)) {
        return std::nullopt;
    }
    return fixture_from_json(read_text_file(path));
}

Representation representation_from_fixture(const CoefficientFixture& fixture) {
    const ProgressionModulus pm = progression_modulus(fixture.m);
    if (pm.divisors != fixture.divisors) {
        throw PreconditionError("fixture divisor list does not match m=" + std::to_string(fixture.m));
    }
    auto fc = (fixture.m == 2 && fixture.a == FilterCoefficients::eta_baseline().a())
                  ? FilterCoefficients::eta_baseline()
                  : FilterCoefficients::from_kernel_vector(pm, fixture.a);
    SeriesWeights sw(pm, fixture.b);
    if (sw.b() != derive_weights(fc).b()) {
        throw PreconditionError("fixture weights b are not derived from its filter a");
    }
    if (sw.vanishing_order() != fixture.vanishing_order) {
        throw PreconditionError("fixture vanishing_order " + std::to_string(fixture.vanishing_order) +
                                " does not match the computed " +
                                std::to_string(sw.vanishing_order()));
    }
    return {std::move(fc), std::move(sw)};
}

Representation load_or_generate(std::uint64_t m) {
    if (auto fixture = load_fixture(fixture_directory(), m)) {
        return representation_from_fixture(*fixture);
    }
    return generate_representation(m);
}

} // namespace apzeta
