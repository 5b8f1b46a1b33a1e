#pragma once

#include "apzeta/progression_weights.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace apzeta {

/// On-disk coefficient set. Serialized as
///   { "m": int, "divisors": [int], "a": [string-int], "b": [string-int],
///     "vanishing_order": int, "source": "paper" | "generated" }
/// with integers written as decimal strings.
struct CoefficientFixture {
    std::uint64_t m = 0;
    std::vector<std::uint64_t> divisors;
    RationalVector a;
    RationalVector b;
    std::size_t vanishing_order = 0;
    std::string source;

    friend bool operator==(const CoefficientFixture&, const CoefficientFixture&) = default;
};

/// A matched filter / weight pair ready for evaluation.
struct Representation {
    FilterCoefficients filter;
    SeriesWeights weights;
};

/// m = 2 gives the eta baseline; otherwise solve_filter with the default
/// kernel choice (MethodNotApplicable when d(m) < 4).
Representation generate_representation(std::uint64_t m);

CoefficientFixture make_fixture(const Representation& rep);

/// Deterministic text: key order as above, two-space indent, trailing newline.
std::string fixture_to_json(const CoefficientFixture& fixture);
/// Throws PreconditionError on malformed input or non-integer entries.
CoefficientFixture fixture_from_json(std::string_view text);

/// APZETA_FIXTURE_DIR if set, otherwise the fixtures/ directory of the source tree.
std::filesystem::path fixture_directory();
std::filesystem::path fixture_path(const std::filesystem::path& dir, std::uint64_t m);

std::optional<CoefficientFixture> load_fixture(const std::filesystem::path& dir, std::uint64_t m);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Rebuilds the filter and weights from a fixture, re-checking every
/// invariant (kernel membership, b derived from a, vanishing order).
Representation representation_from_fixture(const CoefficientFixture& fixture);

/// Stored fixture when one exists in fixture_directory(), else generated.
Representation load_or_generate(std::uint64_t m);

} // namespace apzeta
