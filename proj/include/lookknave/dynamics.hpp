#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lookknave/bitstring.hpp"
#include "lookknave/knave.hpp"

namespace lookknave {

// ---------------------------------------------------------------------------
// Run-length bounds along an orbit

struct RibbitBoundReport {
    std::size_t first = 1;
    std::size_t last = 0; // index of the last term actually computed
    std::size_t max_ribbit = 0;
    std::size_t max_even_ribbit = 0; // longest run of 0s
    std::size_t witness_index = 0;   // first n where max_ribbit is attained
    std::size_t even_witness_index = 0;
    bool cap_exceeded = false;
};

// Scans the runs of s_1 = seed .. s_steps. Terms are produced one at a time and
// not retained.
RibbitBoundReport check_ribbit_bounds(const BitString& seed, std::size_t steps,
                                      std::size_t max_bits = default_max_bits);

// ---------------------------------------------------------------------------
// Images of ribbit pairs

struct ElementRow {
    std::string fragment;
    std::string expected;
    std::string actual;
    bool matches = false;
    bool no_shorter = false; // |k(r r')| >= |r r'|
};

struct ElementTableReport {
    std::vector<ElementRow> rows;

    std::size_t passed_rows() const noexcept;
    bool passed() const noexcept { return passed_rows() == rows.size(); }
};

struct ElementEntry {
    std::string_view fragment;
    std::string_view image;
};

// The sixteen (r r', k(r r')) pairs: a single leading 1, then every 0-run of
// length 1..3 followed by a 1-run of length 1..5 (runs read literally, no tail).
std::span<const ElementEntry> element_table() noexcept;
ElementTableReport check_element_table();

// ---------------------------------------------------------------------------
// Prefix stabilisation along the orbit of a seed

struct PrefixLemmaRow {
    std::size_t m = 0;
    std::size_t bound = 0;       // |ribbit_extend(s_m, m)|
    std::size_t lcp_same = 0;    // lcp(s_m, s_{m+2})
    std::size_t lcp_shifted = 0; // lcp(s_{m+1}, s_{m+3})
    bool passed = false;
};

struct PrefixLemmaReport {
    std::vector<PrefixLemmaRow> rows;
    bool cap_exceeded = false;

    bool passed() const noexcept;
};

// For m = 1..steps, checks both lcp(s_m, s_{m+2}) and lcp(s_{m+1}, s_{m+3})
// against |ribbit_extend(s_m, m)|.
PrefixLemmaReport check_prefix_lemma(const BitString& seed, std::size_t steps,
                                     std::size_t max_bits = default_max_bits);

// ---------------------------------------------------------------------------
// Leading-ribbit descent

struct LeadingRibbits {
    std::size_t after_one = 0; // leading 1-run of k(s)
    std::size_t after_two = 0; // leading 1-run of k(k(s))
    bool begins_10 = false;    // k(s) starts with "10"

    // after_one >= 2 implies after_two < after_one; otherwise k(s) starts with 10.
    bool descends() const noexcept { return after_one >= 2 ? after_two < after_one : begins_10; }
};

LeadingRibbits leading_ribbit_descent(const BitString& s);

// Smallest m <= max_steps such that k^m(seed) starts with one of `prefixes`.
std::optional<std::size_t> first_iterate_with_prefix(const BitString& seed, std::span<const BitString> prefixes,
                                                     std::size_t max_steps,
                                                     std::size_t max_bits = default_max_bits);

// ---------------------------------------------------------------------------
// Basins of the two fixed points of k^2

enum class Attractor { even, odd, undecided };

std::string_view attractor_name(Attractor a) noexcept;

struct BasinResult {
    BitString seed;
    Attractor attractor = Attractor::undecided;
    std::size_t steps_used = 0; // double steps applied
    std::size_t agreement_bits = 0;
};

// Certified prefixes of S_even and S_odd.
struct FixedPointPrefixes {
    BitString even;
    BitString odd;
};

FixedPointPrefixes compute_fixed_points(std::size_t certified_bits);

struct BasinOptions {
    std::size_t max_len = 12;
    std::size_t steps = 100; // double steps
    std::size_t threshold_bits = 64;
    std::size_t max_bits = default_max_bits;
    bool parallel = false;
};

// Iterates k^2 from `seed` until the iterate agrees with one fixed-point prefix
// on threshold_bits leading bits. Undecided when the step or bit cap is hit first.
BasinResult classify_seed(const BitString& seed, const FixedPointPrefixes& fixed, const BasinOptions& options);

// Every nonempty seed of length <= max_len, ordered by (length, value). The
// order and content do not depend on `parallel`.
std::vector<BasinResult> classify_basin(const FixedPointPrefixes& fixed, const BasinOptions& options);

struct BasinSummary {
    std::size_t even = 0;
    std::size_t odd = 0;
    std::size_t undecided = 0;
};

BasinSummary summarize(std::span<const BasinResult> results) noexcept;

// ---------------------------------------------------------------------------
// Distance of an orbit to the orbits of 1 and 10

struct TracePoint {
    std::size_t n = 0;
    Distance to_orbit_of_1;
    Distance to_orbit_of_10;
};

struct ConvergenceTrace {
    std::vector<TracePoint> points;
    bool cap_exceeded = false;
};

// d(k^n(seed), k^n(1)) and d(k^n(seed), k^n(10)) for n = 0..steps.
ConvergenceTrace convergence_trace(const BitString& seed, std::size_t steps,
                                   std::size_t max_bits = default_max_bits);

// ---------------------------------------------------------------------------
// Attraction suite

struct AttractionOptions {
    std::size_t random_seeds = 10'000;
    std::size_t max_random_len = 256;
    std::uint64_t rng_seed = 20240601;
    std::size_t prefix_max_steps = 64;
    BasinOptions basin;
};

struct AttractionReport {
    std::size_t random_seeds = 0;
    std::size_t descent_violations = 0;
    std::size_t missing_10_prefix = 0;
    std::size_t missing_canonical_prefix = 0;
    std::vector<std::string> counterexamples; // first few failing seeds
    BasinSummary basin;
    std::size_t basin_seeds = 0;

    bool passed() const noexcept {
        return descent_violations == 0 && missing_10_prefix == 0 && missing_canonical_prefix == 0 &&
               basin.undecided == 0;
    }
};

AttractionReport check_attraction(const AttractionOptions& options);

} // namespace lookknave
