#include "lookknave/dynamics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <random>
#include <thread>

namespace lookknave {

namespace {

constexpr std::array<ElementEntry, 16> kElementTable{{
    {"1", "10"},
    {"01", "1110"},
    {"001", "10110"},
    {"0001", "11110"},
    {"011", "11100"},
    {"0011", "101100"},
    {"00011", "111100"},
    {"0111", "11110"},
    {"00111", "101110"},
    {"000111", "111110"},
    {"01111", "111000"},
    {"001111", "1011000"},
    {"0001111", "1111000"},
    {"011111", "111010"},
    {"0011111", "1011010"},
    {"00011111", "1111010"},
}};

// Advances `term` by one application of k, or returns false if that would exceed max_bits.
bool advance(BitString& term, std::size_t max_bits) {
    if (knave_step_length(term) > max_bits) {
        return false;
    }
    term = knave_step(term);
    return true;
}

bool starts_with(const BitString& s, const BitString& prefix) noexcept {
    return s.size() >= prefix.size() && lcp(s, prefix) == prefix.size();
}

BitString bits_of(std::uint64_t value, std::size_t length) {
    BitString s;
    s.append_bits(value, unsigned(length));
    return s;
}

template <typename F>
void parallel_for(std::size_t count, bool parallel, F&& body) {
    const std::size_t workers =
        parallel ? std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count)) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        });
    }
}

} // namespace

RibbitBoundReport check_ribbit_bounds(const BitString& seed, std::size_t steps, std::size_t max_bits) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "ribbit bound seed is empty");
    }
    RibbitBoundReport report;
    BitString term = seed;
    for (std::size_t n = 1; n <= steps; ++n) {
        if (n > 1 && !advance(term, max_bits)) {
            report.cap_exceeded = true;
            break;
        }
        for_each_run(term, [&](bool bit, std::size_t length) {
            if (length > report.max_ribbit) {
                report.max_ribbit = length;
                report.witness_index = n;
            }
            if (!bit && length > report.max_even_ribbit) {
                report.max_even_ribbit = length;
                report.even_witness_index = n;
            }
        });
        report.last = n;
    }
    return report;
}

std::size_t ElementTableReport::passed_rows() const noexcept {
    return std::size_t(std::count_if(rows.begin(), rows.end(),
                                     [](const ElementRow& r) { return r.matches && r.no_shorter; }));
}

std::span<const ElementEntry> element_table() noexcept { return kElementTable; }

ElementTableReport check_element_table() {
    ElementTableReport report;
    for (const auto& entry : kElementTable) {
        ElementRow row;
        row.fragment = entry.fragment;
        row.expected = entry.image;
        row.actual = knave_step(parse(entry.fragment)).to_string();
        row.matches = row.actual == row.expected;
        row.no_shorter = row.actual.size() >= row.fragment.size();
        report.rows.push_back(std::move(row));
    }
    return report;
}

bool PrefixLemmaReport::passed() const noexcept {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const PrefixLemmaRow& r) { return r.passed; });
}

PrefixLemmaReport check_prefix_lemma(const BitString& seed, std::size_t steps, std::size_t max_bits) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "prefix lemma seed is empty");
    }
    PrefixLemmaReport report;
    // Sliding window s_m .. s_{m+3}.
    std::array<BitString, 4> window{seed, seed, seed, seed};
    for (std::size_t i = 1; i < window.size(); ++i) {
        window[i] = window[i - 1];
        if (!advance(window[i], max_bits)) {
            report.cap_exceeded = true;
            return report;
        }
    }
    for (std::size_t m = 1; m <= steps; ++m) {
        PrefixLemmaRow row;
        row.m = m;
        row.lcp_same = lcp(window[0], window[2]);
        row.lcp_shifted = lcp(window[1], window[3]);
        if (m <= window[0].size()) {
            row.bound = ribbit_extend(window[0], m).size();
            row.passed = row.lcp_same >= row.bound && row.lcp_shifted >= row.bound;
        }
        report.rows.push_back(row);
        if (m == steps) {
            break;
        }
        std::rotate(window.begin(), window.begin() + 1, window.end());
        window[3] = window[2];
        if (!advance(window[3], max_bits)) {
            report.cap_exceeded = true;
            break;
        }
    }
    return report;
}

LeadingRibbits leading_ribbit_descent(const BitString& s) {
    if (s.empty()) {
        throw Error(Errc::empty_input, "leading_ribbit_descent of an empty bit string");
    }
    if (!s[0]) {
        throw Error(Errc::invalid_argument, "leading_ribbit_descent requires a string beginning with 1");
    }
    const BitString once = knave_step(s);
    const BitString twice = knave_step(once);
    LeadingRibbits out;
    out.after_one = once.run_length_at(0);
    out.after_two = twice.run_length_at(0);
    out.begins_10 = once.size() >= 2 && once[0] && !once[1];
    return out;
}

std::optional<std::size_t> first_iterate_with_prefix(const BitString& seed, std::span<const BitString> prefixes,
                                                     std::size_t max_steps, std::size_t max_bits) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "seed is empty");
    }
    BitString term = seed;
    for (std::size_t m = 0;; ++m) {
        for (const auto& p : prefixes) {
            if (starts_with(term, p)) {
                return m;
            }
        }
        if (m == max_steps || !advance(term, max_bits)) {
            return std::nullopt;
        }
    }
}

std::string_view attractor_name(Attractor a) noexcept {
    switch (a) {
    case Attractor::even: return "even";
    case Attractor::odd: return "odd";
    case Attractor::undecided: return "undecided";
    }
    return "undecided";
}

FixedPointPrefixes compute_fixed_points(std::size_t certified_bits) {
    return {fixed_point_prefix(Parity::even, certified_bits).prefix,
            fixed_point_prefix(Parity::odd, certified_bits).prefix};
}

BasinResult classify_seed(const BitString& seed, const FixedPointPrefixes& fixed, const BasinOptions& options) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "basin seed is empty");
    }
    BasinResult result;
    result.seed = seed;
    BitString term = seed;
    for (std::size_t d = 0;; ++d) {
        const std::size_t even = lcp(term, fixed.even);
        const std::size_t odd = lcp(term, fixed.odd);
        result.steps_used = d;
        result.agreement_bits = std::max(even, odd);
        if (result.agreement_bits >= options.threshold_bits && even != odd) {
            result.attractor = even > odd ? Attractor::even : Attractor::odd;
            return result;
        }
        if (d == options.steps || !advance(term, options.max_bits) || !advance(term, options.max_bits)) {
            return result;
        }
    }
}

std::vector<BasinResult> classify_basin(const FixedPointPrefixes& fixed, const BasinOptions& options) {
    for (const BitString* prefix : {&fixed.even, &fixed.odd}) {
        if (prefix->size() < options.threshold_bits) {
            throw Error(Errc::invalid_argument, "fixed-point prefixes are shorter than the agreement threshold");
        }
    }
    if (options.max_len == 0 || options.max_len >= 63) {
        throw Error(Errc::out_of_range, "basin max_len must be in 1..62");
    }
    std::vector<BitString> seeds;
    for (std::size_t len = 1; len <= options.max_len; ++len) {
        for (std::uint64_t value = 0; value < (std::uint64_t{1} << len); ++value) {
            seeds.push_back(bits_of(value, len));
        }
    }
    std::vector<BasinResult> results(seeds.size());
    parallel_for(seeds.size(), options.parallel,
                 [&](std::size_t i) { results[i] = classify_seed(seeds[i], fixed, options); });
    return results;
}

BasinSummary summarize(std::span<const BasinResult> results) noexcept {
    BasinSummary s;
    for (const auto& r : results) {
        switch (r.attractor) {
        case Attractor::even: ++s.even; break;
        case Attractor::odd: ++s.odd; break;
        case Attractor::undecided: ++s.undecided; break;
        }
    }
    return s;
}

ConvergenceTrace convergence_trace(const BitString& seed, std::size_t steps, std::size_t max_bits) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "convergence trace seed is empty");
    }
    ConvergenceTrace trace;
    BitString term = seed;
    BitString from_1 = parse("1");
    BitString from_10 = parse("10");
    for (std::size_t n = 0;; ++n) {
        trace.points.push_back({n, metric(term, from_1), metric(term, from_10)});
        if (n == steps) {
            break;
        }
        if (!advance(term, max_bits) || !advance(from_1, max_bits) || !advance(from_10, max_bits)) {
            trace.cap_exceeded = true;
            break;
        }
    }
    return trace;
}

AttractionReport check_attraction(const AttractionOptions& options) {
    AttractionReport report;
    const std::array<BitString, 1> ten{parse("10")};
    const std::array<BitString, 2> canonical{parse("1011110"), parse("101110")};
    auto note = [&report](const BitString& s) {
        if (report.counterexamples.size() < 8) {
            report.counterexamples.push_back(s.to_string());
        }
    };

    std::mt19937_64 rng(options.rng_seed);
    std::uniform_int_distribution<std::size_t> length_dist(1, options.max_random_len);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < options.random_seeds; ++i) {
        BitString seed;
        const std::size_t len = length_dist(rng);
        for (std::size_t j = 0; j < len; ++j) {
            seed.push_back(coin(rng));
        }
        ++report.random_seeds;
        // The descent argument is stated for strings that begin with 1.
        const BitString& start = seed[0] ? seed : knave_step(seed);
        if (!leading_ribbit_descent(start).descends()) {
            ++report.descent_violations;
            note(seed);
        }
        if (!first_iterate_with_prefix(seed, ten, options.prefix_max_steps, options.basin.max_bits)) {
            ++report.missing_10_prefix;
            note(seed);
        }
        if (!first_iterate_with_prefix(seed, canonical, options.prefix_max_steps, options.basin.max_bits)) {
            ++report.missing_canonical_prefix;
            note(seed);
        }
    }

    const auto fixed = compute_fixed_points(std::max<std::size_t>(options.basin.threshold_bits, 1024));
    const auto results = classify_basin(fixed, options.basin);
    report.basin_seeds = results.size();
    report.basin = summarize(results);
    for (const auto& r : results) {
        if (r.attractor == Attractor::undecided) {
            note(r.seed);
        }
    }
    return report;
}

} // namespace lookknave
