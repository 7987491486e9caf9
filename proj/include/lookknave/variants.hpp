#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lookknave/bitstring.hpp"
#include "lookknave/knave.hpp"

namespace lookknave {

// Classic look-and-say: each run (d, n) becomes the decimal digit n followed by d.
// Runs of ten or more would need multi-digit counts and are rejected.
std::string looksay_step_decimal(std::string_view digits);

// Binary look-and-say: each run (b, n) becomes numeral(n) followed by b.
BitString looksay_step_binary(const BitString& s);

enum class Variant { knave, looksay10, looksay2 };

std::string_view variant_name(Variant v) noexcept;
Variant parse_variant(std::string_view text);

struct GrowthPoint {
    std::size_t n = 0;
    std::size_t length = 0;
    std::optional<double> ratio; // length / previous length, absent for n = 1
};

struct GrowthSeries {
    Variant variant = Variant::knave;
    std::vector<GrowthPoint> points;
    bool cap_exceeded = false;
};

// Term lengths of the orbit s_1 = seed .. s_steps. max_symbols caps the term
// length (bits, or digits for looksay10); the series stops before exceeding it.
GrowthSeries growth_ratios(Variant variant, std::string_view seed, std::size_t steps,
                           std::size_t max_symbols = default_max_bits);

struct GrowthEstimate {
    double lambda_hat = 0.0;
    std::size_t n_lo = 0;
    std::size_t n_hi = 0;
    std::vector<double> ratios;
    // Root-mean-square residual of the log-length fit over the window.
    double residual = 0.0;
};

inline constexpr std::size_t min_growth_points = 8;

// Least-squares line through (n, log length) over the last half of the points;
// lambda_hat = exp(slope).
GrowthEstimate estimate_lambda(std::span<const GrowthPoint> points);

} // namespace lookknave
