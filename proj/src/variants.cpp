#include "lookknave/variants.hpp"

#include <cmath>

namespace lookknave {

std::string looksay_step_decimal(std::string_view digits) {
    if (digits.empty()) {
        throw Error(Errc::empty_input, "look-say step of an empty digit string");
    }
    std::string out;
    out.reserve(2 * digits.size());
    std::size_t i = 0;
    while (i < digits.size()) {
        const char d = digits[i];
        if (d < '0' || d > '9') {
            throw Error(Errc::non_digit, "non-digit character at position " + std::to_string(i + 1), i + 1);
        }
        std::size_t j = i + 1;
        while (j < digits.size() && digits[j] == d) {
            ++j;
        }
        const std::size_t run = j - i;
        if (run > 9) {
            throw Error(Errc::run_too_long,
                        "run of " + std::to_string(run) + " '" + d + "' needs a multi-digit count", i + 1);
        }
        out += char('0' + run);
        out += d;
        i = j;
    }
    return out;
}

BitString looksay_step_binary(const BitString& s) {
    if (s.empty()) {
        throw Error(Errc::empty_input, "look-say step of an empty bit string");
    }
    BitWriter out;
    out.reserve(2 * s.size());
    for_each_run(s, [&](bool bit, std::size_t length) {
        out.append(length, unsigned(std::bit_width(length)));
        out.append(bit ? 1U : 0U, 1);
    });
    return std::move(out).finish();
}

std::string_view variant_name(Variant v) noexcept {
    switch (v) {
    case Variant::knave: return "knave";
    case Variant::looksay10: return "looksay10";
    case Variant::looksay2: return "looksay2";
    }
    return "unknown";
}

Variant parse_variant(std::string_view text) {
    for (Variant v : {Variant::knave, Variant::looksay10, Variant::looksay2}) {
        if (text == variant_name(v)) {
            return v;
        }
    }
    throw Error(Errc::invalid_argument, "unknown variant '" + std::string(text) + "'");
}

namespace {

// next_length(term) must equal the length of step(term); it lets the cap be
// checked before the next term is allocated.
template <typename Term, typename Step, typename NextLength>
GrowthSeries run_growth(Variant variant, Term term, std::size_t steps, std::size_t max_symbols, Step step,
                        NextLength next_length) {
    GrowthSeries series;
    series.variant = variant;
    for (std::size_t n = 1; n <= steps; ++n) {
        const std::size_t length = n == 1 ? term.size() : next_length(term);
        if (length > max_symbols) {
            series.cap_exceeded = true;
            break;
        }
        if (n > 1) {
            term = step(term);
        }
        GrowthPoint point{n, length, std::nullopt};
        if (!series.points.empty()) {
            point.ratio = double(length) / double(series.points.back().length);
        }
        series.points.push_back(point);
    }
    return series;
}

} // namespace

GrowthSeries growth_ratios(Variant variant, std::string_view seed, std::size_t steps, std::size_t max_symbols) {
    switch (variant) {
    case Variant::knave:
        return run_growth(variant, parse(seed), steps, max_symbols, knave_step, knave_step_length);
    case Variant::looksay2:
        // Same per-run cost as the Knave: numeral width plus one bit.
        return run_growth(variant, parse(seed), steps, max_symbols, looksay_step_binary, knave_step_length);
    case Variant::looksay10: {
        // Validate the seed up front so a bad seed fails even for steps <= 1.
        (void)looksay_step_decimal(seed);
        return run_growth(
            variant, std::string(seed), steps, max_symbols,
            [](const std::string& s) { return looksay_step_decimal(s); },
            [](const std::string& s) {
                std::size_t runs = 0;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    runs += i == 0 || s[i] != s[i - 1];
                }
                return 2 * runs;
            });
    }
    }
    throw Error(Errc::invalid_argument, "unknown variant");
}

GrowthEstimate estimate_lambda(std::span<const GrowthPoint> points) {
    if (points.size() < min_growth_points) {
        throw Error(Errc::insufficient_data, "need at least " + std::to_string(min_growth_points) +
                                                 " points, got " + std::to_string(points.size()));
    }
    GrowthEstimate est;
    for (const auto& p : points) {
        if (p.ratio) {
            est.ratios.push_back(*p.ratio);
        }
    }
    const auto window = points.subspan(points.size() / 2);
    est.n_lo = window.front().n;
    est.n_hi = window.back().n;

    const double count = double(window.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& p : window) {
        mean_x += double(p.n);
        mean_y += std::log(double(p.length));
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : window) {
        const double dx = double(p.n) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(double(p.length)) - mean_y);
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double sse = 0.0;
    for (const auto& p : window) {
        const double r = std::log(double(p.length)) - (intercept + slope * double(p.n));
        sse += r * r;
    }
    est.lambda_hat = std::exp(slope);
    est.residual = std::sqrt(sse / count);
    return est;
}

} // namespace lookknave
