#include "lookknave/knave.hpp"

#include <numeric>

namespace lookknave {

namespace {

void append_description(BitWriter& out, std::uint64_t length, bool bit) {
    const unsigned width = unsigned(std::bit_width(length));
    if (width < BitString::word_bits) {
        out.append((length << 1) | (bit ? 0U : 1U), width + 1);
    } else {
        out.append(length, width);
        out.append(bit ? 0U : 1U, 1);
    }
}

std::pair<std::uint64_t, std::uint64_t> reduced(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

} // namespace

BitString knave_step(const BitString& s) {
    if (s.empty()) {
        throw Error(Errc::empty_input, "knave_step of an empty bit string");
    }
    BitWriter out;
    // Every run of length n costs bit_width(n) + 1 <= 2n output bits.
    out.reserve(2 * s.size());
    for_each_run(s, [&](bool bit, std::size_t length) { append_description(out, length, bit); });
    return std::move(out).finish();
}

std::size_t knave_step_length(const BitString& s) {
    std::size_t total = 0;
    for_each_run(s, [&](bool, std::size_t length) { total += std::size_t(std::bit_width(length)) + 1; });
    return total;
}

std::optional<bool> KnaveStream::next() {
    while (cursor_ == pending_.size()) {
        if (done_) {
            return std::nullopt;
        }
        pending_.clear();
        cursor_ = 0;
        auto emit = [this](bool b) { pending_.push_back(b); };
        if (auto symbol = source_()) {
            transducer_.push(*symbol, emit);
        } else {
            transducer_.finish(emit);
            done_ = true;
        }
    }
    return pending_[cursor_++];
}

Orbit orbit(const BitString& seed, std::size_t steps, std::size_t max_bits) {
    if (seed.empty()) {
        throw Error(Errc::empty_input, "orbit seed is empty");
    }
    Orbit result;
    if (steps == 0) {
        return result;
    }
    if (seed.size() > max_bits) {
        result.cap_exceeded = true;
        return result;
    }
    result.records.reserve(steps);
    result.records.push_back({1, seed, std::nullopt});
    for (std::size_t n = 2; n <= steps; ++n) {
        const BitString& prev = result.records.back().term;
        if (knave_step_length(prev) > max_bits) {
            result.cap_exceeded = true;
            break;
        }
        BitString next = knave_step(prev);
        auto ratio = reduced(next.size(), prev.size());
        result.records.push_back({n, std::move(next), ratio});
    }
    return result;
}

std::size_t stable_prefix(const BitString& seed, std::size_t m, std::size_t max_bits) {
    if (m == 0) {
        throw Error(Errc::out_of_range, "stable_prefix requires m >= 1");
    }
    if (seed.empty()) {
        throw Error(Errc::empty_input, "stable_prefix seed is empty");
    }
    BitString current = seed;
    for (std::size_t n = 1; n < m; ++n) {
        if (knave_step_length(current) > max_bits) {
            throw Error(Errc::cap_exceeded, "orbit term exceeds bit cap before s_m");
        }
        current = knave_step(current);
    }
    BitString later = current;
    for (int i = 0; i < 2; ++i) {
        if (knave_step_length(later) > max_bits) {
            throw Error(Errc::cap_exceeded, "orbit term exceeds bit cap before s_(m+2)");
        }
        later = knave_step(later);
    }
    return lcp(current, later);
}

std::string_view parity_name(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(std::string_view text) {
    if (text == "even") {
        return Parity::even;
    }
    if (text == "odd") {
        return Parity::odd;
    }
    throw Error(Errc::invalid_argument, "parity must be 'even' or 'odd', got '" + std::string(text) + "'");
}

BitString fixed_point_seed(Parity p) { return parse(p == Parity::even ? "10" : "1"); }

FixedPointCertificate fixed_point_prefix(Parity parity, std::size_t want_bits, std::size_t max_iterations,
                                         std::size_t max_bits) {
    if (want_bits == 0) {
        throw Error(Errc::out_of_range, "fixed_point_prefix requires want_bits >= 1");
    }
    FixedPointCertificate cert;
    cert.parity = parity;
    cert.seed = fixed_point_seed(parity);

    BitString current = cert.seed;
    BitString later = knave_step(knave_step(current));
    std::size_t iterations = 0;
    auto memory_cap = [&cert] {
        return FixedPointCapError(Errc::memory_cap_exceeded,
                                  "bit cap reached with " + std::to_string(cert.certified_bits) +
                                      " certified bits",
                                  cert);
    };
    for (std::size_t rounds = 0;; ++rounds) {
        const std::size_t agreed = lcp(current, later);
        if (agreed >= cert.certified_bits) {
            cert.certified_bits = agreed;
            cert.iterations = iterations;
            cert.prefix = current.prefix(agreed);
        }
        if (agreed >= want_bits) {
            return cert;
        }
        if (rounds == max_iterations) {
            throw FixedPointCapError(Errc::iteration_cap_exceeded,
                                     "iteration cap reached with " + std::to_string(cert.certified_bits) +
                                         " certified bits",
                                     cert);
        }
        if (knave_step_length(later) > max_bits) {
            throw memory_cap();
        }
        BitString middle = knave_step(later);
        if (knave_step_length(middle) > max_bits) {
            throw memory_cap();
        }
        current = std::move(later);
        later = knave_step(middle);
        iterations += 2;
    }
}

} // namespace lookknave
