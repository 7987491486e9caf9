#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lookknave/bitstring.hpp"

namespace lookknave {

inline constexpr std::size_t default_max_bits = std::size_t{1} << 27;
inline constexpr std::size_t default_max_iterations = 200;

// The Knave's description of s: for every run (b, n) in order, the numeral of n
// followed by !b. The result starts with 1 and ends with the complement of s's
// last bit, so the implied tails stay consistent.
BitString knave_step(const BitString& s);

// Length of knave_step(s) without building it.
std::size_t knave_step_length(const BitString& s);

// Push-mode run transducer. State is the current run bit and length only.
// There is no implied tail: the final run is described when finish() is called.
class KnaveTransducer {
public:
    // `emit` is called once per output bit.
    template <typename Emit>
    void push(int symbol, Emit&& emit) {
        if (symbol != 0 && symbol != 1) {
            throw Error(Errc::non_binary_symbol, "stream symbol " + std::to_string(symbol) + " is not 0 or 1");
        }
        const bool bit = symbol == 1;
        if (length_ != 0 && bit != bit_) {
            flush(emit);
        }
        bit_ = bit;
        ++length_;
    }

    template <typename Emit>
    void finish(Emit&& emit) {
        if (length_ != 0) {
            flush(emit);
        }
    }

    bool run_bit() const noexcept { return bit_; }
    std::uint64_t run_length() const noexcept { return length_; }

private:
    template <typename Emit>
    void flush(Emit& emit) {
        for (int i = std::bit_width(length_) - 1; i >= 0; --i) {
            emit(((length_ >> i) & 1U) != 0);
        }
        emit(!bit_);
        length_ = 0;
    }

    bool bit_ = false;
    std::uint64_t length_ = 0;
};

// Pull-mode adapter: reads symbols from `source` (std::nullopt = end of stream)
// and yields the description bit by bit. Streams compose, so chaining n of them
// computes the n-th iterate incrementally.
class KnaveStream {
public:
    using Source = std::function<std::optional<int>()>;

    explicit KnaveStream(Source source) : source_(std::move(source)) {}

    std::optional<bool> next();

private:
    Source source_;
    KnaveTransducer transducer_;
    std::vector<bool> pending_;
    std::size_t cursor_ = 0;
    bool done_ = false;
};

struct OrbitRecord {
    std::size_t n = 0;
    BitString term;
    // length(s_n) / length(s_{n-1}) in lowest terms; absent for n = 1.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> ratio;

    std::size_t length() const noexcept { return term.size(); }
};

struct Orbit {
    std::vector<OrbitRecord> records;
    bool cap_exceeded = false;
};

// s_1 = seed, s_{n+1} = knave_step(s_n), for n up to `steps`. Stops early with
// cap_exceeded set when a term would be longer than max_bits.
Orbit orbit(const BitString& seed, std::size_t steps, std::size_t max_bits = default_max_bits);

// lcp(s_m, s_{m+2}) on the orbit with s_1 = seed.
std::size_t stable_prefix(const BitString& seed, std::size_t m, std::size_t max_bits = default_max_bits);

enum class Parity { even, odd };

std::string_view parity_name(Parity p) noexcept;
Parity parse_parity(std::string_view text);
// "10" for even, "1" for odd.
BitString fixed_point_seed(Parity p);

struct FixedPointCertificate {
    Parity parity = Parity::odd;
    BitString prefix;
    std::size_t certified_bits = 0;
    // Single applications of the map: lcp(k^iterations(seed), k^(iterations+2)(seed)) >= certified_bits.
    std::size_t iterations = 0;
    BitString seed;
};

// Thrown when a cap stops fixed_point_prefix; carries the best certificate reached.
class FixedPointCapError : public Error {
public:
    FixedPointCapError(Errc code, const std::string& what, FixedPointCertificate partial)
        : Error(code, what), partial_(std::move(partial)) {}

    const FixedPointCertificate& partial() const noexcept { return partial_; }

private:
    FixedPointCertificate partial_;
};

// Iterates k twice at a time from the parity's seed until consecutive even
// iterates agree on at least want_bits leading bits.
FixedPointCertificate fixed_point_prefix(Parity parity, std::size_t want_bits,
                                         std::size_t max_iterations = default_max_iterations,
                                         std::size_t max_bits = default_max_bits);

} // namespace lookknave
