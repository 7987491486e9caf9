#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lookknave/error.hpp"

namespace lookknave {

// Finite binary string packed 64 bits per word, leftmost bit in the most
// significant position of word 0. Bits past size() are always zero.
//
// As a point of 2^N a string ending in bit b stands for the sequence
// continued by infinitely many copies of !b.
class BitString {
public:
    static constexpr std::size_t word_bits = 64;

    BitString() = default;

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    // 0-based.
    bool operator[](std::size_t i) const noexcept {
        return (words_[i / word_bits] >> (word_bits - 1 - i % word_bits)) & 1U;
    }
    bool back() const noexcept { return (*this)[size_ - 1]; }

    void reserve(std::size_t bits) { words_.reserve((bits + word_bits - 1) / word_bits); }
    void clear() noexcept {
        words_.clear();
        size_ = 0;
    }

    void push_back(bool bit) { append_bits(bit ? 1U : 0U, 1); }

    // Appends the low `count` bits of `value`, most significant first.
    void append_bits(std::uint64_t value, unsigned count) {
        if (count == 0) {
            return;
        }
        const std::size_t offset = size_ % word_bits;
        const std::uint64_t aligned = value << (word_bits - count);
        if (offset == 0) {
            words_.push_back(aligned);
        } else {
            words_.back() |= aligned >> offset;
            if (offset + count > word_bits) {
                words_.push_back(aligned << (word_bits - offset));
            }
        }
        size_ += count;
    }

    void append_run(bool bit, std::size_t length);

    // The 64 bits starting at `pos`, left-aligned; positions past the end read as 0.
    std::uint64_t window(std::size_t pos) const noexcept {
        const std::size_t w = pos / word_bits;
        const std::size_t offset = pos % word_bits;
        if (w >= words_.size()) {
            return 0;
        }
        std::uint64_t hi = words_[w] << offset;
        if (offset != 0 && w + 1 < words_.size()) {
            hi |= words_[w + 1] >> (word_bits - offset);
        }
        return hi;
    }

    // Length of the maximal run of equal bits starting at `pos` (pos < size()).
    std::size_t run_length_at(std::size_t pos) const noexcept {
        const std::uint64_t flip = (*this)[pos] ? ~std::uint64_t{0} : 0;
        std::size_t length = 0;
        while (pos + length < size_) {
            const std::size_t avail = size_ - pos - length;
            const std::uint64_t diff = window(pos + length) ^ flip;
            const std::size_t same = diff == 0 ? word_bits : std::size_t(std::countl_zero(diff));
            if (same < word_bits || avail <= word_bits) {
                length += same < avail ? same : avail;
                break;
            }
            length += word_bits;
        }
        return length;
    }

    // Adopts packed words; bits past `size` are cleared.
    static BitString from_words(std::vector<std::uint64_t> words, std::size_t size);

    BitString prefix(std::size_t n) const;
    BitString complement() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    std::string to_string() const;

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Append-only builder that keeps the partial word in a register.
class BitWriter {
public:
    void reserve(std::size_t bits) { words_.reserve(bits / BitString::word_bits + 1); }

    // Low `count` bits of `value`, most significant first; 1 <= count <= 64.
    void append(std::uint64_t value, unsigned count) {
        const unsigned room = unsigned(BitString::word_bits) - fill_;
        if (count < room) {
            acc_ |= value << (room - count);
            fill_ += count;
            return;
        }
        const unsigned spill = count - room;
        acc_ |= spill == 0 ? value : value >> spill;
        words_.push_back(acc_);
        acc_ = spill == 0 ? 0 : value << (BitString::word_bits - spill);
        fill_ = spill;
    }

    std::size_t size() const noexcept { return words_.size() * BitString::word_bits + fill_; }

    BitString finish() && {
        const std::size_t total = size();
        if (fill_ != 0) {
            words_.push_back(acc_);
        }
        return BitString::from_words(std::move(words_), total);
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t acc_ = 0;
    unsigned fill_ = 0;
};

// One maximal ribbit (run of repeated bits).
struct Run {
    bool bit = false;
    std::size_t length = 0;

    friend bool operator==(const Run&, const Run&) = default;
};

// Calls f(bit, length) for each maximal run of s in order.
//
// Works a word at a time: bit j of `ends` is set when position j differs from
// position j + 1, i.e. a run ends at j.
template <typename F>
void for_each_run(const BitString& s, F&& f) {
    const std::size_t n = s.size();
    if (n == 0) {
        return;
    }
    const auto words = s.words();
    constexpr std::uint64_t top = std::uint64_t{1} << 63;
    std::size_t start = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const std::uint64_t w = words[i];
        const std::uint64_t carry = i + 1 < words.size() ? words[i + 1] >> 63 : 0;
        std::uint64_t ends = w ^ ((w << 1) | carry);
        const std::size_t base = i * BitString::word_bits;
        // Only positions before the last bit can end a run here.
        if (const std::size_t valid = n - 1 - base; valid < BitString::word_bits) {
            ends &= valid == 0 ? 0 : ~std::uint64_t{0} << (BitString::word_bits - valid);
        }
        while (ends != 0) {
            const unsigned lz = unsigned(std::countl_zero(ends));
            const std::size_t end = base + lz;
            f(((w << lz) & top) != 0, end - start + 1);
            start = end + 1;
            ends ^= top >> lz;
        }
    }
    f(s.back(), n - start);
}

// Base-2 representation of a positive integer, MSB first, no leading zeros.
class Numeral {
public:
    explicit Numeral(std::uint64_t value);

    std::uint64_t value() const noexcept { return value_; }
    unsigned width() const noexcept { return unsigned(std::bit_width(value_)); }
    BitString bits() const;
    std::string to_string() const;

private:
    std::uint64_t value_;
};

// Distance 2^-n between two points of 2^N, kept as the exponent n.
// An empty exponent means the two sequences are equal (distance 0).
struct Distance {
    std::optional<std::uint64_t> exponent;

    bool is_zero() const noexcept { return !exponent.has_value(); }

    friend bool operator==(const Distance&, const Distance&) = default;
    // Orders by the value 2^-n, so a larger exponent is a smaller distance.
    friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept {
        if (a.is_zero() || b.is_zero()) {
            return b.is_zero() <=> a.is_zero();
        }
        return *b.exponent <=> *a.exponent;
    }
};

BitString parse(std::string_view text);
std::vector<Run> decompose_runs(const BitString& s);
BitString concat_runs(std::span<const Run> runs);
Numeral numeral(std::int64_t n);
std::size_t lcp(const BitString& a, const BitString& b) noexcept;
Distance metric(const BitString& a, const BitString& b);
// First `length` bits of s, extended to the end of the run holding bit `length` (1-based).
BitString ribbit_extend(const BitString& s, std::size_t length);

} // namespace lookknave
