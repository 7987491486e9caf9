#include "lookknave/bitstring.hpp"

#include <algorithm>

namespace lookknave {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::non_binary_character: return "NonBinaryCharacter";
    case Errc::non_binary_symbol: return "NonBinarySymbol";
    case Errc::zero_or_negative: return "ZeroOrNegative";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::iteration_cap_exceeded: return "IterationCapExceeded";
    case Errc::memory_cap_exceeded: return "MemoryCapExceeded";
    case Errc::run_too_long: return "RunTooLong";
    case Errc::non_digit: return "NonDigit";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::cache_parse: return "CacheParse";
    }
    return "Unknown";
}

void BitString::append_run(bool bit, std::size_t length) {
    const std::uint64_t fill = bit ? ~std::uint64_t{0} : 0;
    while (length >= word_bits) {
        append_bits(fill, unsigned(word_bits));
        length -= word_bits;
    }
    append_bits(fill, unsigned(length));
}

BitString BitString::from_words(std::vector<std::uint64_t> words, std::size_t size) {
    BitString out;
    words.resize((size + word_bits - 1) / word_bits);
    if (const std::size_t rest = size % word_bits; rest != 0) {
        words.back() &= ~std::uint64_t{0} << (word_bits - rest);
    }
    out.words_ = std::move(words);
    out.size_ = size;
    return out;
}

BitString BitString::prefix(std::size_t n) const {
    BitString out;
    n = std::min(n, size_);
    const std::size_t full = n / word_bits;
    const std::size_t rest = n % word_bits;
    out.words_.assign(words_.begin(), words_.begin() + std::ptrdiff_t(full));
    if (rest != 0) {
        out.words_.push_back(words_[full] & (~std::uint64_t{0} << (word_bits - rest)));
    }
    out.size_ = n;
    return out;
}

BitString BitString::complement() const {
    BitString out = *this;
    for (auto& w : out.words_) {
        w = ~w;
    }
    if (const std::size_t rest = size_ % word_bits; rest != 0) {
        out.words_.back() &= ~std::uint64_t{0} << (word_bits - rest);
    }
    return out;
}

std::string BitString::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) {
            out[i] = '1';
        }
    }
    return out;
}

Numeral::Numeral(std::uint64_t value) : value_(value) {
    if (value == 0) {
        throw Error(Errc::zero_or_negative, "numeral of a non-positive integer");
    }
}

BitString Numeral::bits() const {
    BitString out;
    out.append_bits(value_, width());
    return out;
}

std::string Numeral::to_string() const { return bits().to_string(); }

BitString parse(std::string_view text) {
    if (text.empty()) {
        throw Error(Errc::empty_input, "empty bit string");
    }
    BitString out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') {
            throw Error(Errc::non_binary_character,
                        "non-binary character at position " + std::to_string(i + 1), i + 1);
        }
        out.push_back(c == '1');
    }
    return out;
}

std::vector<Run> decompose_runs(const BitString& s) {
    if (s.empty()) {
        throw Error(Errc::empty_input, "cannot decompose an empty bit string");
    }
    std::vector<Run> runs;
    for_each_run(s, [&](bool bit, std::size_t length) { runs.push_back({bit, length}); });
    return runs;
}

BitString concat_runs(std::span<const Run> runs) {
    BitString out;
    for (const Run& r : runs) {
        out.append_run(r.bit, r.length);
    }
    return out;
}

Numeral numeral(std::int64_t n) {
    if (n <= 0) {
        throw Error(Errc::zero_or_negative, "numeral requires n >= 1, got " + std::to_string(n));
    }
    return Numeral(std::uint64_t(n));
}

std::size_t lcp(const BitString& a, const BitString& b) noexcept {
    const std::size_t limit = std::min(a.size(), b.size());
    const auto wa = a.words();
    const auto wb = b.words();
    const std::size_t nwords = std::min(wa.size(), wb.size());
    for (std::size_t i = 0; i < nwords; ++i) {
        if (const std::uint64_t diff = wa[i] ^ wb[i]; diff != 0) {
            return std::min(limit, i * BitString::word_bits + std::size_t(std::countl_zero(diff)));
        }
    }
    return limit;
}

Distance metric(const BitString& a, const BitString& b) {
    if (a.empty() || b.empty()) {
        throw Error(Errc::empty_input, "metric of an empty bit string");
    }
    const std::size_t common = lcp(a, b);
    if (common < std::min(a.size(), b.size())) {
        return {common + 1};
    }
    if (a.size() == b.size()) {
        return {};
    }
    // The shorter string is exhausted: its tail is the complement of its last bit.
    const BitString& shorter = a.size() < b.size() ? a : b;
    const BitString& longer = a.size() < b.size() ? b : a;
    const bool tail = !shorter.back();
    const std::size_t pos = shorter.size();
    if (longer[pos] != tail) {
        return {pos + 1};
    }
    // longer[pos..] agrees with the tail until its run of `tail` ends; if that run
    // reaches the end, the longer string's own tail is !tail.
    return {pos + longer.run_length_at(pos) + 1};
}

BitString ribbit_extend(const BitString& s, std::size_t length) {
    if (length == 0 || length > s.size()) {
        throw Error(Errc::out_of_range, "ribbit_extend position " + std::to_string(length) +
                                            " outside 1.." + std::to_string(s.size()));
    }
    const std::size_t last = length - 1;
    // Walk back to the start of the run containing `last`, then measure it.
    std::size_t start = last;
    while (start > 0 && s[start - 1] == s[last]) {
        --start;
    }
    return s.prefix(start + s.run_length_at(start));
}

} // namespace lookknave
