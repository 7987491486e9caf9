#pragma once

// Character-at-a-time reference implementations used only by the tests. They
// share no code with the library: runs are counted with plain integers and
// counts are formatted by repeated division.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<char, std::size_t>> runs(const std::string& s) {
    std::vector<std::pair<char, std::size_t>> out;
    for (char c : s) {
        if (!out.empty() && out.back().first == c) {
            ++out.back().second;
        } else {
            out.emplace_back(c, 1);
        }
    }
    return out;
}

inline std::string base2(std::size_t n) {
    std::string digits;
    while (n > 0) {
        digits.insert(digits.begin(), char('0' + n % 2));
        n /= 2;
    }
    return digits;
}

inline std::string knave(const std::string& s) {
    std::string out;
    for (const auto& [c, n] : runs(s)) {
        out += base2(n);
        out += c == '0' ? '1' : '0';
    }
    return out;
}

inline std::string looksay2(const std::string& s) {
    std::string out;
    for (const auto& [c, n] : runs(s)) {
        out += base2(n);
        out += c;
    }
    return out;
}

inline std::string looksay10(const std::string& s) {
    std::string out;
    for (const auto& [c, n] : runs(s)) {
        out += std::to_string(n);
        out += c;
    }
    return out;
}

inline std::vector<std::string> orbit(std::string seed, std::size_t steps) {
    std::vector<std::string> terms;
    for (std::size_t n = 1; n <= steps; ++n) {
        terms.push_back(seed);
        seed = knave(seed);
    }
    return terms;
}

inline std::size_t lcp(const std::string& a, const std::string& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) {
        ++i;
    }
    return i;
}

// The first `length` symbols of the sequence a string denotes: the string,
// then the complement of its last bit forever.
inline std::string expand(const std::string& s, std::size_t length) {
    std::string out = s;
    const char tail = s.back() == '0' ? '1' : '0';
    while (out.size() < length) {
        out += tail;
    }
    return out;
}

// 1-based first differing position, or 0 for equal sequences. Expanding past
// both strings by two symbols is enough: beyond that both tails are constant.
inline std::size_t first_difference(const std::string& a, const std::string& b) {
    const std::size_t horizon = std::max(a.size(), b.size()) + 2;
    const std::string ea = expand(a, horizon);
    const std::string eb = expand(b, horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
        if (ea[i] != eb[i]) {
            return i + 1;
        }
    }
    return 0;
}

inline std::string ribbit_extend(const std::string& s, std::size_t length) {
    std::size_t end = length;
    while (end < s.size() && s[end] == s[length - 1]) {
        ++end;
    }
    return s.substr(0, end);
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::bernoulli_distribution coin(0.5);
    std::string s(len(rng), '0');
    for (char& c : s) {
        c = coin(rng) ? '1' : '0';
    }
    return s;
}

} // namespace oracle
