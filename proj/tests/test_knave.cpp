#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "lookknave/fixed_point_cache.hpp"
#include "lookknave/knave.hpp"
#include "oracle.hpp"

using namespace lookknave;

namespace {

const std::vector<std::string> kOrbitOfOne{
    "1",
    "10",
    "1011",
    "1011100",
    "1011110101",
    "1011100011101110",
    "10111101111101111011",
    "1011100011101011100011100",
    "1011110111110111011110111110101",
    "101110001110101111011100011101011101110",
};

std::string step(const std::string& s) { return knave_step(parse(s)).to_string(); }

std::string stream_step(const std::string& s) {
    std::size_t i = 0;
    KnaveStream stream([&]() -> std::optional<int> {
        if (i == s.size()) {
            return std::nullopt;
        }
        return s[i++] - '0';
    });
    std::string out;
    while (auto bit = stream.next()) {
        out += *bit ? '1' : '0';
    }
    return out;
}

} // namespace

TEST_CASE("knave_step examples") {
    CHECK(step("1") == "10");
    CHECK(step("110") == "10011");
    CHECK(step("1011") == "1011100");
    CHECK(step("1011100") == "1011110101");
    CHECK(oracle::knave("00000") == "1011");
    CHECK(step("00000") == "1011");
    CHECK_THROWS_AS((void)knave_step(BitString{}), Error);
}

TEST_CASE("k is not injective") {
    CHECK(step("10") == "1011");
    CHECK(step("00000") == "1011");
    // The complement of the printed preimage 11111 lands on 1010 instead.
    CHECK(step("11111") == "1010");
}

TEST_CASE("knave_step_length matches the built term") {
    for (const auto& s : kOrbitOfOne) {
        CHECK(knave_step_length(parse(s)) == step(s).size());
    }
}

TEST_CASE("streaming transducer") {
    CHECK(stream_step("1011") == "1011100");
    CHECK(stream_step("1") == "10");
    CHECK(stream_step("") == "");

    SUBCASE("a million alternating bits") {
        std::size_t i = 0;
        KnaveStream stream([&]() -> std::optional<int> {
            if (i == 1'000'000) {
                return std::nullopt;
            }
            return int(i++ % 2 == 0);
        });
        std::size_t count = 0;
        bool pattern_ok = true;
        while (auto bit = stream.next()) {
            // Runs alternate 1,0,1,0,... and each is described as "1" + complement.
            const bool expected = count % 4 != 1;
            pattern_ok = pattern_ok && *bit == expected;
            ++count;
        }
        CHECK(count == 2'000'000);
        CHECK(pattern_ok);
    }

    SUBCASE("rejects non-binary symbols") {
        KnaveTransducer t;
        CHECK_THROWS_AS(t.push(2, [](bool) {}), Error);
    }

    SUBCASE("streams chain into iterates") {
        const std::string seed = "1";
        std::size_t i = 0;
        KnaveStream first([&]() -> std::optional<int> {
            if (i == seed.size()) {
                return std::nullopt;
            }
            return seed[i++] - '0';
        });
        KnaveStream second([&]() -> std::optional<int> {
            auto b = first.next();
            return b ? std::optional<int>(*b ? 1 : 0) : std::nullopt;
        });
        std::string out;
        while (auto bit = second.next()) {
            out += *bit ? '1' : '0';
        }
        CHECK(out == "1011");
    }
}

TEST_CASE("orbit reproduces the first ten terms of the orbit of 1") {
    const Orbit o = orbit(parse("1"), 10);
    REQUIRE(o.records.size() == 10);
    CHECK_FALSE(o.cap_exceeded);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(o.records[i].n == i + 1);
        CHECK(o.records[i].term.to_string() == kOrbitOfOne[i]);
    }
    CHECK_FALSE(o.records[0].ratio);
    CHECK(*o.records[9].ratio == std::pair<std::uint64_t, std::uint64_t>{39, 31});
    CHECK(*o.records[1].ratio == std::pair<std::uint64_t, std::uint64_t>{2, 1});

    const Orbit single = orbit(parse("1"), 1);
    REQUIRE(single.records.size() == 1);
    CHECK(single.records[0].term.to_string() == "1");

    const Orbit nine = orbit(parse("1"), 9);
    CHECK(nine.records.back().term.to_string() == "1011110111110111011110111110101");
    CHECK(nine.records.back().length() == 31);

    CHECK(orbit(parse("1"), 0).records.empty());
    CHECK_THROWS_AS((void)orbit(BitString{}, 3), Error);
}

TEST_CASE("orbit stops at the bit cap") {
    const Orbit o = orbit(parse("1"), 50, 30);
    CHECK(o.cap_exceeded);
    REQUIRE(o.records.size() == 8); // s_9 has 31 bits
    CHECK(o.records.back().length() == 25);
}

TEST_CASE("stable_prefix") {
    // Oracle: naive orbit and character comparison.
    const auto terms = oracle::orbit("1", 8);
    CHECK(oracle::lcp(terms[3], terms[5]) == 7);
    CHECK(oracle::lcp(terms[4], terms[6]) == 8);
    CHECK(stable_prefix(parse("1"), 4) == 7);
    CHECK(stable_prefix(parse("1"), 5) == 8);
    CHECK(stable_prefix(parse("1"), 1) == 1);
    CHECK_THROWS_AS((void)stable_prefix(parse("1"), 0), Error);
    CHECK_THROWS_AS((void)stable_prefix(parse("1"), 30, 100), Error);
}

TEST_CASE("stable_prefix is nondecreasing along the orbit of 1") {
    std::size_t previous = 0;
    for (std::size_t m = 1; m <= 60; ++m) {
        const std::size_t current = stable_prefix(parse("1"), m);
        CHECK(current >= previous);
        previous = current;
    }
}

TEST_CASE("fixed_point_prefix") {
    const auto odd = fixed_point_prefix(Parity::odd, 8, 100);
    CHECK(odd.certified_bits >= 8);
    CHECK(odd.prefix.to_string().starts_with("10111101"));
    CHECK(odd.seed.to_string() == "1");

    const auto even = fixed_point_prefix(Parity::even, 7, 100);
    CHECK(even.certified_bits >= 7);
    CHECK(even.prefix.to_string().starts_with("1011100"));
    CHECK(even.seed.to_string() == "10");

    const auto one = fixed_point_prefix(Parity::even, 1, 100);
    CHECK(one.prefix[0]);

    CHECK_THROWS_AS((void)fixed_point_prefix(Parity::odd, 0), Error);
}

TEST_CASE("certificate invariants hold") {
    for (Parity p : {Parity::even, Parity::odd}) {
        const auto cert = fixed_point_prefix(p, 300);
        CHECK(cert.certified_bits <= cert.prefix.size());
        CHECK(cert.iterations % 2 == 0);
        BitString a = cert.seed;
        for (std::size_t i = 0; i < cert.iterations; ++i) {
            a = knave_step(a);
        }
        const BitString b = knave_step(knave_step(a));
        CHECK(lcp(a, b) >= cert.certified_bits);
        CHECK(lcp(a, cert.prefix) == cert.prefix.size());
    }
}

TEST_CASE("fixed_point_prefix reports caps with a partial certificate") {
    try {
        (void)fixed_point_prefix(Parity::odd, 10'000, 3);
        FAIL("expected IterationCapExceeded");
    } catch (const FixedPointCapError& e) {
        CHECK(e.code() == Errc::iteration_cap_exceeded);
        CHECK(e.partial().certified_bits > 0);
        CHECK(e.partial().certified_bits < 10'000);
    }
    try {
        (void)fixed_point_prefix(Parity::even, 10'000, 200, 500);
        FAIL("expected MemoryCapExceeded");
    } catch (const FixedPointCapError& e) {
        CHECK(e.code() == Errc::memory_cap_exceeded);
        CHECK(e.partial().certified_bits > 0);
    }
}

TEST_CASE("the two fixed points describe each other") {
    const auto odd = fixed_point_prefix(Parity::odd, 512);
    const auto even = fixed_point_prefix(Parity::even, 512);
    const std::size_t n = std::min(odd.certified_bits, even.certified_bits);
    constexpr std::size_t slack = 8;
    CHECK(lcp(knave_step(odd.prefix), even.prefix) + slack >= n);
    CHECK(lcp(knave_step(even.prefix), odd.prefix) + slack >= n);
    CHECK(lcp(odd.prefix, even.prefix) == 5);
}

TEST_CASE("property: batch, stream and naive oracle agree") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int i = 0; i < 10'000; ++i) {
        const std::string text = oracle::random_bits(rng, 1, 512);
        const BitString s = parse(text);
        const BitString k = knave_step(s);
        const std::string batch = k.to_string();
        const bool ok = batch == oracle::knave(text) && batch == stream_step(text) && k[0] &&
                        k.back() != s.back() && knave_step_length(s) == k.size();
        if (!ok) {
            FAIL("knave_step disagreement on " << text);
        }
    }
}

TEST_CASE("cache records round-trip and reject garbage") {
    FixedPointCertificate cert = fixed_point_prefix(Parity::odd, 20);
    const std::string line = format_cache_record(cert);
    const auto back = parse_cache_record(line);
    CHECK(back.parity == cert.parity);
    CHECK(back.certified_bits == cert.certified_bits);
    CHECK(back.iterations == cert.iterations);
    CHECK(back.prefix == cert.prefix);
    CHECK(back.seed.to_string() == "1");

    CHECK_THROWS_AS((void)parse_cache_record("odd 12 4"), Error);
    CHECK_THROWS_AS((void)parse_cache_record("sideways 3 4 101"), Error);
    CHECK_THROWS_AS((void)parse_cache_record("odd 9 4 101"), Error);
    CHECK_THROWS_AS((void)parse_cache_record("odd x 4 101"), Error);
    CHECK_THROWS_AS((void)parse_cache_record("odd 3 4 1a1"), Error);
}

TEST_CASE("cached_fixed_point reuses and regenerates the cache") {
    const auto dir = std::filesystem::temp_directory_path() / "lookknave_cache_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "fp.txt";

    const auto first = cached_fixed_point(path, Parity::even, 64);
    CHECK_FALSE(first.from_cache);
    CHECK(first.cache_rewritten);
    const auto second = cached_fixed_point(path, Parity::even, 32);
    CHECK(second.from_cache);
    CHECK(second.certificate.prefix == first.certificate.prefix);

    (void)cached_fixed_point(path, Parity::odd, 64);
    CHECK(read_cache(path).size() == 2);

    {
        std::ofstream(path) << "this is not a cache\n";
    }
    const auto third = cached_fixed_point(path, Parity::odd, 16);
    CHECK_FALSE(third.from_cache);
    const auto records = read_cache(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].parity == Parity::odd);
    std::filesystem::remove_all(dir);
}
