#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lookknave/knave.hpp"

namespace lookknave {

// Cache file: one certificate per line, `parity certified_bits iterations prefix-bits`,
// single spaces, ASCII. The seed is implied by the parity.

std::string format_cache_record(const FixedPointCertificate& cert);
FixedPointCertificate parse_cache_record(std::string_view line);

// Missing file reads as empty. Malformed content throws Error(Errc::cache_parse).
std::vector<FixedPointCertificate> read_cache(const std::filesystem::path& path);
void write_cache(const std::filesystem::path& path, const std::vector<FixedPointCertificate>& certs);

struct CachedCertificate {
    FixedPointCertificate certificate;
    bool from_cache = false;
    bool cache_rewritten = false;
};

// Uses a cached certificate with at least want_bits certified bits if one exists;
// otherwise computes one and rewrites the cache. A cache that fails to parse is
// regenerated.
CachedCertificate cached_fixed_point(const std::filesystem::path& path, Parity parity, std::size_t want_bits,
                                     std::size_t max_iterations = default_max_iterations,
                                     std::size_t max_bits = default_max_bits);

} // namespace lookknave
