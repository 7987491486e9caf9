#include "lookknave/fixed_point_cache.hpp"

#include <charconv>
#include <fstream>
#include <algorithm>

namespace lookknave {

namespace {

Error cache_error(const std::string& what) { return Error(Errc::cache_parse, "fixed-point cache: " + what); }

std::size_t parse_count(std::string_view field, const char* name) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw cache_error(std::string("bad ") + name + " field '" + std::string(field) + "'");
    }
    return value;
}

} // namespace

std::string format_cache_record(const FixedPointCertificate& cert) {
    std::string line(parity_name(cert.parity));
    line += ' ';
    line += std::to_string(cert.certified_bits);
    line += ' ';
    line += std::to_string(cert.iterations);
    line += ' ';
    line += cert.prefix.to_string();
    return line;
}

FixedPointCertificate parse_cache_record(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t space = line.find(' ', start);
        const std::size_t end = space == std::string_view::npos ? line.size() : space;
        fields.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    if (fields.size() != 4) {
        throw cache_error("expected 4 fields, got " + std::to_string(fields.size()));
    }
    FixedPointCertificate cert;
    try {
        cert.parity = parse_parity(fields[0]);
        cert.prefix = parse(fields[3]);
    } catch (const Error& e) {
        throw cache_error(e.what());
    }
    cert.certified_bits = parse_count(fields[1], "certified_bits");
    cert.iterations = parse_count(fields[2], "iterations");
    cert.seed = fixed_point_seed(cert.parity);
    if (cert.certified_bits > cert.prefix.size()) {
        throw cache_error("certified_bits exceeds prefix length");
    }
    if (cert.iterations % 2 != 0) {
        throw cache_error("iteration count must be even");
    }
    return cert;
}

std::vector<FixedPointCertificate> read_cache(const std::filesystem::path& path) {
    std::vector<FixedPointCertificate> certs;
    std::ifstream in(path);
    if (!in) {
        return certs;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        certs.push_back(parse_cache_record(line));
    }
    return certs;
}

void write_cache(const std::filesystem::path& path, const std::vector<FixedPointCertificate>& certs) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(Errc::invalid_argument, "cannot write fixed-point cache " + path.string());
    }
    for (const auto& cert : certs) {
        out << format_cache_record(cert) << '\n';
    }
}

CachedCertificate cached_fixed_point(const std::filesystem::path& path, Parity parity, std::size_t want_bits,
                                     std::size_t max_iterations, std::size_t max_bits) {
    std::vector<FixedPointCertificate> certs;
    try {
        certs = read_cache(path);
    } catch (const Error&) {
        certs.clear();
    }
    for (const auto& cert : certs) {
        if (cert.parity == parity && cert.certified_bits >= want_bits) {
            return {cert, true, false};
        }
    }
    FixedPointCertificate fresh = fixed_point_prefix(parity, want_bits, max_iterations, max_bits);
    std::erase_if(certs, [parity](const FixedPointCertificate& c) { return c.parity == parity; });
    certs.push_back(fresh);
    std::sort(certs.begin(), certs.end(), [](const auto& a, const auto& b) { return a.parity < b.parity; });
    write_cache(path, certs);
    return {std::move(fresh), false, true};
}

} // namespace lookknave
