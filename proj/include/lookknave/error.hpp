#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lookknave {

enum class Errc {
    empty_input,
    non_binary_character,
    non_binary_symbol,
    zero_or_negative,
    out_of_range,
    invalid_argument,
    cap_exceeded,
    iteration_cap_exceeded,
    memory_cap_exceeded,
    run_too_long,
    non_digit,
    insufficient_data,
    cache_parse,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
        : std::runtime_error(what), code_(code), position_(position) {}

    Errc code() const noexcept { return code_; }

    // 1-based character position for parse errors.
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    Errc code_;
    std::optional<std::size_t> position_;
};

} // namespace lookknave
