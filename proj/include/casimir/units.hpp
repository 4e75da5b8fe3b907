#pragma once

#include <array>
#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "errors.hpp"

namespace casimir::units {

namespace detail {

struct Suffix
{
    std::string_view text;
    int exponent;  //!< power of ten relative to the SI base unit
};

inline std::string_view trim(std::string_view s)
{
    auto const ws = " \t\r\n";
    auto const b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto const e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

/*!
 * Parse "<number>[ ]<suffix>" with the unit exponent folded into the decimal
 * exponent before conversion, so "1000 nm", "1 um" and "0.001 mm" all round
 * to the same double.
 */
template<std::size_t N>
double parse_scaled(std::string_view text,
                    std::array<Suffix, N> const& suffixes,
                    char const* what)
{
    auto s = trim(text);
    int unit_exp = 0;
    for (auto const& suf : suffixes)
    {
        if (s.size() > suf.text.size() && s.ends_with(suf.text))
        {
            s = trim(s.substr(0, s.size() - suf.text.size()));
            unit_exp = suf.exponent;
            break;
        }
    }
    auto fail = [&] {
        return DomainError(std::string("cannot parse ") + what + " '"
                           + std::string(text) + "'");
    };
    if (s.empty())
        throw fail();

    std::string_view mantissa = s;
    int exp10 = 0;
    if (auto pos = s.find_first_of("eE"); pos != std::string_view::npos)
    {
        mantissa = s.substr(0, pos);
        auto exp_text = s.substr(pos + 1);
        if (!exp_text.empty() && exp_text.front() == '+')
            exp_text.remove_prefix(1);
        auto [p, ec] = std::from_chars(exp_text.data(),
                                       exp_text.data() + exp_text.size(), exp10);
        if (ec != std::errc{} || p != exp_text.data() + exp_text.size()
            || exp_text.empty())
        {
            throw fail();
        }
    }
    std::string const combined = std::string(mantissa) + "e"
                                 + std::to_string(exp10 + unit_exp);
    double value = 0;
    auto [p, ec] = std::from_chars(combined.data(),
                                   combined.data() + combined.size(), value);
    if (ec != std::errc{} || p != combined.data() + combined.size()
        || mantissa.empty())
    {
        throw fail();
    }
    return value;
}

}  // namespace detail

//! Length in metres from text with an optional nm/um/mm/cm/m suffix
//! (bare numbers are metres).
inline double parse_length(std::string_view text)
{
    static constexpr std::array<detail::Suffix, 7> suffixes{{
        {"nm", -9},
        {"um", -6},
        {"\xC2\xB5m", -6},  // micro sign
        {"\xCE\xBCm", -6},  // greek mu
        {"mm", -3},
        {"cm", -2},
        {"m", 0},
    }};
    return detail::parse_scaled(text, suffixes, "length");
}

//! Temperature in kelvin from text with an optional K suffix.
inline double parse_temperature(std::string_view text)
{
    static constexpr std::array<detail::Suffix, 1> suffixes{{{"K", 0}}};
    return detail::parse_scaled(text, suffixes, "temperature");
}

}  // namespace casimir::units
