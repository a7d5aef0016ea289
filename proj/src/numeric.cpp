#include "a2dkit/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace a2dkit {

ExactSum& ExactSum::operator+=(double x)
{
    std::size_t used = 0;
    for (double y : partials_) {
        if (std::fabs(x) < std::fabs(y))
            std::swap(x, y);
        const double hi = x + y;
        const double lo = y - (hi - x);
        if (lo != 0.0)
            partials_[used++] = lo;
        x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
    return *this;
}

double ExactSum::value() const
{
    if (partials_.empty())
        return 0.0;
    // Sum from the top, then correct the half-way rounding case.
    std::size_t n = partials_.size();
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0)
            break;
    }
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        const double yr = x - hi;
        if (y == yr)
            hi = x;
    }
    return hi;
}

double exact_sum(std::span<const double> values)
{
    ExactSum acc;
    for (double v : values)
        acc += v;
    return acc.value();
}

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

std::optional<double> parse_double(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    // from_chars rejects a leading '+', which is harmless to accept.
    if (text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view text)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string format_percent(double fraction)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
    return buf;
}

}  // namespace a2dkit
