#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace a2dkit {

/// Correctly rounded sum of a sequence of finite doubles (Shewchuk partials).
///
/// The result depends only on the multiset of inputs, never on their order,
/// which is what makes ensemble fusion and the loss reductions exactly
/// permutation invariant.
class ExactSum {
public:
    ExactSum& operator+=(double x);
    double value() const;

private:
    std::vector<double> partials_;
};

double exact_sum(std::span<const double> values);

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Strict decimal parse; rejects trailing garbage, NaN and infinities.
std::optional<double> parse_double(std::string_view text);

std::optional<std::uint64_t> parse_uint(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

std::string format_percent(double fraction);

}  // namespace a2dkit
