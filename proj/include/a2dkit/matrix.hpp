#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

namespace detail {

struct UnitInterval {
    using value_type = double;
    static bool valid(double v) { return v >= 0.0 && v <= 1.0; }
    static constexpr const char* what = "outside [0,1]";
};

struct Binary {
    using value_type = std::uint8_t;
    static bool valid(std::uint8_t v) { return v <= 1; }
    static constexpr const char* what = "not in {0,1}";
};

}  // namespace detail

/// Row-major N x C matrix with sample ids and column names.
///
/// Construction validates every invariant (shape, unique ids, value domain),
/// so an instance that exists is valid. `space_checksum` ties the matrix to
/// the LabelSpace it was loaded against (0 when unbound).
template <typename Domain>
class SampleMatrix {
public:
    using value_type = typename Domain::value_type;

    SampleMatrix() = default;

    SampleMatrix(std::vector<std::string> sample_ids, std::vector<std::string> class_names,
                 std::vector<value_type> values, std::uint64_t space_checksum = 0)
        : sample_ids_(std::move(sample_ids)),
          class_names_(std::move(class_names)),
          values_(std::move(values)),
          space_checksum_(space_checksum)
    {
        if (values_.size() != sample_ids_.size() * class_names_.size())
            throw ShapeError("matrix has " + std::to_string(values_.size()) + " values, expected " +
                             std::to_string(sample_ids_.size()) + " x " +
                             std::to_string(class_names_.size()));
        std::unordered_set<std::string> seen;
        for (const auto& id : sample_ids_)
            if (!seen.insert(id).second)
                throw DomainError("duplicate sample_id '" + id + "'");
        const std::size_t c = class_names_.size();
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!Domain::valid(values_[i]))
                throw DomainError("value at sample '" + sample_ids_[i / c] + "', class '" +
                                  class_names_[i % c] + "' " + Domain::what);
    }

    std::size_t rows() const { return sample_ids_.size(); }
    std::size_t cols() const { return class_names_.size(); }

    value_type operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
    std::span<const value_type> row(std::size_t r) const
    {
        return std::span<const value_type>(values_).subspan(r * cols(), cols());
    }

    const std::vector<std::string>& sample_ids() const { return sample_ids_; }
    const std::vector<std::string>& class_names() const { return class_names_; }
    const std::vector<value_type>& values() const { return values_; }
    std::uint64_t space_checksum() const { return space_checksum_; }

    friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

private:
    std::vector<std::string> sample_ids_;
    std::vector<std::string> class_names_;
    std::vector<value_type> values_;
    std::uint64_t space_checksum_ = 0;
};

/// Per-class confidence scores in [0,1].
using ScoreMatrix = SampleMatrix<detail::UnitInterval>;
/// Binary per-class assignments (ground truth or predictions).
using LabelMatrix = SampleMatrix<detail::Binary>;

/// Per-class decision thresholds in [0,1].
class ThresholdVector {
public:
    ThresholdVector() = default;
    explicit ThresholdVector(std::vector<double> values, std::vector<std::string> class_names = {})
        : values_(std::move(values)), class_names_(std::move(class_names))
    {
        if (!class_names_.empty() && class_names_.size() != values_.size())
            throw ShapeError("threshold vector has " + std::to_string(values_.size()) +
                             " values but " + std::to_string(class_names_.size()) + " names");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!(values_[i] >= 0.0 && values_[i] <= 1.0))
                throw DomainError("threshold " + std::to_string(i) + " outside [0,1]");
    }

    static ThresholdVector uniform(std::size_t class_count, double value,
                                   std::vector<std::string> class_names = {})
    {
        return ThresholdVector(std::vector<double>(class_count, value), std::move(class_names));
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;

private:
    std::vector<double> values_;
    std::vector<std::string> class_names_;
};

/// Throws ShapeError unless the two matrices share sample ids and column names.
template <typename A, typename B>
void require_same_layout(const SampleMatrix<A>& a, const SampleMatrix<B>& b, const char* context)
{
    if (a.class_names() != b.class_names())
        throw ShapeError(std::string(context) + ": class columns differ (" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.cols()) + ")");
    if (a.rows() != b.rows())
        throw ShapeError(std::string(context) + ": sample counts differ (" +
                         std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a.sample_ids()[i] != b.sample_ids()[i])
            throw ShapeError(std::string(context) + ": sample id mismatch at row " +
                             std::to_string(i) + " ('" + a.sample_ids()[i] + "' vs '" +
                             b.sample_ids()[i] + "')");
}

}  // namespace a2dkit
