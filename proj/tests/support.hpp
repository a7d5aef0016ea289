#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "a2dkit/matrix.hpp"

namespace a2dkit::testing {

inline std::filesystem::path asset(const std::string& name)
{
    return std::filesystem::path(A2DKIT_ASSET_DIR) / name;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("a2dkit-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::vector<std::string> names(const std::string& prefix, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

inline ScoreMatrix random_scores(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(rows * cols);
    for (auto& x : v)
        x = unit(rng);
    return ScoreMatrix(names("s", rows), names("c", cols), std::move(v));
}

/// Scores on a coarse grid so ties with grid thresholds actually happen.
inline ScoreMatrix random_coarse_scores(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_int_distribution<int> step(0, 20);
    std::vector<double> v(rows * cols);
    for (auto& x : v)
        x = step(rng) / 20.0;
    return ScoreMatrix(names("s", rows), names("c", cols), std::move(v));
}

inline LabelMatrix random_labels(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                 double rate = 0.3)
{
    std::bernoulli_distribution b(rate);
    std::vector<std::uint8_t> v(rows * cols);
    for (auto& x : v)
        x = b(rng) ? 1 : 0;
    return LabelMatrix(names("s", rows), names("c", cols), std::move(v));
}

}  // namespace a2dkit::testing
