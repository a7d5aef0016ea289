#pragma once

// Straight-from-definition multi-label metrics, written without any code
// from the library's metrics module. Used as the reference in property and
// acceptance tests.

#include <cstddef>
#include <set>
#include <vector>

namespace a2dkit::oracle {

struct Prf {
    double p = 0.0;
    double r = 0.0;
    double f1 = 0.0;
};

/// pred[i][c] = score[i][c] >= thr[c].
inline std::vector<std::set<std::size_t>> predicted_sets(const std::vector<std::vector<double>>& score,
                                                         const std::vector<double>& thr)
{
    std::vector<std::set<std::size_t>> out(score.size());
    for (std::size_t i = 0; i < score.size(); ++i)
        for (std::size_t c = 0; c < thr.size(); ++c)
            if (!(score[i][c] < thr[c]))
                out[i].insert(c);
    return out;
}

inline std::set<std::size_t> intersect(const std::set<std::size_t>& a, const std::set<std::size_t>& b)
{
    std::set<std::size_t> out;
    for (auto x : a)
        if (b.count(x))
            out.insert(x);
    return out;
}

inline double f1_of(double p, double r)
{
    if (p == 0.0 || r == 0.0)
        return 0.0;
    return 2.0 * p * r / (p + r);
}

/// Per-sample set overlap averaged over samples. Both sets empty scores 1;
/// exactly one empty scores 0.
inline Prf example_based(const std::vector<std::set<std::size_t>>& pred,
                         const std::vector<std::set<std::size_t>>& truth)
{
    if (truth.empty())
        return {1.0, 1.0, 1.0};
    Prf sum;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto& P = pred[i];
        const auto& T = truth[i];
        if (P.empty() && T.empty()) {
            sum.p += 1;
            sum.r += 1;
            sum.f1 += 1;
            continue;
        }
        if (P.empty() || T.empty())
            continue;
        const double both = static_cast<double>(intersect(P, T).size());
        const double p = both / static_cast<double>(P.size());
        const double r = both / static_cast<double>(T.size());
        sum.p += p;
        sum.r += r;
        sum.f1 += f1_of(p, r);
    }
    const double n = static_cast<double>(truth.size());
    return {sum.p / n, sum.r / n, sum.f1 / n};
}

struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
};

inline Counts class_counts(const std::vector<std::set<std::size_t>>& pred,
                           const std::vector<std::set<std::size_t>>& truth, std::size_t c)
{
    Counts k;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool p = pred[i].count(c) > 0;
        const bool t = truth[i].count(c) > 0;
        k.tp += p && t;
        k.fp += p && !t;
        k.fn += !p && t;
    }
    return k;
}

inline Prf counts_prf(const Counts& k)
{
    if (k.tp == 0 && k.fp == 0 && k.fn == 0)
        return {1.0, 1.0, 1.0};
    const double p = (k.tp + k.fp) ? double(k.tp) / double(k.tp + k.fp) : 0.0;
    const double r = (k.tp + k.fn) ? double(k.tp) / double(k.tp + k.fn) : 0.0;
    return {p, r, f1_of(p, r)};
}

inline Prf micro(const std::vector<std::set<std::size_t>>& pred,
                 const std::vector<std::set<std::size_t>>& truth, std::size_t classes)
{
    Counts total;
    for (std::size_t c = 0; c < classes; ++c) {
        const auto k = class_counts(pred, truth, c);
        total.tp += k.tp;
        total.fp += k.fp;
        total.fn += k.fn;
    }
    return counts_prf(total);
}

/// Unweighted mean over classes that are predicted or present somewhere.
inline Prf macro(const std::vector<std::set<std::size_t>>& pred,
                 const std::vector<std::set<std::size_t>>& truth, std::size_t classes)
{
    Prf sum;
    std::size_t used = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        const auto k = class_counts(pred, truth, c);
        if (k.tp + k.fp + k.fn == 0)
            continue;
        const auto m = counts_prf(k);
        sum.p += m.p;
        sum.r += m.r;
        sum.f1 += m.f1;
        ++used;
    }
    if (used == 0)
        return {1.0, 1.0, 1.0};
    return {sum.p / double(used), sum.r / double(used), sum.f1 / double(used)};
}

}  // namespace a2dkit::oracle
