#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace a2dkit {

struct ActorAction {
    std::size_t actor = 0;
    std::size_t action = 0;

    friend bool operator==(const ActorAction&, const ActorAction&) = default;
};

/// Actor and action vocabularies plus the valid actor-action pairs.
///
/// Class indices are dense and follow the order of `pairs()`. Pair names are
/// "actor-action". Instances are immutable once constructed.
class LabelSpace {
public:
    /// Validates and builds a space. Throws DomainError on empty vocabularies,
    /// duplicate names or pairs, and LookupError on out-of-range pair indices.
    static LabelSpace create(std::vector<std::string> actors, std::vector<std::string> actions,
                             std::vector<ActorAction> pairs);

    /// Parses the sectioned text format (`[actors]`, `[actions]`, `[pairs]`).
    static LabelSpace parse(std::string_view text, const std::string& source = "<label-space>");
    static LabelSpace load(const std::filesystem::path& path);

    const std::vector<std::string>& actors() const { return actors_; }
    const std::vector<std::string>& actions() const { return actions_; }
    const std::vector<ActorAction>& pairs() const { return pairs_; }
    const std::vector<std::string>& pair_names() const { return pair_names_; }
    std::size_t class_count() const { return pairs_.size(); }

    std::size_t actor_index(std::string_view actor) const;
    std::size_t action_index(std::string_view action) const;
    bool is_valid(std::string_view actor, std::string_view action) const;

    std::size_t class_index(std::string_view actor, std::string_view action) const;
    std::size_t class_index(std::string_view pair_name) const;
    const std::string& pair_name(std::size_t class_index) const;

    /// Canonical text form; parse(serialize()) reproduces the space.
    std::string serialize() const;

    /// FNV-1a 64 of the canonical serialization.
    std::uint64_t checksum() const { return checksum_; }

private:
    LabelSpace() = default;

    std::vector<std::string> actors_;
    std::vector<std::string> actions_;
    std::vector<ActorAction> pairs_;
    std::vector<std::string> pair_names_;
    std::unordered_map<std::string, std::size_t> actor_lookup_;
    std::unordered_map<std::string, std::size_t> action_lookup_;
    std::unordered_map<std::string, std::size_t> pair_lookup_;
    std::uint64_t checksum_ = 0;
};

/// Joint pair scores as the product of independent actor and action marginals.
std::vector<double> combine_marginals(const LabelSpace& space, std::span<const double> actor_scores,
                                      std::span<const double> action_scores);

}  // namespace a2dkit
