#include "a2dkit/label_space.hpp"

#include <optional>

#include "a2dkit/csv.hpp"
#include "a2dkit/error.hpp"
#include "a2dkit/numeric.hpp"

namespace a2dkit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::unordered_map<std::string, std::size_t> index_names(const std::vector<std::string>& names,
                                                         const char* what)
{
    std::unordered_map<std::string, std::size_t> lookup;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty())
            throw DomainError(std::string("empty ") + what + " name");
        if (!lookup.emplace(names[i], i).second)
            throw DomainError(std::string("duplicate ") + what + " '" + names[i] + "'");
    }
    return lookup;
}

}  // namespace

LabelSpace LabelSpace::create(std::vector<std::string> actors, std::vector<std::string> actions,
                              std::vector<ActorAction> pairs)
{
    if (actors.empty())
        throw DomainError("label space has no actors");
    if (actions.empty())
        throw DomainError("label space has no actions");
    if (pairs.empty())
        throw DomainError("label space has no valid pairs");

    LabelSpace space;
    space.actor_lookup_ = index_names(actors, "actor");
    space.action_lookup_ = index_names(actions, "action");
    space.actors_ = std::move(actors);
    space.actions_ = std::move(actions);

    space.pair_names_.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (p.actor >= space.actors_.size() || p.action >= space.actions_.size())
            throw LookupError("pair references out-of-range actor or action index");
        std::string name = space.actors_[p.actor] + "-" + space.actions_[p.action];
        if (!space.pair_lookup_.emplace(name, space.pair_names_.size()).second)
            throw DomainError("duplicate pair '" + name + "'");
        space.pair_names_.push_back(std::move(name));
    }
    space.pairs_ = std::move(pairs);
    space.checksum_ = fnv1a64(space.serialize());
    return space;
}

LabelSpace LabelSpace::parse(std::string_view text, const std::string& source)
{
    enum class Section { None, Actors, Actions, Pairs };
    Section section = Section::None;
    bool seen[4] = {false, false, false, false};

    std::vector<std::string> actors;
    std::vector<std::string> actions;
    std::vector<std::pair<std::string, std::string>> raw_pairs;
    std::vector<std::size_t> pair_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        const std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        const auto at = [&] { return source + ":" + std::to_string(line_no) + ": "; };

        if (line.empty() || line.front() == '#')
            continue;
        if (line.front() == '[') {
            if (line == "[actors]")
                section = Section::Actors;
            else if (line == "[actions]")
                section = Section::Actions;
            else if (line == "[pairs]")
                section = Section::Pairs;
            else
                throw ParseError(at() + "unknown section '" + std::string(line) + "'");
            auto& flag = seen[static_cast<int>(section)];
            if (flag)
                throw ParseError(at() + "section '" + std::string(line) + "' repeated");
            flag = true;
            continue;
        }
        switch (section) {
        case Section::None:
            throw ParseError(at() + "entry before any section header");
        case Section::Actors:
            actors.emplace_back(line);
            break;
        case Section::Actions:
            actions.emplace_back(line);
            break;
        case Section::Pairs: {
            const auto fields = csv::split(line);
            if (fields.size() != 2)
                throw ParseError(at() + "pair must be 'actor,action'");
            raw_pairs.emplace_back(std::string(trim(fields[0])), std::string(trim(fields[1])));
            pair_lines.push_back(line_no);
            break;
        }
        }
    }
    for (int s = 1; s <= 3; ++s) {
        if (!seen[s]) {
            static const char* names[] = {"", "[actors]", "[actions]", "[pairs]"};
            throw ParseError(source + ": missing section " + names[s]);
        }
    }

    const auto actor_idx = index_names(actors, "actor");
    const auto action_idx = index_names(actions, "action");
    std::vector<ActorAction> pairs;
    pairs.reserve(raw_pairs.size());
    for (std::size_t i = 0; i < raw_pairs.size(); ++i) {
        const auto& [actor, action] = raw_pairs[i];
        const auto a = actor_idx.find(actor);
        if (a == actor_idx.end())
            throw LookupError(source + ":" + std::to_string(pair_lines[i]) + ": unknown actor '" +
                              actor + "'");
        const auto x = action_idx.find(action);
        if (x == action_idx.end())
            throw LookupError(source + ":" + std::to_string(pair_lines[i]) + ": unknown action '" +
                              action + "'");
        pairs.push_back({a->second, x->second});
    }
    return create(std::move(actors), std::move(actions), std::move(pairs));
}

LabelSpace LabelSpace::load(const std::filesystem::path& path)
{
    return parse(csv::read_file(path), path.string());
}

std::size_t LabelSpace::actor_index(std::string_view actor) const
{
    const auto it = actor_lookup_.find(std::string(actor));
    if (it == actor_lookup_.end())
        throw LookupError("unknown actor '" + std::string(actor) + "'");
    return it->second;
}

std::size_t LabelSpace::action_index(std::string_view action) const
{
    const auto it = action_lookup_.find(std::string(action));
    if (it == action_lookup_.end())
        throw LookupError("unknown action '" + std::string(action) + "'");
    return it->second;
}

bool LabelSpace::is_valid(std::string_view actor, std::string_view action) const
{
    if (!actor_lookup_.contains(std::string(actor)) || !action_lookup_.contains(std::string(action)))
        return false;
    return pair_lookup_.contains(std::string(actor) + "-" + std::string(action));
}

std::size_t LabelSpace::class_index(std::string_view actor, std::string_view action) const
{
    actor_index(actor);
    action_index(action);
    const std::string name = std::string(actor) + "-" + std::string(action);
    const auto it = pair_lookup_.find(name);
    if (it == pair_lookup_.end())
        throw LookupError("invalid actor-action pair '" + name + "'");
    return it->second;
}

std::size_t LabelSpace::class_index(std::string_view pair_name) const
{
    const auto it = pair_lookup_.find(std::string(pair_name));
    if (it == pair_lookup_.end())
        throw LookupError("unknown pair '" + std::string(pair_name) + "'");
    return it->second;
}

const std::string& LabelSpace::pair_name(std::size_t class_index) const
{
    if (class_index >= pair_names_.size())
        throw LookupError("class index " + std::to_string(class_index) + " out of range");
    return pair_names_[class_index];
}

std::string LabelSpace::serialize() const
{
    std::string out = "[actors]\n";
    for (const auto& a : actors_)
        out += a + "\n";
    out += "[actions]\n";
    for (const auto& x : actions_)
        out += x + "\n";
    out += "[pairs]\n";
    for (const auto& p : pairs_)
        out += actors_[p.actor] + "," + actions_[p.action] + "\n";
    return out;
}

std::vector<double> combine_marginals(const LabelSpace& space, std::span<const double> actor_scores,
                                      std::span<const double> action_scores)
{
    if (actor_scores.size() != space.actors().size())
        throw ShapeError("expected " + std::to_string(space.actors().size()) + " actor scores, got " +
                         std::to_string(actor_scores.size()));
    if (action_scores.size() != space.actions().size())
        throw ShapeError("expected " + std::to_string(space.actions().size()) +
                         " action scores, got " + std::to_string(action_scores.size()));
    const auto check = [](std::span<const double> v, const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!(v[i] >= 0.0 && v[i] <= 1.0))
                throw DomainError("marginal score for '" + names[i] + "' outside [0,1]");
    };
    check(actor_scores, space.actors());
    check(action_scores, space.actions());

    std::vector<double> joint;
    joint.reserve(space.class_count());
    for (const auto& p : space.pairs())
        joint.push_back(actor_scores[p.actor] * action_scores[p.action]);
    return joint;
}

}  // namespace a2dkit
