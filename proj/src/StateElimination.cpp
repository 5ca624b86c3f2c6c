#include <set>

#include "paramlift/Exceptions.h"
#include "paramlift/Model.h"

namespace paramlift {

namespace {

using Row = std::map<StateIndex, Polynomial>;

bool isProtected(ParametricModel const& model, StateIndex s) {
    if (s == model.initial() || model.rewards().count(s) > 0) {
        return true;
    }
    for (auto const& [name, members] : model.labels()) {
        if (members.count(s) > 0) {
            return true;
        }
    }
    return false;
}

bool allConstant(Row const& row) {
    for (auto const& [target, probability] : row) {
        if (!probability.isConstant()) {
            return false;
        }
    }
    return true;
}

}  // namespace

ParametricModel eliminateConstantStates(ParametricModel const& model) {
    if (model.kind() == ModelKind::Psg) {
        throw UnsupportedError("state elimination is only defined for pmc and pmdp models");
    }
    std::size_t n = model.numberOfStates();

    // rows[s][c] : sparse distribution of choice c at s; predecessors[t] : choices with an edge to t.
    std::vector<std::vector<Row>> rows(n);
    std::vector<std::set<std::pair<StateIndex, std::size_t>>> predecessors(n);
    for (StateIndex s = 0; s < n; ++s) {
        auto const& choices = model.state(s).choices;
        rows[s].resize(choices.size());
        for (std::size_t c = 0; c < choices.size(); ++c) {
            for (auto const& transition : choices[c].transitions) {
                rows[s][c].emplace(transition.target, transition.probability);
                predecessors[transition.target].insert({s, c});
            }
        }
    }

    std::vector<bool> eliminated(n, false);
    for (StateIndex s = 0; s < n; ++s) {
        if (rows[s].size() != 1 || isProtected(model, s) || !allConstant(rows[s][0])) {
            continue;
        }
        Row& row = rows[s][0];
        Rational selfLoop = 0;
        if (auto it = row.find(s); it != row.end()) {
            selfLoop = it->second.constantValue();
        }
        if (selfLoop >= 1) {
            continue;
        }
        Rational scale = 1 / (1 - selfLoop);
        for (auto const& [p, c] : predecessors[s]) {
            if (p == s) {
                continue;
            }
            Row& predecessorRow = rows[p][c];
            Polynomial into = std::move(predecessorRow.at(s));
            predecessorRow.erase(s);
            for (auto const& [t, probability] : row) {
                if (t == s) {
                    continue;
                }
                Polynomial& entry = predecessorRow[t];
                entry += into * (probability.constantValue() * scale);
                if (entry.isZero()) {
                    predecessorRow.erase(t);
                    predecessors[t].erase({p, c});
                } else {
                    predecessors[t].insert({p, c});
                }
            }
        }
        for (auto const& [t, probability] : row) {
            predecessors[t].erase({s, 0});
        }
        predecessors[s].clear();
        eliminated[s] = true;
    }

    std::vector<StateIndex> newIndex(n, 0);
    StateIndex next = 0;
    for (StateIndex s = 0; s < n; ++s) {
        if (!eliminated[s]) {
            newIndex[s] = next++;
        }
    }
    std::vector<State> states;
    states.reserve(next);
    for (StateIndex s = 0; s < n; ++s) {
        if (eliminated[s]) {
            continue;
        }
        State state;
        auto const& original = model.state(s).choices;
        for (std::size_t c = 0; c < original.size(); ++c) {
            Choice choice{original[c].action, {}, {}};
            for (auto const& [t, probability] : rows[s][c]) {
                choice.transitions.push_back({newIndex[t], probability});
            }
            state.choices.push_back(std::move(choice));
        }
        states.push_back(std::move(state));
    }
    std::map<std::string, std::set<StateIndex>> labels;
    for (auto const& [name, members] : model.labels()) {
        auto& renamed = labels[name];
        for (StateIndex s : members) {
            renamed.insert(newIndex[s]);
        }
    }
    std::map<StateIndex, Polynomial> rewards;
    for (auto const& [s, reward] : model.rewards()) {
        rewards.emplace(newIndex[s], reward);
    }
    return ParametricModel(model.kind(), model.parameters(), std::move(states), newIndex[model.initial()], std::move(labels),
                           std::move(rewards));
}

}  // namespace paramlift
