#include "paramlift/Model.h"

#include <algorithm>
#include <stdexcept>

#include "paramlift/Exceptions.h"

namespace paramlift {

std::string_view toString(ModelKind kind) {
    switch (kind) {
        case ModelKind::Pmc:
            return "pmc";
        case ModelKind::Pmdp:
            return "pmdp";
        case ModelKind::Psg:
            return "psg";
    }
    return "?";
}

namespace {

std::string stateName(StateIndex s) {
    return "state " + std::to_string(s);
}

void normalizeChoice(Choice& choice, std::size_t numberOfStates, StateIndex s) {
    std::map<StateIndex, Polynomial> merged;
    for (auto& transition : choice.transitions) {
        if (transition.target >= numberOfStates) {
            throw SyntaxError(stateName(s) + ", action '" + choice.action + "': target " + std::to_string(transition.target) +
                              " out of range");
        }
        merged[transition.target] += transition.probability;
    }
    choice.transitions.clear();
    for (auto& [target, probability] : merged) {
        if (!probability.isZero()) {
            choice.transitions.push_back({target, std::move(probability)});
        }
    }
}

void checkDeclared(Polynomial const& polynomial, std::set<std::string> const& declared, std::string const& where) {
    for (auto const& name : polynomial.variables()) {
        if (declared.count(name) == 0) {
            throw MissingParameterError(where + ": undeclared parameter '" + name + "'");
        }
    }
}

}  // namespace

ParametricModel::ParametricModel(ModelKind kind, std::vector<std::string> parameters, std::vector<State> states, StateIndex initial,
                                 std::map<std::string, std::set<StateIndex>> labels, std::map<StateIndex, Polynomial> rewards)
    : kind_(kind), parameters_(std::move(parameters)), states_(std::move(states)), initial_(initial), labels_(std::move(labels)) {
    std::set<std::string> declared(parameters_.begin(), parameters_.end());
    if (declared.size() != parameters_.size()) {
        throw SyntaxError("duplicate parameter declaration");
    }
    if (states_.empty()) {
        throw SyntaxError("model has no states");
    }
    if (initial_ >= states_.size()) {
        throw SyntaxError("initial state " + std::to_string(initial_) + " out of range");
    }

    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < parameters_.size(); ++i) {
        order[parameters_[i]] = i;
    }

    for (StateIndex s = 0; s < states_.size(); ++s) {
        State& state = states_[s];
        if (state.choices.empty()) {
            throw DeadlockError(stateName(s) + " has no enabled action");
        }
        if (kind_ == ModelKind::Pmc && state.choices.size() != 1) {
            throw KindError(stateName(s) + " has " + std::to_string(state.choices.size()) + " actions in a pmc");
        }
        if (kind_ != ModelKind::Psg && state.player != Player::One) {
            throw KindError(stateName(s) + " is a player-2 state in a " + std::string(toString(kind_)));
        }
        std::set<std::string> actionNames;
        for (auto& choice : state.choices) {
            if (!actionNames.insert(choice.action).second) {
                throw SyntaxError(stateName(s) + ": duplicate action '" + choice.action + "'");
            }
            normalizeChoice(choice, states_.size(), s);
            Polynomial sum;
            std::set<std::string> used;
            for (auto const& transition : choice.transitions) {
                checkDeclared(transition.probability, declared, stateName(s));
                sum += transition.probability;
                for (auto const& name : transition.probability.variables()) {
                    used.insert(name);
                }
            }
            if (sum != Polynomial(1)) {
                throw DistributionError(stateName(s) + ", action '" + choice.action + "': probabilities sum to " + sum.toString());
            }
            choice.variables.assign(used.begin(), used.end());
            std::sort(choice.variables.begin(), choice.variables.end(),
                      [&](auto const& a, auto const& b) { return order.at(a) < order.at(b); });
        }
    }

    for (auto const& [name, members] : labels_) {
        for (StateIndex s : members) {
            if (s >= states_.size()) {
                throw SyntaxError("label '" + name + "' refers to missing state " + std::to_string(s));
            }
        }
    }
    for (auto& [s, reward] : rewards) {
        if (s >= states_.size()) {
            throw SyntaxError("reward for missing state " + std::to_string(s));
        }
        checkDeclared(reward, declared, "reward of " + stateName(s));
        if (!reward.isZero()) {
            rewards_.emplace(s, std::move(reward));
        }
    }
}

std::size_t ParametricModel::numberOfChoices() const {
    std::size_t count = 0;
    for (auto const& state : states_) {
        count += state.choices.size();
    }
    return count;
}

std::size_t ParametricModel::numberOfTransitions() const {
    std::size_t count = 0;
    for (auto const& state : states_) {
        for (auto const& choice : state.choices) {
            count += choice.transitions.size();
        }
    }
    return count;
}

StateSet ParametricModel::labelStates(std::string const& name) const {
    auto it = labels_.find(name);
    if (it == labels_.end()) {
        throw std::out_of_range("unknown label '" + name + "'");
    }
    StateSet result(states_.size(), false);
    for (StateIndex s : it->second) {
        result[s] = true;
    }
    return result;
}

std::optional<std::size_t> ParametricModel::choiceIndex(StateIndex s, std::string const& action) const {
    auto const& choices = states_.at(s).choices;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i].action == action) {
            return i;
        }
    }
    return std::nullopt;
}

ParametricModel instantiate(ParametricModel const& model, Valuation const& valuation) {
    std::vector<State> states = model.states();
    for (StateIndex s = 0; s < states.size(); ++s) {
        for (auto& choice : states[s].choices) {
            for (auto& transition : choice.transitions) {
                Rational value = transition.probability.evaluate(valuation);
                if (value <= 0) {
                    throw NotWellDefinedError("state " + std::to_string(s) + ", action '" + choice.action + "': '" +
                                              transition.probability.toString() + "' evaluates to " + toString(value));
                }
                transition.probability = Polynomial(value);
            }
        }
    }
    std::map<StateIndex, Polynomial> rewards;
    for (auto const& [s, reward] : model.rewards()) {
        Rational value = reward.evaluate(valuation);
        if (value < 0) {
            throw NotWellDefinedError("reward of state " + std::to_string(s) + " evaluates to " + toString(value));
        }
        rewards.emplace(s, Polynomial(value));
    }
    return ParametricModel(model.kind(), {}, std::move(states), model.initial(), model.labels(), std::move(rewards));
}

ParametricModel induceScheduler(ParametricModel const& model, Scheduler const& scheduler) {
    std::vector<State> states = model.states();
    for (auto const& [s, action] : scheduler) {
        if (s >= states.size()) {
            throw InvalidActionError("scheduler refers to missing state " + std::to_string(s));
        }
        auto index = model.choiceIndex(s, action);
        if (!index) {
            throw InvalidActionError("action '" + action + "' is not enabled in state " + std::to_string(s));
        }
        Choice chosen = std::move(states[s].choices[*index]);
        states[s].choices.clear();
        states[s].choices.push_back(std::move(chosen));
    }

    bool openOne = false;
    bool openTwo = false;
    for (auto const& state : states) {
        if (state.choices.size() > 1) {
            (state.player == Player::One ? openOne : openTwo) = true;
        }
    }
    ModelKind kind = ModelKind::Pmc;
    if (openOne && openTwo) {
        throw IncompleteSchedulerError("choices of both players remain unresolved");
    }
    if (openOne || openTwo) {
        if (model.kind() != ModelKind::Psg) {
            throw IncompleteSchedulerError("scheduler does not resolve every nondeterministic state");
        }
        kind = ModelKind::Pmdp;
    }
    if (kind != ModelKind::Psg) {
        for (auto& state : states) {
            state.player = Player::One;
        }
    }
    return ParametricModel(kind, model.parameters(), std::move(states), model.initial(), model.labels(), model.rewards());
}

}  // namespace paramlift
