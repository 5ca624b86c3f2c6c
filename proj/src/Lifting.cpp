#include "paramlift/Lifting.h"

#include <set>

#include "paramlift/Exceptions.h"

namespace paramlift {

std::string relaxedName(std::string const& parameter, StateIndex s) {
    return parameter + "__s" + std::to_string(s);
}

RelaxedModel relax(ParametricModel const& model) {
    RelaxedModel result{model, {}};
    std::vector<std::string> parameters;
    std::vector<State> states = model.states();
    std::map<StateIndex, Polynomial> rewards;
    for (StateIndex s = 0; s < states.size(); ++s) {
        std::set<std::string> used;
        for (auto const& choice : states[s].choices) {
            used.insert(choice.variables.begin(), choice.variables.end());
        }
        auto reward = model.rewards().find(s);
        if (reward != model.rewards().end()) {
            auto vars = reward->second.variables();
            used.insert(vars.begin(), vars.end());
        }
        std::map<std::string, std::string> renaming;
        for (auto const& name : model.parameters()) {
            if (used.count(name)) {
                std::string fresh = relaxedName(name, s);
                renaming.emplace(name, fresh);
                result.renaming.emplace(std::make_pair(s, name), fresh);
                parameters.push_back(fresh);
            }
        }
        for (auto& choice : states[s].choices) {
            for (auto& transition : choice.transitions) {
                transition.probability = transition.probability.renamed(renaming);
            }
        }
        if (reward != model.rewards().end()) {
            rewards.emplace(s, reward->second.renamed(renaming));
        }
    }
    result.model = ParametricModel(model.kind(), std::move(parameters), std::move(states), model.initial(), model.labels(), std::move(rewards));
    return result;
}

Region RelaxedModel::relaxRegion(Region const& region) const {
    std::map<std::string, Interval> byFresh;
    for (auto const& [key, fresh] : renaming) {
        byFresh.emplace(fresh, region.interval(key.second));
    }
    Region::Bounds bounds;
    for (auto const& name : model.parameters()) {
        bounds.emplace_back(name, byFresh.at(name));
    }
    return Region(std::move(bounds));
}

Valuation RelaxedModel::relaxValuation(Valuation const& valuation) const {
    Valuation result;
    for (auto const& [key, fresh] : renaming) {
        auto it = valuation.find(key.second);
        if (it == valuation.end()) {
            throw MissingParameterError("valuation does not bind parameter '" + key.second + "'");
        }
        result.emplace(fresh, it->second);
    }
    return result;
}

std::string cornerActionName(CornerValuation const& corner) {
    return corner.upper.empty() ? "const" : corner.bits();
}

SparseGame SubstitutedModel::numeric() const {
    SparseGame game = SparseGame::fromModel(model);
    game.rowRewards.clear();
    for (auto const& rewards : actionRewards) {
        for (auto const& reward : rewards) {
            game.rowRewards.push_back(toDouble(reward));
        }
    }
    return game;
}

SubstitutionSkeleton::SubstitutionSkeleton(ParametricModel const& model, bool withRewards)
    : model_(&model), withRewards_(withRewards), numberOfStates_(model.numberOfStates()) {
    if (model.kind() == ModelKind::Psg) {
        throw UnsupportedError("parameter lifting of stochastic games is not supported");
    }
    if (withRewards && model.kind() != ModelKind::Pmc) {
        throw UnsupportedError("reward substitution is only supported for pMCs");
    }
    for (StateIndex s = 0; s < model.numberOfStates(); ++s) {
        auto const& choices = model.state(s).choices;
        for (std::size_t c = 0; c < choices.size(); ++c) {
            std::vector<std::string> variables = choices[c].variables;
            auto reward = model.rewards().find(s);
            if (withRewards && reward != model.rewards().end()) {
                std::set<std::string> used(variables.begin(), variables.end());
                for (auto const& name : reward->second.variables()) {
                    used.insert(name);
                }
                variables.clear();
                for (auto const& name : model.parameters()) {
                    if (used.count(name)) {
                        variables.push_back(name);
                    }
                }
            }
            blocks_.push_back({s, c, std::move(variables)});
        }
    }
    if (isGame()) {
        numberOfStates_ += blocks_.size();
    }
}

StateSet SubstitutionSkeleton::liftTarget(StateSet const& target) const {
    StateSet result = target;
    result.resize(numberOfStates_, false);
    return result;
}

template<typename Emit>
void SubstitutionSkeleton::forEachBlock(Region const& region, std::size_t cornerCap, Emit&& emit) const {
    Region ordered = region.reorderedAs(model_->parameters());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        emit(b, corners(ordered, blocks_[b].variables, cornerCap));
    }
}

SparseGame SubstitutionSkeleton::buildNumeric(Region const& region, std::size_t cornerCap) const {
    SparseGame game;
    game.initial = model_->initial();
    std::size_t n = model_->numberOfStates();
    if (isGame()) {
        // Player-one states: one deterministic row per original action.
        std::size_t next = n;
        for (StateIndex s = 0; s < n; ++s) {
            game.players.push_back(Player::One);
            for (std::size_t c = 0; c < model_->state(s).choices.size(); ++c) {
                game.columns.push_back(next++);
                game.values.push_back(1.0);
                game.rowIndices.push_back(game.columns.size());
            }
            game.rowGroupIndices.push_back(game.rowIndices.size() - 1);
        }
    }
    forEachBlock(region, cornerCap, [&](std::size_t b, std::vector<CornerValuation> const& cs) {
        auto const& block = blocks_[b];
        auto const& choice = model_->state(block.state).choices[block.choice];
        auto reward = model_->rewards().find(block.state);
        bool rewarded = withRewards_ && reward != model_->rewards().end();
        for (auto const& corner : cs) {
            for (auto const& transition : choice.transitions) {
                game.columns.push_back(transition.target);
                game.values.push_back(toDouble(transition.probability.evaluate(corner.valuation)));
            }
            game.rowIndices.push_back(game.columns.size());
            if (withRewards_) {
                game.rowRewards.push_back(rewarded ? toDouble(reward->second.evaluate(corner.valuation)) : 0.0);
            }
        }
        game.rowGroupIndices.push_back(game.rowIndices.size() - 1);
        game.players.push_back(isGame() ? Player::Two : Player::One);
    });
    return game;
}

SubstitutedModel SubstitutionSkeleton::build(Region const& region, std::size_t cornerCap) const {
    std::size_t n = model_->numberOfStates();
    std::vector<State> states;
    std::vector<std::vector<CornerValuation>> allCorners;
    std::vector<std::optional<std::pair<StateIndex, std::size_t>>> origin;
    std::vector<std::vector<Rational>> actionRewards;
    if (isGame()) {
        std::size_t next = n;
        for (StateIndex s = 0; s < n; ++s) {
            State state{Player::One, {}};
            for (auto const& choice : model_->state(s).choices) {
                state.choices.push_back(Choice{choice.action, {{next++, Polynomial(1)}}, {}});
            }
            states.push_back(std::move(state));
            allCorners.emplace_back();
            origin.emplace_back();
        }
    }
    forEachBlock(region, cornerCap, [&](std::size_t b, std::vector<CornerValuation> cs) {
        auto const& block = blocks_[b];
        auto const& choice = model_->state(block.state).choices[block.choice];
        auto reward = model_->rewards().find(block.state);
        bool rewarded = withRewards_ && reward != model_->rewards().end();
        State state{isGame() ? Player::Two : Player::One, {}};
        std::vector<Rational> rewards;
        for (auto const& corner : cs) {
            Choice lifted{cornerActionName(corner), {}, {}};
            for (auto const& transition : choice.transitions) {
                lifted.transitions.push_back({transition.target, Polynomial(transition.probability.evaluate(corner.valuation))});
            }
            state.choices.push_back(std::move(lifted));
            if (withRewards_) {
                Rational value = rewarded ? reward->second.evaluate(corner.valuation) : Rational(0);
                if (value < 0) {
                    throw NegativeRewardError("reward of state " + std::to_string(block.state) + " is negative at corner " +
                                              cornerActionName(corner));
                }
                rewards.push_back(value);
            }
        }
        states.push_back(std::move(state));
        allCorners.push_back(std::move(cs));
        if (isGame()) {
            origin.emplace_back(std::make_pair(block.state, block.choice));
        } else {
            origin.emplace_back();
        }
        if (withRewards_) {
            actionRewards.push_back(std::move(rewards));
        }
    });
    return SubstitutedModel{ParametricModel(isGame() ? ModelKind::Psg : ModelKind::Pmdp, {}, std::move(states), model_->initial(), model_->labels()),
                            std::move(allCorners), std::move(origin), std::move(actionRewards)};
}

namespace {

void requireWellDefined(ParametricModel const& model, Region const& region, std::size_t cornerCap) {
    auto check = checkWellDefined(model, region, cornerCap);
    if (!check) {
        throw NotWellDefinedError("region " + region.toString() + " is not well-defined: " + check.witness->describe());
    }
}

}  // namespace

SubstitutedModel substitutePmc(ParametricModel const& model, Region const& region, std::size_t cornerCap) {
    if (model.kind() != ModelKind::Pmc) {
        throw KindError("substitutePmc expects a pMC");
    }
    requireWellDefined(model, region, cornerCap);
    return SubstitutionSkeleton(model).build(region, cornerCap);
}

SubstitutedModel substitutePmdp(ParametricModel const& model, Region const& region, std::size_t cornerCap) {
    if (model.kind() != ModelKind::Pmdp) {
        throw KindError("substitutePmdp expects a pMDP");
    }
    requireWellDefined(model, region, cornerCap);
    return SubstitutionSkeleton(model).build(region, cornerCap);
}

void checkRewardParameters(ParametricModel const& model) {
    std::set<std::string> transitionParameters;
    for (auto const& state : model.states()) {
        for (auto const& choice : state.choices) {
            transitionParameters.insert(choice.variables.begin(), choice.variables.end());
        }
    }
    for (auto const& [s, reward] : model.rewards()) {
        for (auto const& name : reward.variables()) {
            if (transitionParameters.count(name)) {
                throw RewardParameterOverlapError("parameter '" + name + "' occurs in the reward of state " + std::to_string(s) +
                                                  " and in transition probabilities");
            }
        }
    }
}

SubstitutedModel substituteRewards(ParametricModel const& model, Region const& region, std::string const& targetLabel,
                                   std::size_t cornerCap) {
    if (model.kind() != ModelKind::Pmc) {
        throw UnsupportedError("reward substitution is only supported for pMCs");
    }
    if (!model.hasLabel(targetLabel)) {
        throw SyntaxError("unknown target label '" + targetLabel + "'");
    }
    checkRewardParameters(model);
    auto qualitative = qualitativeReach(model, model.labelStates(targetLabel));
    if (!qualitative.prob1[model.initial()]) {
        throw TargetNotAlmostSureError("label '" + targetLabel + "' is not reached almost surely from the initial state");
    }
    requireWellDefined(model, region, cornerCap);
    return SubstitutionSkeleton(model, true).build(region, cornerCap);
}

}  // namespace paramlift
