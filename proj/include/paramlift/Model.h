#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paramlift/Polynomial.h"

namespace paramlift {

using StateIndex = std::size_t;

/// Dense membership vector over the states of a model.
using StateSet = std::vector<bool>;

enum class ModelKind { Pmc, Pmdp, Psg };

/// Circle states belong to player One, box states to player Two. pMCs and pMDPs only use One.
enum class Player : std::uint8_t { One, Two };

std::string_view toString(ModelKind kind);

struct Transition {
    StateIndex target;
    Polynomial probability;

    friend bool operator==(Transition const&, Transition const&) = default;
};

/// One enabled action of a state with its (sparse) distribution.
struct Choice {
    std::string action;
    /// Sorted by target, no zero polynomials, no duplicate targets.
    std::vector<Transition> transitions;
    /// Parameters occurring in the distribution, in declared parameter order (V_s^a).
    std::vector<std::string> variables;

    friend bool operator==(Choice const&, Choice const&) = default;
};

struct State {
    Player player = Player::One;
    std::vector<Choice> choices;

    friend bool operator==(State const&, State const&) = default;
};

/**
 * A parametric Markov chain, MDP, or two-player stochastic game with multi-affine transition
 * polynomials and optional state rewards. Parameter-free models (MC, MDP, SG) are the special case
 * of an empty parameter list.
 *
 * The constructor validates the model: no deadlocks, every distribution sums symbolically to one,
 * player tags and action counts consistent with the kind, and only declared parameters occur.
 * Instances are immutable.
 */
class ParametricModel {
   public:
    ParametricModel(ModelKind kind, std::vector<std::string> parameters, std::vector<State> states, StateIndex initial,
                    std::map<std::string, std::set<StateIndex>> labels = {}, std::map<StateIndex, Polynomial> rewards = {});

    ModelKind kind() const {
        return kind_;
    }
    std::vector<std::string> const& parameters() const {
        return parameters_;
    }
    std::vector<State> const& states() const {
        return states_;
    }
    State const& state(StateIndex s) const {
        return states_.at(s);
    }
    std::size_t numberOfStates() const {
        return states_.size();
    }
    std::size_t numberOfChoices() const;
    std::size_t numberOfTransitions() const;
    StateIndex initial() const {
        return initial_;
    }
    std::map<std::string, std::set<StateIndex>> const& labels() const {
        return labels_;
    }
    bool hasLabel(std::string const& name) const {
        return labels_.count(name) > 0;
    }
    /// Throws std::out_of_range for unknown labels.
    StateSet labelStates(std::string const& name) const;
    /// Nonzero state rewards; absent states earn zero.
    std::map<StateIndex, Polynomial> const& rewards() const {
        return rewards_;
    }
    bool hasRewards() const {
        return !rewards_.empty();
    }
    bool isParameterFree() const {
        return parameters_.empty();
    }
    /// Index of a choice by action name, if enabled.
    std::optional<std::size_t> choiceIndex(StateIndex s, std::string const& action) const;

    friend bool operator==(ParametricModel const&, ParametricModel const&) = default;

   private:
    ModelKind kind_;
    std::vector<std::string> parameters_;
    std::vector<State> states_;
    StateIndex initial_;
    std::map<std::string, std::set<StateIndex>> labels_;
    std::map<StateIndex, Polynomial> rewards_;
};

/// Memoryless deterministic scheduler, possibly partial, given by action names.
using Scheduler = std::map<StateIndex, std::string>;

/// Parses the line-oriented model format. Throws SyntaxError, DistributionError, DeadlockError or KindError.
ParametricModel parseModel(std::string_view text);
ParametricModel readModelFile(std::string const& path);
std::string serializeModel(ParametricModel const& model);

/// Replaces every polynomial by its value at a valuation binding all parameters. Throws
/// NotWellDefinedError if a transition (or reward) polynomial f != 0 has f[u] <= 0.
ParametricModel instantiate(ParametricModel const& model, Valuation const& valuation);

/// Resolves nondeterminism by the given choices. States with a single action may be omitted.
/// pSG with both players' choices or pMDP -> pMC; pSG with one player's choices -> pMDP.
ParametricModel induceScheduler(ParametricModel const& model, Scheduler const& scheduler);

struct QualitativeResult {
    /// States from which the target is unreachable under every scheduler.
    StateSet prob0;
    /// States reaching the target with probability one under every scheduler.
    StateSet prob1;
};

/// Graph analysis on the support of the transition polynomials.
QualitativeResult qualitativeReach(ParametricModel const& model, StateSet const& target);

/// States reachable from `from` in the support graph.
StateSet forwardReachable(ParametricModel const& model, StateIndex from);

/**
 * Eliminates states that have a single action whose outgoing probabilities are all constant,
 * redirecting their predecessors. The initial state, labelled states, rewarded states and states
 * with a constant self-loop of probability one are kept. Reachability values from the initial
 * state are preserved.
 */
ParametricModel eliminateConstantStates(ParametricModel const& model);

}  // namespace paramlift
