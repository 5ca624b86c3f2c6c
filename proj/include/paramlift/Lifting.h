#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paramlift/Model.h"
#include "paramlift/Region.h"
#include "paramlift/Solver.h"

namespace paramlift {

/// A model in which every state owns private copies of the parameters it uses.
struct RelaxedModel {
    ParametricModel model;
    /// (state, original parameter) -> fresh parameter.
    std::map<std::pair<StateIndex, std::string>, std::string> renaming;

    /// rel(r): each fresh copy ranges over the interval of its original.
    Region relaxRegion(Region const& region) const;
    /// rel(u): each fresh copy takes the value of its original.
    Valuation relaxValuation(Valuation const& valuation) const;
};

/// Name of the copy of `parameter` owned by state `s`.
std::string relaxedName(std::string const& parameter, StateIndex s);

RelaxedModel relax(ParametricModel const& model);

/**
 * Result of parameter lifting: a parameter-free MDP (pMC input) or SG (pMDP input).
 *
 * For an SG, states 0..n-1 are the original states (player one); each of their actions leads with
 * probability one to a player-two state <s,a>, numbered consecutively after the originals.
 */
struct SubstitutedModel {
    ParametricModel model;
    /// corners[s][c]: the corner picked by choice c of state s; empty for player-one SG states.
    std::vector<std::vector<CornerValuation>> corners;
    /// origin[s]: (original state, original choice index) for player-two SG states.
    std::vector<std::optional<std::pair<StateIndex, std::size_t>>> origin;
    /// actionRewards[s][c]; empty unless built by substituteRewards.
    std::vector<std::vector<Rational>> actionRewards;

    /// Numeric form for the solver; action rewards become row rewards.
    SparseGame numeric() const;
};

/// Action name of a corner: its bit string, or "const" if the state has no non-degenerate parameter.
std::string cornerActionName(CornerValuation const& corner);

/**
 * The layout of a substitution, computed once per model and instantiated per region. Only the
 * probabilities (and the number of corner actions) depend on the region.
 */
class SubstitutionSkeleton {
   public:
    /// Accepts pMCs and pMDPs; with `withRewards` (pMC only), reward parameters join the corners.
    explicit SubstitutionSkeleton(ParametricModel const& model, bool withRewards = false);

    ParametricModel const& model() const {
        return *model_;
    }
    bool isGame() const {
        return model_->kind() == ModelKind::Pmdp;
    }
    std::size_t numberOfStates() const {
        return numberOfStates_;
    }
    /// Target set of the substituted model for a target over the original states.
    StateSet liftTarget(StateSet const& target) const;

    /// Exact substitution. The region must bound exactly the model parameters and be well-defined
    /// (not re-checked here).
    SubstitutedModel build(Region const& region, std::size_t cornerCap = kDefaultCornerCap) const;
    /// Same as build(region).numeric(), without constructing the exact model.
    SparseGame buildNumeric(Region const& region, std::size_t cornerCap = kDefaultCornerCap) const;

   private:
    struct Block {
        StateIndex state;
        std::size_t choice;
        std::vector<std::string> variables;
    };
    template<typename Emit>
    void forEachBlock(Region const& region, std::size_t cornerCap, Emit&& emit) const;

    ParametricModel const* model_;
    bool withRewards_;
    std::size_t numberOfStates_;
    /// One block per original choice whose corners form the choices of a (lifted) state.
    std::vector<Block> blocks_;
};

/// Parameter substitution of a pMC. Throws NotWellDefinedError or CombinatorialLimitError.
SubstitutedModel substitutePmc(ParametricModel const& model, Region const& region, std::size_t cornerCap = kDefaultCornerCap);

/// Parameter substitution of a pMDP into a stochastic game.
SubstitutedModel substitutePmdp(ParametricModel const& model, Region const& region, std::size_t cornerCap = kDefaultCornerCap);

/// Substitution of a pMC with state rewards. Throws RewardParameterOverlapError if reward and
/// transition parameters intersect, TargetNotAlmostSureError unless the target label is reached
/// almost surely from the initial state.
SubstitutedModel substituteRewards(ParametricModel const& model, Region const& region, std::string const& targetLabel,
                                   std::size_t cornerCap = kDefaultCornerCap);

/// Throws RewardParameterOverlapError if some parameter occurs in both a reward and a transition.
void checkRewardParameters(ParametricModel const& model);

}  // namespace paramlift
