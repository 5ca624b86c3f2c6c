#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "paramlift/Model.h"
#include "paramlift/Rational.h"

namespace paramlift {

enum class OptimizationDirection { Minimize, Maximize };

/**
 * Parameter-free MC/MDP/SG in compressed row storage. The rows of state s are
 * rowGroupIndices[s] .. rowGroupIndices[s+1]-1; the entries of row r are
 * rowIndices[r] .. rowIndices[r+1]-1.
 */
struct SparseGame {
    std::vector<std::size_t> rowGroupIndices{0};
    std::vector<std::size_t> rowIndices{0};
    std::vector<StateIndex> columns;
    std::vector<double> values;
    std::vector<Player> players;
    /// Reward earned when taking a row; empty if the game carries no rewards.
    std::vector<double> rowRewards;
    StateIndex initial = 0;

    std::size_t numberOfStates() const {
        return players.size();
    }
    std::size_t numberOfChoices(StateIndex s) const {
        return rowGroupIndices[s + 1] - rowGroupIndices[s];
    }
    std::size_t numberOfRows() const {
        return rowIndices.size() - 1;
    }
    template<typename F>
    void forEachSuccessor(StateIndex s, std::size_t choice, F&& f) const {
        std::size_t row = rowGroupIndices[s] + choice;
        for (std::size_t e = rowIndices[row]; e < rowIndices[row + 1]; ++e) {
            f(columns[e]);
        }
    }

    /// Converts a parameter-free model; state rewards are attached to every row of the state.
    static SparseGame fromModel(ParametricModel const& model);
};

QualitativeResult qualitativeReach(SparseGame const& game, StateSet const& target);

struct SolverOptions {
    double epsilon = 1e-6;
    /// Stop on |new - old| / |new| instead of |new - old|.
    bool relative = false;
    std::size_t maxIterations = 1'000'000;
    /// Additionally require the extrapolated remaining error (from the ratio of consecutive
    /// residuals) to be below epsilon; slowly contracting systems otherwise stop far from the fixpoint.
    bool errorEstimate = true;
    /// Called with the value vector after every sweep.
    std::function<void(std::vector<double> const&)> sweepObserver;
};

struct SolveResult {
    std::vector<double> values;
    /// Greedy choice (local row index) per state; ties go to the lowest index.
    std::vector<std::size_t> choices;
    std::size_t iterations = 0;
    double residual = 0.0;

    /// The choices of the given player's states as an action-name scheduler over `model`.
    Scheduler scheduler(ParametricModel const& model, std::optional<Player> player = std::nullopt) const;
};

/// Min/max reachability probabilities of an MDP by Gauss-Seidel value iteration.
SolveResult valueIterMdp(SparseGame const& mdp, StateSet const& target, OptimizationDirection direction,
                         SolverOptions const& options = {});

/// Reachability in a stochastic game: player-1 states optimise `playerOne`, player-2 states `playerTwo`.
SolveResult valueIterSg(SparseGame const& game, StateSet const& target, OptimizationDirection playerOne, OptimizationDirection playerTwo,
                        SolverOptions const& options = {});

/// Min/max expected total reward until the target. Throws TargetNotAlmostSureError unless the target is
/// reached almost surely from the initial state under every scheduler. States outside that set get +inf.
SolveResult expectedRewardIter(SparseGame const& mdp, StateSet const& target, OptimizationDirection direction,
                               SolverOptions const& options = {});

/// Exact reachability probabilities of a parameter-free MC by graph precomputation and Gaussian elimination.
std::vector<Rational> solveMcExact(ParametricModel const& mc, StateSet const& target);

/// Exact expected reward until the target of a parameter-free MC; empty entries denote infinity
/// (target not reached almost surely).
std::vector<std::optional<Rational>> solveMcRewardExact(ParametricModel const& mc, StateSet const& target);

}  // namespace paramlift
