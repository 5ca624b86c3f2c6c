#include "paramlift/Solver.h"

#include <cmath>
#include <limits>

#include "GraphAlgorithms.h"
#include "paramlift/Exceptions.h"

namespace paramlift {

SparseGame SparseGame::fromModel(ParametricModel const& model) {
    if (!model.isParameterFree()) {
        throw UnsupportedError("numeric solving requires a parameter-free model");
    }
    SparseGame game;
    game.initial = model.initial();
    bool withRewards = model.hasRewards();
    for (StateIndex s = 0; s < model.numberOfStates(); ++s) {
        auto const& state = model.state(s);
        game.players.push_back(state.player);
        double reward = 0.0;
        if (auto it = model.rewards().find(s); it != model.rewards().end()) {
            reward = toDouble(it->second.constantValue());
        }
        for (auto const& choice : state.choices) {
            for (auto const& transition : choice.transitions) {
                game.columns.push_back(transition.target);
                game.values.push_back(toDouble(transition.probability.constantValue()));
            }
            game.rowIndices.push_back(game.columns.size());
            if (withRewards) {
                game.rowRewards.push_back(reward);
            }
        }
        game.rowGroupIndices.push_back(game.rowIndices.size() - 1);
    }
    return game;
}

QualitativeResult qualitativeReach(SparseGame const& game, StateSet const& target) {
    return graph::qualitativeReach(game, target);
}

Scheduler SolveResult::scheduler(ParametricModel const& model, std::optional<Player> player) const {
    Scheduler result;
    for (StateIndex s = 0; s < choices.size() && s < model.numberOfStates(); ++s) {
        auto const& state = model.state(s);
        if (player && state.player != *player) {
            continue;
        }
        result.emplace(s, state.choices.at(choices[s]).action);
    }
    return result;
}

namespace {

enum class Objective { Reachability, Reward };

class GaussSeidelIteration {
   public:
    GaussSeidelIteration(SparseGame const& game, Objective objective, OptimizationDirection playerOne, OptimizationDirection playerTwo,
                         SolverOptions const& options)
        : game_(game), objective_(objective), playerOne_(playerOne), playerTwo_(playerTwo), options_(options) {
        if (!(options.epsilon > 0.0)) {
            throw std::invalid_argument("value iteration precision must be positive");
        }
    }

    /// Iterates on the states not marked `fixed`, starting from `values`.
    SolveResult run(std::vector<double> values, StateSet const& fixed) const {
        std::vector<StateIndex> order;
        for (StateIndex s : graph::bottomUpSccOrder(game_)) {
            if (!fixed[s]) {
                order.push_back(s);
            }
        }
        SolveResult result;
        double previousChange = std::numeric_limits<double>::infinity();
        while (true) {
            if (result.iterations >= options_.maxIterations) {
                throw NonConvergenceError("value iteration did not converge within " + std::to_string(options_.maxIterations) +
                                          " sweeps (last change " + std::to_string(result.residual) + ")");
            }
            double maxChange = 0.0;
            for (StateIndex s : order) {
                double updated = bestValue(s, values).first;
                double change = std::abs(updated - values[s]);
                if (options_.relative && updated != 0.0) {
                    change /= std::abs(updated);
                }
                maxChange = std::max(maxChange, change);
                values[s] = updated;
            }
            ++result.iterations;
            result.residual = maxChange;
            if (options_.sweepObserver) {
                options_.sweepObserver(values);
            }
            if (maxChange < options_.epsilon && (!options_.errorEstimate || remainingError(maxChange, previousChange) < options_.epsilon)) {
                break;
            }
            previousChange = maxChange;
        }
        result.choices.assign(game_.numberOfStates(), 0);
        for (StateIndex s = 0; s < game_.numberOfStates(); ++s) {
            result.choices[s] = bestValue(s, values).second;
        }
        result.values = std::move(values);
        return result;
    }

   private:
    // Geometric tail of the residual sequence: with ratio q the values still move by at most change*q/(1-q).
    static double remainingError(double change, double previous) {
        if (change == 0.0) {
            return 0.0;
        }
        double q = std::min(change / previous, 1.0 - 1e-9);
        return change * q / (1.0 - q);
    }

    /// Value of one row with its self-loop solved in closed form.
    double rowValue(StateIndex s, std::size_t row, std::vector<double> const& values) const {
        double selfLoop = 0.0;
        double rest = objective_ == Objective::Reward && !game_.rowRewards.empty() ? game_.rowRewards[row] : 0.0;
        for (std::size_t e = game_.rowIndices[row]; e < game_.rowIndices[row + 1]; ++e) {
            if (game_.columns[e] == s) {
                selfLoop += game_.values[e];
            } else {
                rest += game_.values[e] * values[game_.columns[e]];
            }
        }
        if (selfLoop >= 1.0) {
            return rest > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        return rest / (1.0 - selfLoop);
    }

    std::pair<double, std::size_t> bestValue(StateIndex s, std::vector<double> const& values) const {
        bool maximize = (game_.players[s] == Player::One ? playerOne_ : playerTwo_) == OptimizationDirection::Maximize;
        std::size_t first = game_.rowGroupIndices[s];
        std::size_t last = game_.rowGroupIndices[s + 1];
        double best = rowValue(s, first, values);
        std::size_t bestChoice = 0;
        for (std::size_t row = first + 1; row < last; ++row) {
            double value = rowValue(s, row, values);
            if (maximize ? value > best : value < best) {
                best = value;
                bestChoice = row - first;
            }
        }
        return {best, bestChoice};
    }

    SparseGame const& game_;
    Objective objective_;
    OptimizationDirection playerOne_;
    OptimizationDirection playerTwo_;
    SolverOptions const& options_;
};

void checkTargetSize(SparseGame const& game, StateSet const& target) {
    if (target.size() != game.numberOfStates()) {
        throw std::invalid_argument("target set does not match the number of states");
    }
}

}  // namespace

SolveResult valueIterSg(SparseGame const& game, StateSet const& target, OptimizationDirection playerOne, OptimizationDirection playerTwo,
                        SolverOptions const& options) {
    checkTargetSize(game, target);
    auto qualitative = qualitativeReach(game, target);
    std::size_t n = game.numberOfStates();
    std::vector<double> values(n, 0.0);
    StateSet fixed(n, false);
    for (StateIndex s = 0; s < n; ++s) {
        if (qualitative.prob1[s]) {
            values[s] = 1.0;
            fixed[s] = true;
        } else if (qualitative.prob0[s]) {
            fixed[s] = true;
        }
    }
    return GaussSeidelIteration(game, Objective::Reachability, playerOne, playerTwo, options).run(std::move(values), fixed);
}

SolveResult valueIterMdp(SparseGame const& mdp, StateSet const& target, OptimizationDirection direction, SolverOptions const& options) {
    return valueIterSg(mdp, target, direction, direction, options);
}

SolveResult expectedRewardIter(SparseGame const& mdp, StateSet const& target, OptimizationDirection direction, SolverOptions const& options) {
    checkTargetSize(mdp, target);
    auto qualitative = qualitativeReach(mdp, target);
    if (!qualitative.prob1[mdp.initial]) {
        throw TargetNotAlmostSureError("target is not reached almost surely from state " + std::to_string(mdp.initial) +
                                       " under every scheduler");
    }
    std::size_t n = mdp.numberOfStates();
    std::vector<double> values(n, 0.0);
    StateSet fixed(n, false);
    for (StateIndex s = 0; s < n; ++s) {
        if (target[s]) {
            fixed[s] = true;
        } else if (!qualitative.prob1[s]) {
            values[s] = std::numeric_limits<double>::infinity();
            fixed[s] = true;
        }
    }
    return GaussSeidelIteration(mdp, Objective::Reward, direction, direction, options).run(std::move(values), fixed);
}

namespace {

/// Solves A x = b in place by Gauss-Jordan elimination; A is square and regular.
std::vector<Rational> solveDense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::logic_error("singular equation system in exact solve");
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        Rational inverse = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) {
            a[col][j] *= inverse;
        }
        b[col] *= inverse;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) {
                continue;
            }
            Rational factor = a[row][col];
            for (std::size_t j = col; j < n; ++j) {
                if (a[col][j] != 0) {
                    a[row][j] -= factor * a[col][j];
                }
            }
            b[row] -= factor * b[col];
        }
    }
    return b;
}

void checkMarkovChain(ParametricModel const& mc) {
    if (!mc.isParameterFree()) {
        throw UnsupportedError("exact solving requires a parameter-free model");
    }
    for (auto const& state : mc.states()) {
        if (state.choices.size() != 1) {
            throw UnsupportedError("exact solving requires a Markov chain");
        }
    }
}

/// Solves x_s = c_s + sum_{t in unknown} P(s,t) x_t over the states in `unknown`.
std::vector<Rational> solveSubsystem(ParametricModel const& mc, StateSet const& unknown, std::vector<Rational> const& constants,
                                     std::vector<std::size_t>& localIndex) {
    std::size_t n = mc.numberOfStates();
    localIndex.assign(n, 0);
    std::size_t count = 0;
    for (StateIndex s = 0; s < n; ++s) {
        if (unknown[s]) {
            localIndex[s] = count++;
        }
    }
    std::vector<std::vector<Rational>> a(count, std::vector<Rational>(count));
    std::vector<Rational> b(count);
    for (StateIndex s = 0; s < n; ++s) {
        if (!unknown[s]) {
            continue;
        }
        std::size_t i = localIndex[s];
        a[i][i] += 1;
        b[i] = constants[s];
        for (auto const& transition : mc.state(s).choices.front().transitions) {
            if (unknown[transition.target]) {
                a[i][localIndex[transition.target]] -= transition.probability.constantValue();
            }
        }
    }
    return solveDense(std::move(a), std::move(b));
}

}  // namespace

std::vector<Rational> solveMcExact(ParametricModel const& mc, StateSet const& target) {
    checkMarkovChain(mc);
    auto qualitative = qualitativeReach(mc, target);
    std::size_t n = mc.numberOfStates();
    StateSet unknown(n);
    std::vector<Rational> constants(n);
    for (StateIndex s = 0; s < n; ++s) {
        unknown[s] = !qualitative.prob0[s] && !qualitative.prob1[s];
        if (unknown[s]) {
            for (auto const& transition : mc.state(s).choices.front().transitions) {
                if (qualitative.prob1[transition.target]) {
                    constants[s] += transition.probability.constantValue();
                }
            }
        }
    }
    std::vector<std::size_t> localIndex;
    auto solution = solveSubsystem(mc, unknown, constants, localIndex);
    std::vector<Rational> result(n);
    for (StateIndex s = 0; s < n; ++s) {
        if (qualitative.prob1[s]) {
            result[s] = 1;
        } else if (unknown[s]) {
            result[s] = solution[localIndex[s]];
        }
    }
    return result;
}

std::vector<std::optional<Rational>> solveMcRewardExact(ParametricModel const& mc, StateSet const& target) {
    checkMarkovChain(mc);
    auto qualitative = qualitativeReach(mc, target);
    std::size_t n = mc.numberOfStates();
    StateSet unknown(n);
    std::vector<Rational> constants(n);
    for (StateIndex s = 0; s < n; ++s) {
        unknown[s] = qualitative.prob1[s] && !target[s];
        if (auto it = mc.rewards().find(s); it != mc.rewards().end()) {
            constants[s] = it->second.constantValue();
        }
    }
    std::vector<std::size_t> localIndex;
    auto solution = solveSubsystem(mc, unknown, constants, localIndex);
    std::vector<std::optional<Rational>> result(n);
    for (StateIndex s = 0; s < n; ++s) {
        if (target[s]) {
            result[s] = Rational(0);
        } else if (unknown[s]) {
            result[s] = solution[localIndex[s]];
        }
    }
    return result;
}

}  // namespace paramlift
