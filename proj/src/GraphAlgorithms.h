#pragma once

// Graph algorithms over anything exposing
//   std::size_t numberOfStates() const;
//   std::size_t numberOfChoices(StateIndex) const;
//   template<class F> void forEachSuccessor(StateIndex, std::size_t choice, F&&) const;

#include <algorithm>
#include <deque>
#include <vector>

#include "paramlift/Model.h"

namespace paramlift::graph {

struct ChoiceRef {
    StateIndex state;
    std::size_t choice;
};

template<typename Graph>
std::vector<std::vector<ChoiceRef>> predecessorChoices(Graph const& graph) {
    std::vector<std::vector<ChoiceRef>> result(graph.numberOfStates());
    for (StateIndex s = 0; s < graph.numberOfStates(); ++s) {
        for (std::size_t c = 0; c < graph.numberOfChoices(s); ++c) {
            graph.forEachSuccessor(s, c, [&](StateIndex t) { result[t].push_back({s, c}); });
        }
    }
    return result;
}

/// States that can reach `goal` through states in `through` (goal states need not be in it).
inline StateSet backwardReachable(std::vector<std::vector<ChoiceRef>> const& predecessors, StateSet const& goal, StateSet const& through) {
    StateSet result = goal;
    std::deque<StateIndex> queue;
    for (StateIndex s = 0; s < goal.size(); ++s) {
        if (goal[s]) {
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateIndex t = queue.front();
        queue.pop_front();
        for (auto const& ref : predecessors[t]) {
            if (!result[ref.state] && through[ref.state]) {
                result[ref.state] = true;
                queue.push_back(ref.state);
            }
        }
    }
    return result;
}

/// Greatest set of non-target states in which some choice resolution can stay forever.
template<typename Graph>
StateSet avoidableForever(Graph const& graph, std::vector<std::vector<ChoiceRef>> const& predecessors, StateSet const& target) {
    std::size_t n = graph.numberOfStates();
    StateSet inside(n);
    for (StateIndex s = 0; s < n; ++s) {
        inside[s] = !target[s];
    }
    // badCount[s][c]: successors of choice c outside the set; goodChoices[s]: choices with none.
    std::vector<std::vector<std::size_t>> badCount(n);
    std::vector<std::size_t> goodChoices(n, 0);
    for (StateIndex s = 0; s < n; ++s) {
        badCount[s].assign(graph.numberOfChoices(s), 0);
        for (std::size_t c = 0; c < badCount[s].size(); ++c) {
            graph.forEachSuccessor(s, c, [&](StateIndex t) {
                if (!inside[t]) {
                    ++badCount[s][c];
                }
            });
            if (badCount[s][c] == 0) {
                ++goodChoices[s];
            }
        }
    }
    std::deque<StateIndex> removed;
    for (StateIndex s = 0; s < n; ++s) {
        if (inside[s] && goodChoices[s] == 0) {
            inside[s] = false;
            removed.push_back(s);
        }
    }
    while (!removed.empty()) {
        StateIndex t = removed.front();
        removed.pop_front();
        for (auto const& ref : predecessors[t]) {
            if (badCount[ref.state][ref.choice]++ == 0) {
                if (--goodChoices[ref.state] == 0 && inside[ref.state]) {
                    inside[ref.state] = false;
                    removed.push_back(ref.state);
                }
            }
        }
    }
    return inside;
}

template<typename Graph>
QualitativeResult qualitativeReach(Graph const& graph, StateSet const& target) {
    std::size_t n = graph.numberOfStates();
    auto predecessors = predecessorChoices(graph);

    StateSet canReach = backwardReachable(predecessors, target, StateSet(n, true));
    QualitativeResult result;
    result.prob0.resize(n);
    for (StateIndex s = 0; s < n; ++s) {
        result.prob0[s] = !canReach[s];
    }

    // Some resolution misses the target with positive probability iff it can walk (avoiding the
    // target) into a set where it can stay away from the target forever.
    StateSet nonTarget(n);
    for (StateIndex s = 0; s < n; ++s) {
        nonTarget[s] = !target[s];
    }
    StateSet canMiss = backwardReachable(predecessors, avoidableForever(graph, predecessors, target), nonTarget);
    result.prob1.resize(n);
    for (StateIndex s = 0; s < n; ++s) {
        result.prob1[s] = !canMiss[s];
    }
    return result;
}

/// Strongly connected components in the order Tarjan's algorithm closes them, i.e. every component
/// appears after all components reachable from it. Returns the flattened state order.
template<typename Graph>
std::vector<StateIndex> bottomUpSccOrder(Graph const& graph) {
    std::size_t n = graph.numberOfStates();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), lowlink(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<StateIndex> stack, order;
    order.reserve(n);
    std::vector<std::vector<StateIndex>> successors(n);
    for (StateIndex s = 0; s < n; ++s) {
        for (std::size_t c = 0; c < graph.numberOfChoices(s); ++c) {
            graph.forEachSuccessor(s, c, [&](StateIndex t) { successors[s].push_back(t); });
        }
    }
    std::size_t counter = 0;
    struct Frame {
        StateIndex state;
        std::size_t next;
    };
    std::vector<Frame> callStack;
    for (StateIndex root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        callStack.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        onStack[root] = true;
        while (!callStack.empty()) {
            Frame& frame = callStack.back();
            StateIndex s = frame.state;
            if (frame.next < successors[s].size()) {
                StateIndex t = successors[s][frame.next++];
                if (index[t] == unvisited) {
                    index[t] = lowlink[t] = counter++;
                    stack.push_back(t);
                    onStack[t] = true;
                    callStack.push_back({t, 0});
                } else if (onStack[t]) {
                    lowlink[s] = std::min(lowlink[s], index[t]);
                }
                continue;
            }
            if (lowlink[s] == index[s]) {
                StateIndex t;
                do {
                    t = stack.back();
                    stack.pop_back();
                    onStack[t] = false;
                    order.push_back(t);
                } while (t != s);
            }
            callStack.pop_back();
            if (!callStack.empty()) {
                StateIndex parent = callStack.back().state;
                lowlink[parent] = std::min(lowlink[parent], lowlink[s]);
            }
        }
    }
    return order;
}

}  // namespace paramlift::graph
