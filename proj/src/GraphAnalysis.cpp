#include "GraphAlgorithms.h"
#include "paramlift/Model.h"

namespace paramlift {

namespace {

struct ModelGraph {
    ParametricModel const& model;

    std::size_t numberOfStates() const {
        return model.numberOfStates();
    }
    std::size_t numberOfChoices(StateIndex s) const {
        return model.state(s).choices.size();
    }
    template<typename F>
    void forEachSuccessor(StateIndex s, std::size_t c, F&& f) const {
        for (auto const& transition : model.state(s).choices[c].transitions) {
            f(transition.target);
        }
    }
};

}  // namespace

QualitativeResult qualitativeReach(ParametricModel const& model, StateSet const& target) {
    return graph::qualitativeReach(ModelGraph{model}, target);
}

StateSet forwardReachable(ParametricModel const& model, StateIndex from) {
    StateSet result(model.numberOfStates(), false);
    std::deque<StateIndex> queue{from};
    result[from] = true;
    while (!queue.empty()) {
        StateIndex s = queue.front();
        queue.pop_front();
        for (auto const& choice : model.state(s).choices) {
            for (auto const& transition : choice.transitions) {
                if (!result[transition.target]) {
                    result[transition.target] = true;
                    queue.push_back(transition.target);
                }
            }
        }
    }
    return result;
}

}  // namespace paramlift
