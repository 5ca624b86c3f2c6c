#include <fstream>
#include <sstream>

#include "paramlift/Exceptions.h"
#include "paramlift/Model.h"

namespace paramlift {

namespace {

std::string trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    auto end = text.find_last_not_of(" \t\r");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> splitWords(std::string const& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    for (std::string word; in >> word;) {
        words.push_back(word);
    }
    return words;
}

class ModelParser {
   public:
    explicit ModelParser(std::string_view text) : text_(text) {}

    ParametricModel parse() {
        std::istringstream in{std::string(text_)};
        std::string rawLine;
        while (std::getline(in, rawLine)) {
            ++lineNumber_;
            std::string line = rawLine;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            if (line.front() == '@') {
                parseDirective(line);
            } else {
                parseBody(line);
            }
        }
        return build();
    }

   private:
    struct PendingState {
        bool declared = false;
        Player player = Player::One;
        bool hasTag = false;
        std::vector<Choice> choices;
        bool implicitAction = false;
    };

    [[noreturn]] void fail(std::string const& what) const {
        throw SyntaxError("line " + std::to_string(lineNumber_) + ": " + what);
    }

    StateIndex parseStateIndex(std::string const& word) const {
        if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos || word.size() > 18) {
            fail("expected a state index, got '" + word + "'");
        }
        return static_cast<StateIndex>(std::stoull(word));
    }

    void noteState(StateIndex s) {
        maxState_ = std::max(maxState_, s + 1);
    }

    void parseDirective(std::string const& line) {
        auto words = splitWords(line);
        std::string const& directive = words.front();
        if (directive == "@kind") {
            if (words.size() != 2) {
                fail("expected '@kind pmc|pmdp|psg'");
            }
            if (words[1] == "pmc") {
                kind_ = ModelKind::Pmc;
            } else if (words[1] == "pmdp") {
                kind_ = ModelKind::Pmdp;
            } else if (words[1] == "psg") {
                kind_ = ModelKind::Psg;
            } else {
                fail("unknown model kind '" + words[1] + "'");
            }
        } else if (directive == "@parameters") {
            for (std::size_t i = 1; i < words.size(); ++i) {
                Polynomial check = Polynomial::parse(words[i]);
                if (check != Polynomial::variable(words[i])) {
                    fail("invalid parameter name '" + words[i] + "'");
                }
                parameters_.push_back(words[i]);
            }
        } else if (directive == "@initial") {
            if (words.size() != 2) {
                fail("expected '@initial <state>'");
            }
            initial_ = parseStateIndex(words[1]);
            noteState(*initial_);
        } else if (directive == "@label") {
            if (words.size() < 2) {
                fail("expected '@label <name> <state>...'");
            }
            auto& members = labels_[words[1]];
            for (std::size_t i = 2; i < words.size(); ++i) {
                StateIndex s = parseStateIndex(words[i]);
                noteState(s);
                members.insert(s);
            }
        } else if (directive == "@reward") {
            auto colon = line.find(':');
            if (colon == std::string::npos) {
                fail("expected '@reward <state> : <polynomial>'");
            }
            auto head = splitWords(line.substr(0, colon));
            if (head.size() == 3) {
                fail("transition rewards are not supported; use state rewards");
            }
            if (head.size() != 2) {
                fail("expected '@reward <state> : <polynomial>'");
            }
            StateIndex s = parseStateIndex(head[1]);
            noteState(s);
            if (rewards_.count(s)) {
                fail("duplicate reward for state " + head[1]);
            }
            rewards_.emplace(s, parsePolynomial(line.substr(colon + 1)));
        } else if (directive == "@transition_reward" || directive == "@transreward") {
            fail("transition rewards are not supported; use state rewards");
        } else {
            fail("unknown directive '" + directive + "'");
        }
    }

    Polynomial parsePolynomial(std::string const& text) const {
        try {
            return Polynomial::parse(text);
        } catch (SyntaxError const& e) {
            fail(e.what());
        } catch (NotMultiAffineError const& e) {
            throw NotMultiAffineError("line " + std::to_string(lineNumber_) + ": " + e.what());
        }
    }

    void parseBody(std::string const& line) {
        auto words = splitWords(line);
        if (words.front() == "state") {
            if (words.size() < 2 || words.size() > 3) {
                fail("expected 'state <index> [player1|player2]'");
            }
            StateIndex s = parseStateIndex(words[1]);
            noteState(s);
            if (states_.size() <= s) {
                states_.resize(s + 1);
            }
            if (states_[s].declared) {
                fail("state " + words[1] + " declared twice");
            }
            states_[s].declared = true;
            if (words.size() == 3) {
                if (words[2] == "player1") {
                    states_[s].player = Player::One;
                } else if (words[2] == "player2") {
                    states_[s].player = Player::Two;
                } else {
                    fail("unknown player tag '" + words[2] + "'");
                }
                states_[s].hasTag = true;
            }
            current_ = s;
            return;
        }
        if (!current_) {
            fail("expected a state declaration");
        }
        PendingState& state = states_[*current_];
        if (words.front() == "action") {
            if (words.size() != 2) {
                fail("expected 'action <name>'");
            }
            if (state.implicitAction) {
                fail("explicit action after transitions without an action");
            }
            state.choices.push_back(Choice{words[1], {}, {}});
            return;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            fail("expected '<target> : <polynomial>'");
        }
        auto head = splitWords(line.substr(0, colon));
        if (head.size() != 1) {
            fail("expected '<target> : <polynomial>'");
        }
        StateIndex target = parseStateIndex(head[0]);
        noteState(target);
        if (state.choices.empty()) {
            state.implicitAction = true;
            state.choices.push_back(Choice{"tau", {}, {}});
        }
        state.choices.back().transitions.push_back({target, parsePolynomial(line.substr(colon + 1))});
    }

    ParametricModel build() {
        if (!kind_) {
            throw SyntaxError("missing '@kind' directive");
        }
        noteState(0);
        if (states_.size() < maxState_) {
            states_.resize(maxState_);
        }
        std::vector<State> states;
        states.reserve(states_.size());
        for (StateIndex s = 0; s < states_.size(); ++s) {
            auto& pending = states_[s];
            if (!pending.declared) {
                throw DeadlockError("state " + std::to_string(s) + " is referenced but never declared");
            }
            if (*kind_ == ModelKind::Psg && !pending.hasTag) {
                throw KindError("state " + std::to_string(s) + " lacks a player tag in a psg");
            }
            if (*kind_ != ModelKind::Psg && pending.hasTag) {
                throw KindError("state " + std::to_string(s) + " has a player tag in a " + std::string(toString(*kind_)));
            }
            states.push_back(State{pending.player, std::move(pending.choices)});
        }
        return ParametricModel(*kind_, std::move(parameters_), std::move(states), initial_.value_or(0), std::move(labels_),
                               std::move(rewards_));
    }

    std::string_view text_;
    std::size_t lineNumber_ = 0;
    std::optional<ModelKind> kind_;
    std::vector<std::string> parameters_;
    std::optional<StateIndex> initial_;
    std::map<std::string, std::set<StateIndex>> labels_;
    std::map<StateIndex, Polynomial> rewards_;
    std::vector<PendingState> states_;
    std::optional<StateIndex> current_;
    std::size_t maxState_ = 0;
};

}  // namespace

ParametricModel parseModel(std::string_view text) {
    return ModelParser(text).parse();
}

ParametricModel readModelFile(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open model file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseModel(buffer.str());
}

std::string serializeModel(ParametricModel const& model) {
    std::ostringstream out;
    out << "@kind " << toString(model.kind()) << "\n";
    out << "@parameters";
    for (auto const& name : model.parameters()) {
        out << " " << name;
    }
    out << "\n@initial " << model.initial() << "\n";
    for (auto const& [name, members] : model.labels()) {
        out << "@label " << name;
        for (StateIndex s : members) {
            out << " " << s;
        }
        out << "\n";
    }
    for (auto const& [s, reward] : model.rewards()) {
        out << "@reward " << s << " : " << reward << "\n";
    }
    for (StateIndex s = 0; s < model.numberOfStates(); ++s) {
        auto const& state = model.state(s);
        out << "state " << s;
        if (model.kind() == ModelKind::Psg) {
            out << (state.player == Player::One ? " player1" : " player2");
        }
        out << "\n";
        for (auto const& choice : state.choices) {
            out << "  action " << choice.action << "\n";
            for (auto const& transition : choice.transitions) {
                out << "    " << transition.target << " : " << transition.probability << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace paramlift
