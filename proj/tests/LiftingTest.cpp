#include <gtest/gtest.h>

#include <random>

#include "paramlift/Exceptions.h"
#include "paramlift/Lifting.h"
#include "paramlift/Solver.h"
#include "support/Models.h"
#include "support/Oracles.h"

using namespace paramlift;

namespace {

Region fig2Region() {
    return Region::parse("0.1<=x<=0.8, 0.4<=y<=0.7");
}

// (target, probability) pairs of one choice.
std::vector<std::pair<StateIndex, Rational>> row(Choice const& choice) {
    std::vector<std::pair<StateIndex, Rational>> result;
    for (auto const& t : choice.transitions) {
        result.emplace_back(t.target, t.probability.constantValue());
    }
    return result;
}

using Row = std::vector<std::pair<StateIndex, Rational>>;

}  // namespace

TEST(Relax, RunningExample) {
    auto relaxed = relax(parseModel(testmodels::kFig2));
    EXPECT_EQ(relaxed.model.parameters(), (std::vector<std::string>{"x__s0", "y__s1", "y__s2"}));
    EXPECT_EQ(relaxed.renaming.at({0, "x"}), "x__s0");
    EXPECT_EQ(relaxed.renaming.at({2, "y"}), "y__s2");
    EXPECT_EQ(relaxed.model.state(1).choices[0].transitions[0].probability, Polynomial::variable("y__s1"));
    EXPECT_EQ(relaxed.relaxRegion(fig2Region()).interval("y__s2"), (Interval{fraction(2, 5), fraction(7, 10)}));
}

TEST(Relax, CoinAndConstantModels) {
    auto coin = relax(parseModel(testmodels::kCoin));
    EXPECT_EQ(coin.model.parameters(), (std::vector<std::string>{"x__s0", "x__s1"}));
    auto constant = parseModel("@kind pmc\nstate 0\n  1 : 1/2\n  0 : 1/2\nstate 1\n  1 : 1\n");
    auto same = relax(constant);
    EXPECT_TRUE(same.renaming.empty());
    EXPECT_EQ(same.model, constant);
}

// rel(D)[rel(u)] = D[u]
TEST(Relax, InstantiationCommutes) {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 50; ++round) {
        oracle::GeneratorConfig config;
        config.maxActions = round % 2 ? 2 : 1;
        auto m = oracle::randomModel(rng, config);
        auto relaxed = relax(m);
        Valuation u = oracle::randomPoint(rng, Region::uniform(m.parameters(), fraction(1, 20), fraction(19, 20)));
        EXPECT_EQ(instantiate(relaxed.model, relaxed.relaxValuation(u)).states(), instantiate(m, u).states());
        for (auto const& [key, fresh] : relaxed.renaming) {
            bool used = false;
            for (auto const& choice : relaxed.model.state(key.first).choices) {
                used = used || std::find(choice.variables.begin(), choice.variables.end(), fresh) != choice.variables.end();
            }
            EXPECT_TRUE(used) << fresh;
        }
    }
}

TEST(SubstitutePmc, RunningExample) {
    auto subst = substitutePmc(parseModel(testmodels::kFig2), fig2Region());
    auto const& mdp = subst.model;
    EXPECT_EQ(mdp.kind(), ModelKind::Pmdp);
    EXPECT_TRUE(mdp.isParameterFree());
    ASSERT_EQ(mdp.state(0).choices.size(), 2u);
    EXPECT_EQ(row(mdp.state(0).choices[0]), (Row{{1, fraction(1, 10)}, {2, fraction(9, 10)}}));
    EXPECT_EQ(row(mdp.state(0).choices[1]), (Row{{1, fraction(4, 5)}, {2, fraction(1, 5)}}));
    EXPECT_EQ(row(mdp.state(1).choices[0]), (Row{{2, fraction(2, 5)}, {3, fraction(3, 5)}}));
    EXPECT_EQ(row(mdp.state(1).choices[1]), (Row{{2, fraction(7, 10)}, {3, fraction(3, 10)}}));
    EXPECT_EQ(row(mdp.state(2).choices[0]), (Row{{1, fraction(2, 5)}, {4, fraction(3, 5)}}));
    EXPECT_EQ(row(mdp.state(2).choices[1]), (Row{{1, fraction(7, 10)}, {4, fraction(3, 10)}}));
    EXPECT_EQ(mdp.state(0).choices[1].action, "1");
    EXPECT_EQ(mdp.state(3).choices[0].action, "const");
    EXPECT_EQ(subst.corners[0][1].valuation.at("x"), fraction(4, 5));
    EXPECT_EQ(mdp.labelStates("target"), (StateSet{false, false, false, true, false}));
}

TEST(SubstitutePmc, Coin) {
    auto subst = substitutePmc(parseModel(testmodels::kCoin), Region::parse("0.3<=x<=0.6"));
    EXPECT_EQ(row(subst.model.state(0).choices[0]), (Row{{1, fraction(3, 10)}, {3, fraction(7, 10)}}));
    EXPECT_EQ(row(subst.model.state(0).choices[1]), (Row{{1, fraction(3, 5)}, {3, fraction(2, 5)}}));
    EXPECT_EQ(row(subst.model.state(1).choices[0]), (Row{{2, fraction(7, 10)}, {3, fraction(3, 10)}}));
    EXPECT_EQ(row(subst.model.state(1).choices[1]), (Row{{2, fraction(2, 5)}, {3, fraction(3, 5)}}));
}

TEST(SubstitutePmc, ProductPolynomialGivesFourVertices) {
    auto m = parseModel("@kind pmc\n@parameters x y\nstate 0\n  0 : x*y\n  1 : 1 - x*y\nstate 1\n  1 : 1\n");
    auto subst = substitutePmc(m, Region::parse("1/4<=x<=1/2, 1/3<=y<=2/3"));
    auto const& choices = subst.model.state(0).choices;
    ASSERT_EQ(choices.size(), 4u);
    EXPECT_EQ(choices[0].transitions[0].probability.constantValue(), fraction(1, 12));
    EXPECT_EQ(choices[1].transitions[0].probability.constantValue(), fraction(1, 6));
    EXPECT_EQ(choices[2].transitions[0].probability.constantValue(), fraction(1, 6));
    EXPECT_EQ(choices[3].transitions[0].probability.constantValue(), fraction(1, 3));
    EXPECT_EQ(choices[2].action, "10");

    // A degenerate parameter is substituted directly.
    auto flat = substitutePmc(m, Region::parse("1/4<=x<=1/2, 1/3<=y<=1/3"));
    EXPECT_EQ(flat.model.state(0).choices.size(), 2u);
}

TEST(SubstitutePmc, Errors) {
    auto fig2 = parseModel(testmodels::kFig2);
    EXPECT_THROW(substitutePmc(fig2, Region::parse("0<=x<=1, 0<=y<=1")), NotWellDefinedError);
    EXPECT_THROW(substitutePmc(parseModel(testmodels::kFig3b), fig2Region()), KindError);
    EXPECT_THROW(substitutePmdp(fig2, fig2Region()), KindError);
    EXPECT_THROW(substitutePmc(fig2, Region::parse("0.1<=x<=0.8")), RegionMismatchError);
    auto m = parseModel("@kind pmc\n@parameters x y\nstate 0\n  0 : x*y\n  1 : 1 - x*y\nstate 1\n  1 : 1\n");
    EXPECT_THROW(substitutePmc(m, Region::parse("1/4<=x<=1/2, 1/3<=y<=2/3"), 3), CombinatorialLimitError);
}

TEST(SubstitutePmc, DistributionsAreExact) {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 50; ++round) {
        auto m = oracle::randomModel(rng, {});
        Region r = oracle::randomRegion(rng, m.parameters());
        auto subst = substitutePmc(m, r);
        ASSERT_EQ(subst.model.numberOfStates(), m.numberOfStates());
        for (StateIndex s = 0; s < m.numberOfStates(); ++s) {
            std::size_t nondegenerate = 0;
            for (auto const& v : m.state(s).choices[0].variables) {
                nondegenerate += r.interval(v).isDegenerate() ? 0 : 1;
            }
            EXPECT_EQ(subst.model.state(s).choices.size(), std::size_t{1} << nondegenerate);
            for (auto const& choice : subst.model.state(s).choices) {
                Rational sum = 0;
                for (auto const& t : choice.transitions) {
                    Rational p = t.probability.constantValue();
                    EXPECT_GT(p, 0);
                    EXPECT_LE(p, 1);
                    sum += p;
                }
                EXPECT_EQ(sum, Rational(1));
            }
        }
    }
}

// Substituting the relaxation on rel(r) yields the same MDP.
TEST(SubstitutePmc, RelaxationIdentity) {
    std::mt19937_64 rng(35);
    for (int round = 0; round < 50; ++round) {
        auto m = oracle::randomModel(rng, {});
        Region r = oracle::randomRegion(rng, m.parameters());
        auto relaxed = relax(m);
        auto direct = substitutePmc(m, r);
        auto viaRelaxation = substitutePmc(relaxed.model, relaxed.relaxRegion(r));
        EXPECT_EQ(direct.model, viaRelaxation.model) << serializeModel(m) << r.toString();
    }
}

// Every scheduler of the substitution induces rel(D)[v] for the corners it picks.
TEST(SubstitutePmc, SchedulersAreRelaxedValuations) {
    std::mt19937_64 rng(37);
    for (int round = 0; round < 20; ++round) {
        oracle::GeneratorConfig config;
        config.maxStates = 6;
        config.maxParameters = 2;
        auto m = oracle::randomModel(rng, config);
        Region r = oracle::randomRegion(rng, m.parameters());
        auto subst = substitutePmc(m, r);
        auto relaxed = relax(m);
        for (auto const& choice : oracle::allSchedulers(subst.model)) {
            Valuation v;
            Scheduler named;
            for (StateIndex s = 0; s < m.numberOfStates(); ++s) {
                named[s] = subst.model.state(s).choices[choice[s]].action;
                for (auto const& [name, value] : subst.corners[s][choice[s]].valuation) {
                    v[relaxedName(name, s)] = value;
                }
            }
            for (auto const& [key, fresh] : relaxed.renaming) {
                v.emplace(fresh, r.interval(key.second).lower);
            }
            auto induced = induceScheduler(subst.model, named);
            auto instance = instantiate(relaxed.model, v);
            for (StateIndex s = 0; s < m.numberOfStates(); ++s) {
                EXPECT_EQ(induced.state(s).choices[0].transitions, instance.state(s).choices[0].transitions);
            }
        }
    }
}

// With one parametric state the value is f/(1-g) in that state's parameter, hence monotone.
TEST(SubstitutePmc, SingleParameterValueIsMonotone) {
    std::mt19937_64 rng(39);
    int checked = 0;
    for (int round = 0; round < 100 && checked < 40; ++round) {
        oracle::GeneratorConfig config;
        config.maxParameters = 1;
        config.maxParametricStates = 1;
        auto m = oracle::randomModel(rng, config);
        if (m.parameters().empty()) {
            continue;
        }
        ++checked;
        auto target = m.labelStates("target");
        std::vector<Rational> values;
        for (long k = 1; k < 40; ++k) {
            auto mc = instantiate(m, {{m.parameters()[0], fraction(k, 40)}});
            values.push_back(solveMcExact(mc, target)[m.initial()]);
        }
        bool increasing = true, decreasing = true;
        for (std::size_t i = 1; i < values.size(); ++i) {
            increasing = increasing && values[i] >= values[i - 1];
            decreasing = decreasing && values[i] <= values[i - 1];
        }
        EXPECT_TRUE(increasing || decreasing) << serializeModel(m);
    }
    EXPECT_GE(checked, 20);
}

TEST(SubstitutePmdp, GameLayout) {
    auto m = parseModel(testmodels::kFig3b);
    auto subst = substitutePmdp(m, fig2Region());
    auto const& sg = subst.model;
    EXPECT_EQ(sg.kind(), ModelKind::Psg);
    ASSERT_EQ(sg.numberOfStates(), 5u + 6u);
    for (StateIndex s = 0; s < 5; ++s) {
        EXPECT_EQ(sg.state(s).player, Player::One);
        EXPECT_FALSE(subst.origin[s].has_value());
    }
    ASSERT_EQ(sg.state(0).choices.size(), 2u);
    EXPECT_EQ(sg.state(0).choices[0].action, "alpha");
    EXPECT_EQ(row(sg.state(0).choices[0]), (Row{{5, Rational(1)}}));
    EXPECT_EQ(row(sg.state(0).choices[1]), (Row{{6, Rational(1)}}));
    EXPECT_EQ(sg.state(6).player, Player::Two);
    EXPECT_EQ(subst.origin[6], (std::pair<StateIndex, std::size_t>{0, 1}));
    ASSERT_EQ(sg.state(6).choices.size(), 4u);
    // x*y at (0.8, 0.7)
    EXPECT_EQ(row(sg.state(6).choices[3]), (Row{{0, fraction(14, 25)}, {1, fraction(11, 25)}}));
    EXPECT_EQ(sg.state(5).choices.size(), 2u);
    EXPECT_EQ(sg.labelStates("target")[3], true);
}

TEST(SubstitutePmdp, OneActionCollapsesToSubstitutePmc) {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 30; ++round) {
        auto pmc = oracle::randomModel(rng, {});
        ParametricModel pmdp(ModelKind::Pmdp, pmc.parameters(), pmc.states(), pmc.initial(), pmc.labels());
        Region r = oracle::randomRegion(rng, pmc.parameters());
        auto mdp = substitutePmc(pmc, r).model;
        auto sg = substitutePmdp(pmdp, r).model;
        std::size_t n = pmc.numberOfStates();
        ASSERT_EQ(sg.numberOfStates(), 2 * n);
        for (StateIndex s = 0; s < n; ++s) {
            EXPECT_EQ(row(sg.state(s).choices.at(0)), (Row{{n + s, Rational(1)}}));
            EXPECT_EQ(sg.state(n + s).choices, mdp.state(s).choices);
        }
    }
}

TEST(SubstitutePmdp, RejectsGames) {
    EXPECT_THROW(substitutePmdp(parseModel(testmodels::kFig3a), fig2Region()), KindError);
    EXPECT_THROW(SubstitutionSkeleton(parseModel(testmodels::kFig3a)), UnsupportedError);
}

TEST(SubstitutionSkeleton, MatchesDirectSubstitution) {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 30; ++round) {
        oracle::GeneratorConfig config;
        config.maxActions = round % 2 ? 2 : 1;
        auto m = oracle::randomModel(rng, config);
        SubstitutionSkeleton skeleton(m);
        for (int region = 0; region < 3; ++region) {
            Region r = oracle::randomRegion(rng, m.parameters());
            auto direct = m.kind() == ModelKind::Pmc ? substitutePmc(m, r) : substitutePmdp(m, r);
            auto built = skeleton.build(r);
            EXPECT_EQ(built.model, direct.model);
            auto numeric = skeleton.buildNumeric(r);
            auto expected = direct.numeric();
            EXPECT_EQ(numeric.rowGroupIndices, expected.rowGroupIndices);
            EXPECT_EQ(numeric.columns, expected.columns);
            EXPECT_EQ(numeric.values, expected.values);
            EXPECT_EQ(skeleton.liftTarget(m.labelStates("target")), direct.model.labelStates("target"));
        }
    }
}

TEST(SubstituteRewards, Examples) {
    auto chain = parseModel("@kind pmc\n@parameters q\n@label t 1\n@reward 0 : q\nstate 0\n  1 : 1\nstate 1\n  1 : 1\n");
    auto subst = substituteRewards(chain, Region::parse("1<=q<=2"), "t");
    ASSERT_EQ(subst.model.state(0).choices.size(), 2u);
    EXPECT_EQ(subst.actionRewards[0], (std::vector<Rational>{Rational(1), Rational(2)}));
    EXPECT_EQ(subst.numeric().rowRewards[0], 1.0);
    EXPECT_EQ(subst.numeric().rowRewards[1], 2.0);

    auto loop = substituteRewards(parseModel(testmodels::kLoop), Region::parse("1/2<=x<=9/10"), "done");
    ASSERT_EQ(loop.model.state(0).choices.size(), 2u);
    EXPECT_EQ(loop.corners[0][0].valuation.at("x"), fraction(1, 2));
    EXPECT_EQ(loop.corners[0][1].valuation.at("x"), fraction(9, 10));
    EXPECT_EQ(loop.actionRewards[0], (std::vector<Rational>{Rational(1), Rational(1)}));
}

TEST(SubstituteRewards, Preconditions) {
    auto overlap = parseModel("@kind pmc\n@parameters x\n@label t 1\n@reward 0 : x\nstate 0\n  0 : x\n  1 : 1 - x\nstate 1\n  1 : 1\n");
    EXPECT_THROW(substituteRewards(overlap, Region::parse("1/4<=x<=1/2"), "t"), RewardParameterOverlapError);
    EXPECT_THROW(checkRewardParameters(overlap), RewardParameterOverlapError);

    auto stuck = parseModel("@kind pmc\n@parameters x\n@label t 1\n@reward 0 : 1\nstate 0\n  1 : x\n  2 : 1 - x\nstate 1\n  1 : 1\nstate 2\n  2 : 1\n");
    EXPECT_THROW(substituteRewards(stuck, Region::parse("1/4<=x<=1/2"), "t"), TargetNotAlmostSureError);
    EXPECT_THROW(substituteRewards(parseModel(testmodels::kLoop), Region::parse("1/4<=x<=1/2"), "nope"), SyntaxError);
    EXPECT_THROW(substituteRewards(parseModel(testmodels::kFig3b), fig2Region(), "target"), UnsupportedError);

    auto negative = parseModel("@kind pmc\n@parameters q\n@label t 1\n@reward 0 : q\nstate 0\n  1 : 1\nstate 1\n  1 : 1\n");
    EXPECT_THROW(substituteRewards(negative, Region::parse("-1<=q<=2"), "t"), NotWellDefinedError);
}

// Bounds from the substitution enclose the exact values at sampled valuations.
TEST(SubstitutePmc, BoundsEncloseSampledValues) {
    std::mt19937_64 rng(45);
    for (int round = 0; round < 30; ++round) {
        auto m = oracle::randomModel(rng, {});
        Region r = oracle::randomRegion(rng, m.parameters());
        auto subst = substitutePmc(m, r);
        auto target = m.labelStates("target");
        auto game = subst.numeric();
        double upper = valueIterMdp(game, target, OptimizationDirection::Maximize).values[m.initial()];
        double lower = valueIterMdp(game, target, OptimizationDirection::Minimize).values[m.initial()];
        for (int sample = 0; sample < 20; ++sample) {
            double value = oracle::reachAt(m, oracle::randomPoint(rng, r), target);
            EXPECT_LE(lower - 1e-6, value);
            EXPECT_LE(value, upper + 1e-6);
        }
    }
}
