#include "paramlift/Synthesis.h"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <thread>

#include "paramlift/Exceptions.h"
#include "paramlift/Solver.h"

namespace paramlift {

std::string_view toString(Verdict verdict) {
    switch (verdict) {
        case Verdict::Safe:
            return "safe";
        case Verdict::Unsafe:
            return "unsafe";
        case Verdict::Unknown:
            return "unknown";
        case Verdict::IllDefined:
            return "ill_defined";
    }
    return "?";
}

std::string_view toString(SampleVerdict verdict) {
    switch (verdict) {
        case SampleVerdict::AllSat:
            return "all_sat";
        case SampleVerdict::AllViol:
            return "all_viol";
        case SampleVerdict::Neither:
            return "neither";
    }
    return "?";
}

Verdict classifyBounds(Property const& property, double lower, double upper, double delta) {
    double lambda = toDouble(property.threshold);
    double below = lambda - delta;
    double above = lambda + delta;
    switch (property.comparison) {
        case Comparison::LessEqual:
            return upper <= below ? Verdict::Safe : lower > above ? Verdict::Unsafe : Verdict::Unknown;
        case Comparison::Less:
            return upper < below ? Verdict::Safe : lower >= above ? Verdict::Unsafe : Verdict::Unknown;
        case Comparison::GreaterEqual:
            return lower >= above ? Verdict::Safe : upper < below ? Verdict::Unsafe : Verdict::Unknown;
        case Comparison::Greater:
            return lower > above ? Verdict::Safe : upper <= below ? Verdict::Unsafe : Verdict::Unknown;
    }
    return Verdict::Unknown;
}

namespace {

StateSet targetStates(ParametricModel const& model, Property const& property) {
    if (!model.hasLabel(property.target)) {
        throw SyntaxError("unknown target label '" + property.target + "'");
    }
    return model.labelStates(property.target);
}

SolverOptions solverOptions(CheckOptions const& options) {
    SolverOptions result;
    result.epsilon = options.epsilon;
    result.relative = options.relativeEpsilon;
    return result;
}

}  // namespace

RegionChecker::RegionChecker(ParametricModel const& model, Property property, CheckOptions options)
    : model_(model), property_(std::move(property)), options_(options), target_(targetStates(model, property_)) {
    if (model.kind() == ModelKind::Psg) {
        throw UnsupportedError("region checking of parametric games is not supported");
    }
    bool rewards = property_.kind == PropertyKind::ExpReward;
    if (rewards) {
        if (model.kind() != ModelKind::Pmc) {
            throw UnsupportedError("expected-reward properties are only supported for pMCs");
        }
        try {
            checkRewardParameters(model);
            if (!qualitativeReach(model, target_).prob1[model.initial()]) {
                throw TargetNotAlmostSureError("label '" + property_.target + "' is not reached almost surely from the initial state");
            }
        } catch (RewardParameterOverlapError const& e) {
            rewardProblem_ = e.what();
        } catch (TargetNotAlmostSureError const& e) {
            rewardProblem_ = e.what();
        }
    }
    skeleton_.emplace(model, rewards);
    target_ = skeleton_->liftTarget(target_);
}

RegionResult RegionChecker::check(Region const& region) const {
    RegionResult result{region, Verdict::IllDefined, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), ""};
    Region ordered = region.reorderedAs(model_.parameters());
    if (rewardProblem_) {
        result.diagnostic = *rewardProblem_;
        return result;
    }
    auto wellDefined = checkWellDefined(model_, ordered, options_.cornerCap);
    if (!wellDefined) {
        result.diagnostic = wellDefined.witness->describe();
        return result;
    }

    SparseGame game = skeleton_->buildNumeric(ordered, options_.cornerCap);
    SolverOptions solver = solverOptions(options_);
    auto initial = model_.initial();
    if (property_.kind == PropertyKind::ExpReward) {
        result.upper = expectedRewardIter(game, target_, OptimizationDirection::Maximize, solver).values[initial];
        result.lower = expectedRewardIter(game, target_, OptimizationDirection::Minimize, solver).values[initial];
    } else if (skeleton_->isGame()) {
        // The scheduler player optimises against the property; the parameter player gives both bounds.
        auto playerOne = property_.isUpperBound() ? OptimizationDirection::Maximize : OptimizationDirection::Minimize;
        result.upper = valueIterSg(game, target_, playerOne, OptimizationDirection::Maximize, solver).values[initial];
        result.lower = valueIterSg(game, target_, playerOne, OptimizationDirection::Minimize, solver).values[initial];
    } else {
        result.upper = valueIterMdp(game, target_, OptimizationDirection::Maximize, solver).values[initial];
        result.lower = valueIterMdp(game, target_, OptimizationDirection::Minimize, solver).values[initial];
    }
    result.verdict = classifyBounds(property_, result.lower, result.upper, options_.delta);
    return result;
}

RegionResult checkRegion(ParametricModel const& model, Region const& region, Property const& property, CheckOptions const& options) {
    return RegionChecker(model, property, options).check(region);
}

namespace {

struct WorkItem {
    Rational measure;
    std::size_t sequence;
    Region region;
};

/// Largest measure first, then first pushed.
struct WorkOrder {
    bool operator()(WorkItem const& a, WorkItem const& b) const {
        if (a.measure != b.measure) {
            return a.measure < b.measure;
        }
        return a.sequence > b.sequence;
    }
};

std::vector<RegionResult> checkBatch(RegionChecker const& checker, std::vector<Region> const& batch, std::size_t threads) {
    std::vector<RegionResult> results(batch.size());
    std::size_t workers = std::min(threads, batch.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            results[i] = checker.check(batch[i]);
        }
        return results;
    }
    std::vector<std::exception_ptr> errors(batch.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < batch.size(); i += workers) {
                try {
                    results[i] = checker.check(batch[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) {
        thread.join();
    }
    for (auto const& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
    return results;
}

}  // namespace

SynthesisReport refine(ParametricModel const& model, Property const& property, Region const& space, SynthesisOptions const& options) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    if (options.coverageTarget < 0 || options.coverageTarget > 1) {
        throw std::invalid_argument("coverage target must lie in [0, 1]");
    }
    space.reorderedAs(model.parameters());
    RegionChecker checker(model, property, options.check);
    std::size_t threads = std::max<std::size_t>(options.threads, 1);

    SynthesisReport report;
    report.space = space;
    std::priority_queue<WorkItem, std::vector<WorkItem>, WorkOrder> worklist;
    std::size_t sequence = 0;
    worklist.push({Rational(1), sequence++, space});

    auto record = [&](RegionResult result, Rational const& measure) {
        switch (result.verdict) {
            case Verdict::Safe:
                report.safe += measure;
                break;
            case Verdict::Unsafe:
                report.unsafe += measure;
                break;
            case Verdict::Unknown:
                report.unknown += measure;
                break;
            case Verdict::IllDefined:
                report.illDefined += measure;
                break;
        }
        report.regions.push_back(std::move(result));
    };

    // Workers check the next few worklist entries ahead of time; results are consumed strictly in
    // worklist order, so the report does not depend on the number of threads.
    std::map<std::size_t, RegionResult> ahead;
    while (!worklist.empty()) {
        if (report.coverage() >= options.coverageTarget) {
            break;
        }
        if (report.checks >= options.limits.maxChecks || (options.limits.timeLimit && elapsed() >= *options.limits.timeLimit)) {
            break;
        }
        if (!ahead.count(worklist.top().sequence)) {
            std::size_t batchSize = std::min(threads, options.limits.maxChecks - report.checks);
            std::vector<WorkItem> peeked;
            while (!worklist.empty() && peeked.size() < batchSize) {
                peeked.push_back(worklist.top());
                worklist.pop();
            }
            std::vector<Region> batch;
            std::vector<std::size_t> keys;
            for (auto& item : peeked) {
                if (!ahead.count(item.sequence)) {
                    batch.push_back(item.region);
                    keys.push_back(item.sequence);
                }
                worklist.push(std::move(item));
            }
            auto results = checkBatch(checker, batch, threads);
            for (std::size_t i = 0; i < keys.size(); ++i) {
                ahead.emplace(keys[i], std::move(results[i]));
            }
        }
        WorkItem item = worklist.top();
        worklist.pop();
        auto node = ahead.extract(item.sequence);
        RegionResult result = std::move(node.mapped());
        ++report.checks;

        Region const& region = item.region;
        bool split = false;
        if (result.verdict == Verdict::Unknown) {
            split = !region.isPoint() && region.maxWidth() > options.limits.minWidth;
        } else if (result.verdict == Verdict::IllDefined) {
            split = !region.isPoint() && region.maxWidth() > options.limits.illDefinedWidth && !checker.alwaysIllDefined();
        }
        if (!split) {
            record(std::move(result), item.measure);
            continue;
        }
        for (auto& child : paramlift::split(region, options.strategy)) {
            Rational measure = measureFraction(child, space);
            worklist.push({std::move(measure), sequence++, std::move(child)});
        }
    }

    while (!worklist.empty()) {
        report.unknown += worklist.top().measure;
        report.pending.push_back(worklist.top().region);
        worklist.pop();
    }
    report.limitReached = report.coverage() < options.coverageTarget;
    report.seconds = elapsed();
    return report;
}

bool satisfiesAt(ParametricModel const& model, Valuation const& valuation, Property const& property, CheckOptions const& options) {
    ParametricModel instance = instantiate(model, valuation);
    StateSet target = targetStates(model, property);
    auto initial = model.initial();
    if (model.kind() == ModelKind::Pmc) {
        if (property.kind == PropertyKind::ExpReward) {
            auto value = solveMcRewardExact(instance, target)[initial];
            // An infinite expected reward exceeds every threshold.
            return value ? property.holdsFor(*value) : !property.isUpperBound();
        }
        return property.holdsFor(solveMcExact(instance, target)[initial]);
    }
    if (model.kind() != ModelKind::Pmdp || property.kind == PropertyKind::ExpReward) {
        throw UnsupportedError("sampling is supported for pMC properties and pMDP reachability");
    }
    auto direction = property.isUpperBound() ? OptimizationDirection::Maximize : OptimizationDirection::Minimize;
    return property.holdsFor(valueIterMdp(SparseGame::fromModel(instance), target, direction, solverOptions(options)).values[initial]);
}

SampleResult classifySample(ParametricModel const& model, Region const& region, Property const& property, std::size_t samples,
                            std::uint64_t seed, CheckOptions const& options) {
    Region ordered = region.reorderedAs(model.parameters());
    std::vector<Valuation> points;
    for (auto& corner : corners(ordered, ordered.parameters(), options.cornerCap)) {
        points.push_back(std::move(corner.valuation));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        points.push_back(sampleInterior(ordered, rng));
    }
    SampleResult result;
    for (auto const& point : points) {
        if (satisfiesAt(model, point, property, options)) {
            ++result.satisfied;
            if (!result.satisfying) {
                result.satisfying = point;
            }
        } else {
            ++result.violated;
            if (!result.violating) {
                result.violating = point;
            }
        }
    }
    result.verdict = result.violated == 0 ? SampleVerdict::AllSat : result.satisfied == 0 ? SampleVerdict::AllViol : SampleVerdict::Neither;
    return result;
}

}  // namespace paramlift
