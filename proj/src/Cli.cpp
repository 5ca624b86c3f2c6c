#include "paramlift/Cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "paramlift/Exceptions.h"
#include "paramlift/Property.h"

namespace paramlift::cli {

using Json = nlohmann::ordered_json;

Region defaultSpace(std::vector<std::string> const& parameters) {
    Rational margin = fraction(1, 100'000);
    return Region::uniform(parameters, margin, 1 - margin);
}

namespace {

Json boxJson(Region const& region) {
    Json box = Json::object();
    for (auto const& [name, interval] : region.bounds()) {
        box[name] = Json::array({toString(interval.lower), toString(interval.upper)});
    }
    return box;
}

Json boundJson(double value) {
    return std::isfinite(value) ? Json(value) : Json(nullptr);
}

std::string_view strategyName(SplitStrategy strategy) {
    return strategy == SplitStrategy::AllDimensions ? "all" : "longest";
}

/// Fixed-point rendering for SVG coordinates, independent of the stream locale.
std::string coordinate(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", value);
    return buffer;
}

void writeFile(std::string const& path, std::string const& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot write '" + path + "'");
    }
    file << content;
    if (!file) {
        throw Error("failed writing '" + path + "'");
    }
}

std::string describeFraction(Rational const& value) {
    return toString(value) + " (" + toDecimalString(value, 6) + ")";
}

}  // namespace

std::string reportJson(RunConfig const& config, SynthesisReport const& report) {
    Json root;
    root["model"] = config.modelPath;
    root["property"] = config.property;
    root["space"] = boxJson(report.space);
    Json regions = Json::array();
    for (auto const& result : report.regions) {
        Json entry;
        entry["box"] = boxJson(result.region);
        entry["verdict"] = paramlift::toString(result.verdict);
        entry["lower"] = boundJson(result.lower);
        entry["upper"] = boundJson(result.upper);
        if (!result.diagnostic.empty()) {
            entry["diagnostic"] = result.diagnostic;
        }
        regions.push_back(std::move(entry));
    }
    root["regions"] = std::move(regions);
    Json pending = Json::array();
    for (auto const& region : report.pending) {
        pending.push_back(Json{{"box", boxJson(region)}});
    }
    root["pending"] = std::move(pending);
    root["coverage"] = {{"safe", toString(report.safe)},
                        {"unsafe", toString(report.unsafe)},
                        {"unknown", toString(report.unknown)},
                        {"ill_defined", toString(report.illDefined)}};
    root["stats"] = {{"checks", report.checks},
                     {"regions", report.regions.size()},
                     {"pending", report.pending.size()},
                     {"coverage_target", toString(config.coverageTarget)},
                     {"limit_reached", report.limitReached},
                     {"epsilon", config.epsilon},
                     {"delta", config.delta},
                     {"strategy", strategyName(config.strategy)},
                     {"seed", config.seed}};
    return root.dump(2) + "\n";
}

std::string reportCsv(SynthesisReport const& report) {
    auto parameters = report.space.parameters();
    std::ostringstream out;
    out << "verdict,lower,upper";
    for (auto const& name : parameters) {
        out << "," << name << "_lo," << name << "_hi";
    }
    for (auto const& name : parameters) {
        out << "," << name << "_lo_exact," << name << "_hi_exact";
    }
    out << "\n";
    auto row = [&](std::string_view verdict, std::optional<std::pair<double, double>> bounds, Region const& region) {
        out << verdict << ",";
        if (bounds && std::isfinite(bounds->first) && std::isfinite(bounds->second)) {
            out << toDecimalString(fromDouble(bounds->first)) << "," << toDecimalString(fromDouble(bounds->second));
        } else {
            out << ",";
        }
        for (auto const& name : parameters) {
            auto const& interval = region.interval(name);
            out << "," << toDecimalString(interval.lower) << "," << toDecimalString(interval.upper);
        }
        for (auto const& name : parameters) {
            auto const& interval = region.interval(name);
            out << "," << toString(interval.lower) << "," << toString(interval.upper);
        }
        out << "\n";
    };
    for (auto const& result : report.regions) {
        row(paramlift::toString(result.verdict), std::make_pair(result.lower, result.upper), result.region);
    }
    for (auto const& region : report.pending) {
        row("pending", std::nullopt, region);
    }
    return out.str();
}

std::string reportSvg(SynthesisReport const& report) {
    auto dims = report.space.nondegenerateParameters();
    if (dims.size() != 2) {
        throw std::invalid_argument("a region map needs exactly two non-degenerate parameters, the space has " +
                                    std::to_string(dims.size()));
    }
    constexpr double margin = 50.0;
    constexpr double size = 500.0;
    auto const& xs = report.space.interval(dims[0]);
    auto const& ys = report.space.interval(dims[1]);
    auto scaleX = [&](Rational const& v) { return margin + toDouble((v - xs.lower) / xs.width()) * size; };
    auto scaleY = [&](Rational const& v) { return margin + size - toDouble((v - ys.lower) / ys.width()) * size; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coordinate(size + 2 * margin) << "\" height=\""
        << coordinate(size + 2 * margin) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto box = [&](Region const& region, std::string_view fill) {
        auto const& x = region.interval(dims[0]);
        auto const& y = region.interval(dims[1]);
        out << "<rect x=\"" << coordinate(scaleX(x.lower)) << "\" y=\"" << coordinate(scaleY(y.upper)) << "\" width=\""
            << coordinate(scaleX(x.upper) - scaleX(x.lower)) << "\" height=\"" << coordinate(scaleY(y.lower) - scaleY(y.upper))
            << "\" fill=\"" << fill << "\" stroke=\"#333333\" stroke-width=\"0.3\"/>\n";
    };
    for (auto const& result : report.regions) {
        switch (result.verdict) {
            case Verdict::Safe:
                box(result.region, "#4caf50");
                break;
            case Verdict::Unsafe:
                box(result.region, "#e53935");
                break;
            case Verdict::Unknown:
                box(result.region, "#fff59d");
                break;
            case Verdict::IllDefined:
                box(result.region, "#424242");
                break;
        }
    }
    for (auto const& region : report.pending) {
        box(region, "#e0e0e0");
    }
    out << "<rect x=\"" << coordinate(margin) << "\" y=\"" << coordinate(margin) << "\" width=\"" << coordinate(size) << "\" height=\""
        << coordinate(size) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << coordinate(margin + size / 2) << "\" y=\"" << coordinate(size + 1.7 * margin) << "\" text-anchor=\"middle\">"
        << dims[0] << " [" << toDecimalString(xs.lower, 6) << ", " << toDecimalString(xs.upper, 6) << "]</text>\n";
    out << "<text x=\"" << coordinate(margin / 3) << "\" y=\"" << coordinate(margin + size / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
        << coordinate(margin / 3) << " " << coordinate(margin + size / 2) << ")\">" << dims[1] << " [" << toDecimalString(ys.lower, 6) << ", "
        << toDecimalString(ys.upper, 6) << "]</text>\n";
    out << "</svg>\n";
    return out.str();
}

namespace {

SynthesisReport singleRegionReport(Region const& region, RegionResult result) {
    SynthesisReport report;
    report.space = region;
    report.checks = 1;
    switch (result.verdict) {
        case Verdict::Safe:
            report.safe = 1;
            break;
        case Verdict::Unsafe:
            report.unsafe = 1;
            break;
        case Verdict::Unknown:
            report.unknown = 1;
            break;
        case Verdict::IllDefined:
            report.illDefined = 1;
            break;
    }
    report.regions.push_back(std::move(result));
    return report;
}

void writeReport(RunConfig const& config, SynthesisReport const& report, std::ostream& out, std::ostream& err) {
    if (config.outputPath) {
        writeFile(*config.outputPath, config.format == OutputFormat::Json ? reportJson(config, report) : reportCsv(report));
        out << "report: " << *config.outputPath << "\n";
    }
    if (config.svgPath) {
        try {
            writeFile(*config.svgPath, reportSvg(report));
            out << "svg: " << *config.svgPath << "\n";
        } catch (std::invalid_argument const& e) {
            err << "warning: no svg written: " << e.what() << "\n";
        }
    }
}

}  // namespace

int run(RunConfig const& config, std::ostream& out, std::ostream& err) {
    try {
        if (!(config.epsilon > 0.0)) {
            throw Error("--epsilon must be positive");
        }
        if (config.mode == Mode::Synthesize && (config.coverageTarget <= 0 || config.coverageTarget > 1)) {
            throw Error("--coverage must lie in (0, 1]");
        }
        ParametricModel model = readModelFile(config.modelPath);
        if (config.eliminate) {
            model = eliminateConstantStates(model);
        }
        Property property = parseProperty(config.property);
        Region space = config.region ? Region::parse(*config.region) : defaultSpace(model.parameters());
        space.reorderedAs(model.parameters());

        CheckOptions check;
        check.epsilon = config.epsilon;
        check.delta = config.delta;
        check.relativeEpsilon = config.relativeEpsilon;
        check.cornerCap = config.cornerCap;

        switch (config.mode) {
            case Mode::Check: {
                auto start = std::chrono::steady_clock::now();
                RegionResult result = checkRegion(model, space, property, check);
                double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                out << "region: " << space.toString() << "\n";
                out << "verdict: " << toString(result.verdict) << "\n";
                if (result.verdict == Verdict::IllDefined) {
                    err << "region is not well-defined: " << result.diagnostic << "\n";
                } else {
                    out << "lower: " << result.lower << "\nupper: " << result.upper << "\n";
                }
                out << "time: " << seconds << " s\n";
                bool illDefined = result.verdict == Verdict::IllDefined;
                writeReport(config, singleRegionReport(space, std::move(result)), out, err);
                return illDefined ? kExitIllDefined : kExitOk;
            }
            case Mode::Synthesize: {
                SynthesisOptions options;
                options.check = check;
                options.coverageTarget = config.coverageTarget;
                options.strategy = config.strategy;
                options.threads = config.threads;
                options.limits.maxChecks = config.maxChecks;
                options.limits.minWidth = config.minWidth;
                options.limits.illDefinedWidth = config.illDefinedWidth;
                options.limits.timeLimit = config.timeLimit;
                SynthesisReport report = refine(model, property, space, options);
                out << "regions: " << report.regions.size() << " (checks: " << report.checks << ", pending: " << report.pending.size() << ")\n";
                out << "safe: " << describeFraction(report.safe) << "\n";
                out << "unsafe: " << describeFraction(report.unsafe) << "\n";
                out << "unknown: " << describeFraction(report.unknown) << "\n";
                out << "ill_defined: " << describeFraction(report.illDefined) << "\n";
                out << "coverage: " << describeFraction(report.coverage()) << ", target " << toString(config.coverageTarget)
                    << (report.limitReached ? " not reached" : " reached") << "\n";
                out << "time: " << report.seconds << " s\n";
                writeReport(config, report, out, err);
                return report.limitReached ? kExitLimitReached : kExitOk;
            }
            case Mode::Sample: {
                auto wellDefined = checkWellDefined(model, space.reorderedAs(model.parameters()), config.cornerCap);
                if (!wellDefined) {
                    err << "region is not well-defined: " << wellDefined.witness->describe() << "\n";
                    return kExitIllDefined;
                }
                SampleResult result = classifySample(model, space, property, config.samples, config.seed, check);
                out << "sample: " << toString(result.verdict) << " (satisfied: " << result.satisfied << ", violated: " << result.violated
                    << ")\n";
                if (config.outputPath) {
                    Json root;
                    root["model"] = config.modelPath;
                    root["property"] = config.property;
                    root["space"] = boxJson(space);
                    Json sample = {{"verdict", toString(result.verdict)}, {"satisfied", result.satisfied}, {"violated", result.violated}};
                    auto point = [](Valuation const& valuation) {
                        Json json = Json::object();
                        for (auto const& [name, value] : valuation) {
                            json[name] = toString(value);
                        }
                        return json;
                    };
                    sample["satisfying"] = result.satisfying ? point(*result.satisfying) : Json(nullptr);
                    sample["violating"] = result.violating ? point(*result.violating) : Json(nullptr);
                    root["sample"] = std::move(sample);
                    root["stats"] = {{"samples", config.samples}, {"seed", config.seed}};
                    writeFile(*config.outputPath, root.dump(2) + "\n");
                    out << "report: " << *config.outputPath << "\n";
                }
                return kExitOk;
            }
        }
    } catch (Error const& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

namespace {

void addCommonOptions(CLI::App& command, RunConfig& config, std::string& coverage, std::string& minWidth, std::string& illWidth,
                      std::string& strategy, std::string& format) {
    command.add_option("--model", config.modelPath, "Model file")->required();
    command.add_option("--property", config.property, "Property, e.g. \"P<=0.8 [F target]\"")->required();
    command.add_option("--region", config.region, "Region, e.g. \"0.1<=x<=0.8, 0.4<=y<=0.7\" (default [1e-5, 1-1e-5] per parameter)");
    command.add_option("--coverage", coverage, "Coverage target in (0,1]")->capture_default_str();
    command.add_option("--epsilon", config.epsilon, "Value iteration precision")->capture_default_str();
    command.add_option("--delta", config.delta, "Decision margin around the threshold")->capture_default_str();
    command.add_flag("--relative", config.relativeEpsilon, "Relative instead of absolute stopping criterion");
    command.add_option("--strategy", strategy, "Split strategy")->check(CLI::IsMember({"all", "longest"}))->capture_default_str();
    command.add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    command.add_option("--seed", config.seed, "Random seed for sampling")->capture_default_str();
    command.add_option("--samples", config.samples, "Interior samples in sample mode")->capture_default_str();
    command.add_option("--max-checks", config.maxChecks, "Maximal number of region checks")->capture_default_str();
    command.add_option("--min-width", minWidth, "Unknown regions at most this wide are not split")->capture_default_str();
    command.add_option("--ill-defined-width", illWidth, "Ill-defined regions are split down to this width")->capture_default_str();
    command.add_option("--time-limit", config.timeLimit, "Wall-clock budget in seconds");
    command.add_flag("--eliminate", config.eliminate, "Eliminate constant states first");
    command.add_option("--output", config.outputPath, "Report file");
    command.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    command.add_option("--svg", config.svgPath, "Region map (two parameters only)");
}

}  // namespace

int main(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string coverage = "0.95";
    std::string minWidth = "1e-6";
    std::string illWidth = "1/1024";
    std::string strategy = "all";
    std::string format = "json";

    CLI::App app{"Parameter lifting for parametric Markov models"};
    app.name("paramlift");
    app.require_subcommand(1);
    auto* check = app.add_subcommand("check", "Classify one region");
    auto* synthesize = app.add_subcommand("synthesize", "Partition the parameter space");
    auto* sample = app.add_subcommand("sample", "Evaluate the property at corners and random points");
    for (auto* command : {check, synthesize, sample}) {
        addCommonOptions(*command, config, coverage, minWidth, illWidth, strategy, format);
    }

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        std::ostringstream usage;
        int code = app.exit(e, usage, usage);
        (code == 0 ? out : err) << usage.str();
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        config.mode = check->parsed() ? Mode::Check : synthesize->parsed() ? Mode::Synthesize : Mode::Sample;
        config.coverageTarget = parseRational(coverage);
        config.minWidth = parseRational(minWidth);
        config.illDefinedWidth = parseRational(illWidth);
        config.strategy = strategy == "longest" ? SplitStrategy::LongestEdge : SplitStrategy::AllDimensions;
        config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        if (char const* cap = std::getenv("PARAMLIFT_CORNER_CAP")) {
            std::string text(cap);
            if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 18) {
                throw Error("PARAMLIFT_CORNER_CAP must be a positive integer, got '" + text + "'");
            }
            config.cornerCap = std::stoull(text);
            if (config.cornerCap == 0) {
                throw Error("PARAMLIFT_CORNER_CAP must be positive");
            }
        }
    } catch (std::exception const& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return run(config, out, err);
}

}  // namespace paramlift::cli
