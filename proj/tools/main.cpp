#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "dpc/io.hpp"

namespace {

struct CommonArgs {
    std::string graph_path;
    std::string plan_path;
    std::string mode;
    std::string format = "table";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mode) {
    cmd->add_option("graph", args.graph_path, "edge-list file (u v w per line)")
        ->required();
    cmd->add_option("plan", args.plan_path, "contraction plan file")->required();
    cmd->add_option("--format", args.format, "report format")
        ->check(CLI::IsMember({"table", "records"}));
    if (with_mode)
        cmd->add_option("--mode", args.mode, "force the contraction mode")
            ->check(CLI::IsMember({"single", "independent", "subpath", "tree"}));
}

std::optional<dpc::Mode> forced_mode(const std::string& name) {
    static const std::map<std::string, dpc::Mode> table = {
        {"single", dpc::Mode::SingleEdge},
        {"independent", dpc::Mode::IndependentSet},
        {"subpath", dpc::Mode::Subpath},
        {"tree", dpc::Mode::TreeSingleEdge},
    };
    if (name.empty()) return std::nullopt;
    return table.at(name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal weight redistribution for edge contraction on paths and trees"};
    app.require_subcommand(1);

    CommonArgs compress_args, verify_args, profile_args;
    bool inject_fault = false;
    std::string grid_step;
    long long samples = 0;
    std::uint64_t seed = 0;
    int max_oracle_size = dpc::kEnumerationCap;

    CLI::App* compress = app.add_subcommand(
        "compress", "contract the planned edges optimally and report the exact error");
    add_common(compress, compress_args, true);
    compress->add_flag("--inject-report-fault", inject_fault)->group("");

    CLI::App* verify = app.add_subcommand(
        "verify", "check the planned contraction against brute-force oracles");
    add_common(verify, verify_args, true);
    verify->add_option("--grid-step", grid_step,
                       "run the grid oracle with this step (decimal or p/q)");
    verify->add_option("--samples", samples, "run the sampling oracle with this many draws")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--max-oracle-size", max_oracle_size,
                       "neighbor-edge cap for marking enumeration");

    CLI::App* profile = app.add_subcommand(
        "profile", "show the target edge's neighbor profile and optimal marking");
    add_common(profile, profile_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // command-line usage error
    }

    const auto fmt = [](const std::string& f) {
        return f == "records" ? dpc::OutputFormat::Records : dpc::OutputFormat::Table;
    };

    if (app.got_subcommand(compress)) {
        return dpc::cmd_compress(compress_args.graph_path, compress_args.plan_path,
                                 forced_mode(compress_args.mode), fmt(compress_args.format),
                                 inject_fault, std::cout, std::cerr);
    }
    if (app.got_subcommand(verify)) {
        dpc::VerifyOptions options;
        if (!grid_step.empty()) {
            try {
                options.grid_step = dpc::parse_rational(grid_step);
            } catch (const std::exception&) {
                std::cerr << "parse error: bad --grid-step value '" << grid_step << "'\n";
                return 1;
            }
            if (*options.grid_step <= dpc::Rational(0)) {
                std::cerr << "usage error: --grid-step must be positive\n";
                return 2;
            }
        }
        options.samples = samples;
        options.seed = seed;
        options.max_oracle_size = max_oracle_size;
        return dpc::cmd_verify(verify_args.graph_path, verify_args.plan_path,
                               forced_mode(verify_args.mode), fmt(verify_args.format),
                               options, std::cout, std::cerr);
    }
    return dpc::cmd_profile(profile_args.graph_path, profile_args.plan_path,
                            fmt(profile_args.format), std::cout, std::cerr);
}
