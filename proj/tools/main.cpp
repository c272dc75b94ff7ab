// aquant command line: one subcommand per pipeline, driven by a JSON manifest.

#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace aquant::cli;
    CLI::App app{"Prequantization and integrability checks for closed 2-forms and algebroid cocycles"};
    app.require_subcommand(1);

    std::optional<std::string> manifest;
    RunOptions opt;
    std::vector<std::string> overrides;
    std::optional<std::string> select;

    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " pipeline");
        sub->add_option("--manifest,-m", manifest, "scenario manifest (JSON)");
        sub->add_option("--out,-o", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", opt.seed, "override the manifest seed");
        sub->add_option("--n-t", opt.n_t, "samples along each path (even)");
        sub->add_option("--n-eps", opt.n_eps, "paths across each family (even)");
        sub->add_option("--tol-override", overrides, "tolerance override KEY=VALUE, repeatable");
        sub->add_option("--format", opt.format, "output files")
            ->check(CLI::IsMember({"json", "csv", "both"}))
            ->capture_default_str();
        if (name == "selftest") sub->add_option("--select", select, "comma separated checks; empty runs none");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
            std::cerr << "aquant: --tol-override expects KEY=VALUE, got '" << o << "'\n";
            return 1;
        }
        try {
            opt.tol_overrides.emplace_back(o.substr(0, eq), std::stod(o.substr(eq + 1)));
        } catch (const std::exception&) {
            std::cerr << "aquant: bad tolerance value in '" << o << "'\n";
            return 1;
        }
    }
    opt.select = select;
    return run(app.get_subcommands().front()->get_name(), manifest, opt);
}
