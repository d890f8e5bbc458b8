#include "scarr/errors.hpp"
#include "scarr/workbench.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic workbench for super-Carrollian geometry"};
    app.require_subcommand(1);

    std::string spec_path;
    scarr::RunFlags flags;

    const std::vector<std::string> commands = {"check",  "kernel",  "reduce",
                                               "killing", "scarr",   "connect",
                                               "verify-connection", "contract"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("spec", spec_path, "manifold spec file")->required();
        sub->add_flag("--json", flags.json, "print the machine block only");
        if (name == "killing" || name == "scarr")
            sub->add_option("--degree", flags.degree, "polynomial ansatz degree");
        if (name == "killing")
            sub->add_option("--commute-with", flags.commute_with,
                            "restrict to fields commuting with this vector field");
        if (name == "connect") {
            sub->add_option("--mode", flags.mode, "susy | metric | compatible");
            sub->add_option("--seed", flags.seed, "trivial or a spec file with CONNECTION");
        }
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        scarr::ManifoldSpec spec = scarr::parse_spec_file(spec_path);
        scarr::Report report = scarr::run(sub->get_name(), spec, flags);
        if (flags.json)
            std::cout << report.machine_text();
        else
            std::cout << report.human();
        return report.exit_code;
    } catch (const scarr::SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const scarr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
