#include <CLI11.hpp>

#include <iostream>

#include "qfc/config.hpp"
#include "qfc/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Temporal-mode-selective frequency conversion simulator"};
    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    bool dump_green = false;
    std::string format = "csv";
    app.add_option("config", config_path, "YAML run configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.directory)");
    app.add_option("--threads", threads, "worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
    app.add_flag("--dump-green", dump_green, "also write the stage Green function (reduced basis)");
    app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qfc::kExitConfig;
    }

    qfc::RunConfig config;
    try {
        config = qfc::parse_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "simulate: error: " << e.what() << '\n';
        return qfc::exit_code_for(e);
    }
    qfc::RunOptions options;
    if (!out_dir.empty()) options.out_dir = out_dir;
    options.threads = threads;
    options.dump_green = dump_green;
    return qfc::run(config, options, std::cout, std::cerr);
}
