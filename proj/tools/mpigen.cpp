// mpigen - binding generator CLI
//
// Loads the transcribed standard API, the kind-map tables and the custom
// configuration files, then emits the C and Fortran 2008 binding sources.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mpigen/driver.hpp"

using namespace mpigen;

namespace {

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (v && *v)
        return std::string(v);
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mpigen - MPI binding layer generator"};

    GeneratorConfig config;
    std::string scheme = "weak_symbol";
    std::string targets = "c,f08";
    std::string mode = "autogen";
    std::string layout = "per-function";
    std::string input_format;
    bool parallel = false;
    bool dump = false;

    app.add_option("--api", config.standard_api_paths,
                   "standard API file (.txt or .json); repeatable")
        ->required();
    app.add_option("--kind-map", config.kind_map_path, "kind mapping file")->required();
    app.add_option("--custom", config.custom_config_paths,
                   "custom configuration file; repeatable, order matters")
        ->required();
    app.add_option("--rename-table", config.rename_table_path,
                   "functions to emit under the MPIX_ prefix");
    app.add_option("--rules", config.validation_rules_path, "validation rules file");
    app.add_option("--constants", config.constants_table_path, "F08 constants table");
    app.add_option("--scheme", scheme, "profiling scheme: weak_symbol|macro_rename|qmpi|none");
    app.add_option("--target", targets, "comma list of targets: c,f08");
    app.add_option("--out", config.output_dir, "output directory");
    app.add_option("--internal-prefix", config.internal_prefix,
                   "prefix of the internal layer functions");
    app.add_option("--mode", mode, "autogen|configure");
    app.add_option("--layout", layout, "per-function|per-group output layout");
    app.add_option("--input-format", input_format, "force text|json standard input");
    app.add_flag("--parallel", parallel, "emit with the parallel fan-out path");
    app.add_flag("--dump-merged", dump, "print the merged registry and exit");

    CLI11_PARSE(app, argc, argv);

    if (mode == "configure") {
        config.mode = RunMode::configure;
        // configure-time runs may take environment-specific options
        if (app.count("--scheme") == 0) {
            if (auto v = env_value("MPIGEN_SCHEME"))
                scheme = *v;
        }
        if (app.count("--internal-prefix") == 0) {
            if (auto v = env_value("MPIGEN_INTERNAL_PREFIX"))
                config.internal_prefix = *v;
        }
    } else if (mode != "autogen") {
        std::cerr << "(config):0: error: unknown mode '" << mode << "'\n";
        return 1;
    }

    if (auto s = scheme_from_string(scheme)) {
        config.scheme = *s;
    } else {
        std::cerr << "(config):0: error: unknown scheme '" << scheme << "'\n";
        return 1;
    }

    std::stringstream ts(targets);
    std::string target;
    bool bad_target = false;
    while (std::getline(ts, target, ',')) {
        if (target == "c")
            config.target_c = true;
        else if (target == "f08")
            config.target_f08 = true;
        else if (!target.empty())
            bad_target = true;
    }
    if (bad_target) {
        std::cerr << "(config):0: error: unknown target in '" << targets << "'\n";
        return 1;
    }

    if (layout == "per-group")
        config.layout = CEmitOptions::Layout::per_group;
    else if (layout != "per-function") {
        std::cerr << "(config):0: error: unknown layout '" << layout << "'\n";
        return 1;
    }
    if (!input_format.empty()) {
        if (input_format != "text" && input_format != "json") {
            std::cerr << "(config):0: error: unknown input format '" << input_format << "'\n";
            return 1;
        }
        config.input_format = input_format;
    }
    config.exec_mode = parallel ? ExecMode::parallel : ExecMode::serial;

    if (dump) {
        Diagnostics diags;
        std::string text = dump_merged(config, diags);
        print_diagnostics(diags, std::cerr);
        if (diags.has_errors())
            return 1;
        std::cout << text;
        return 0;
    }

    if (config.output_dir.empty()) {
        std::cerr << "(config):0: error: no output directory given (--out)\n";
        return 1;
    }

    RunReport report = run(config);
    print_diagnostics(report.diags, std::cerr);
    std::cout << report.summary(config);
    return report.ok ? 0 : 1;
}
