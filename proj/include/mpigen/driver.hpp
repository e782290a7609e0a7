// mpigen/driver.hpp - configuration, orchestration and the exit report
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpigen/c_emitter.hpp"
#include "mpigen/f08_emitter.hpp"

namespace mpigen {

enum class RunMode { autogen, configure };

struct GeneratorConfig {
    std::vector<std::string> standard_api_paths;   // .txt or .json, auto-detected
    std::string kind_map_path;
    std::vector<std::string> custom_config_paths;  // ordered; order shapes generation_set
    std::optional<std::string> rename_table_path;
    std::optional<std::string> validation_rules_path;
    std::optional<std::string> constants_table_path;

    ProfilingSchemeId scheme = ProfilingSchemeId::weak_symbol;
    bool target_c = false;
    bool target_f08 = false;
    std::string output_dir;
    std::string internal_prefix = "MPID_";
    RunMode mode = RunMode::autogen;
    CEmitOptions::Layout layout = CEmitOptions::Layout::per_function;
    ExecMode exec_mode = ExecMode::serial;
    // "text" or "json"; overrides the extension-based detection.
    std::optional<std::string> input_format;
};

// In-memory generation: parse, merge, plan, emit.  File paths in the
// result are relative to the target subdirectory (c/ or f08/).
struct GenerationResult {
    MergedRegistry merged;
    std::vector<GeneratedFile> c_files;
    std::vector<GeneratedFile> f08_files;
    std::size_t c_definitions = 0;
    std::size_t f08_interfaces = 0;
    bool ok = false;
};

GenerationResult generate(const GeneratorConfig& config, Diagnostics& diags);

struct RunReport {
    Diagnostics diags;
    std::vector<std::string> files_written;   // relative to output_dir
    std::size_t functions_loaded = 0;
    std::size_t generation_count = 0;
    std::size_t poly_count = 0;
    std::size_t c_files = 0;
    std::size_t c_definitions = 0;
    std::size_t f08_files = 0;
    std::size_t f08_interfaces = 0;
    bool ok = false;

    // Human-readable exit report for standard output.
    std::string summary(const GeneratorConfig& config) const;
};

// Full run: generate and write the output tree.  Nothing is written unless
// every stage succeeded, so a failed run leaves the output directory in
// its pre-run state.
RunReport run(const GeneratorConfig& config);

// Serializes the merged registry in the text format (--dump-merged).
// Returns empty on error; diagnostics carry the reasons.
std::string dump_merged(const GeneratorConfig& config, Diagnostics& diags);

std::optional<std::string> read_file(const std::string& path);

}  // namespace mpigen
