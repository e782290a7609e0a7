#include "mpigen/driver.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mpigen/parser.hpp"

namespace fs = std::filesystem;

namespace mpigen {

namespace {

struct ParsedInputs {
    ApiRegistry standard;
    KindMapSet maps;
    std::vector<OverlayConfig> overlays;
    RenameTable rename;
    ValidationRuleSet rules;
    F08ConstantsTable constants;
};

bool looks_like_json(const GeneratorConfig& config, const std::string& path) {
    if (config.input_format)
        return *config.input_format == "json";
    return fs::path(path).extension() == ".json";
}

bool validate_config(const GeneratorConfig& config, Diagnostics& diags) {
    const SourceLocation loc{"(config)", 0};
    bool ok = true;
    if (config.standard_api_paths.empty()) {
        diags.error(loc, "no standard API file given");
        ok = false;
    }
    if (config.kind_map_path.empty()) {
        diags.error(loc, "no kind-map file given");
        ok = false;
    }
    if (config.custom_config_paths.empty()) {
        diags.error(loc, "no custom config file given; nothing would be generated");
        ok = false;
    }
    if (!config.target_c && !config.target_f08) {
        diags.error(loc, "no targets");
        ok = false;
    }
    if (!config.output_dir.empty()) {
        std::vector<std::string> inputs = config.standard_api_paths;
        inputs.push_back(config.kind_map_path);
        inputs.insert(inputs.end(), config.custom_config_paths.begin(),
                      config.custom_config_paths.end());
        for (const auto& in : inputs) {
            std::error_code ec;
            if (fs::exists(in, ec) && fs::exists(config.output_dir, ec) &&
                fs::equivalent(in, config.output_dir, ec)) {
                diags.error(loc, "output directory collides with input path '" + in + "'");
                ok = false;
            }
        }
    }
    return ok;
}

std::optional<ParsedInputs> parse_inputs(const GeneratorConfig& config, Diagnostics& diags) {
    ParsedInputs inputs;

    for (const std::string& path : config.standard_api_paths) {
        auto text = read_file(path);
        if (!text) {
            diags.error({path, 0}, "cannot read file");
            continue;
        }
        if (looks_like_json(config, path)) {
            try {
                ApiRegistry registry = parse_json_export(*text, path);
                for (const FunctionSpec& fn : registry)
                    inputs.standard.insert(fn);
            } catch (const SchemaError& e) {
                diags.error({path, 0}, e.what());
            }
        } else {
            ApiRegistry registry = parse_standard_api(*text, path, diags);
            // Re-declaration across files replaces in place.
            for (const FunctionSpec& fn : registry)
                inputs.standard.insert(fn);
        }
    }

    if (auto text = read_file(config.kind_map_path))
        inputs.maps = parse_kind_maps(*text, config.kind_map_path, diags);
    else
        diags.error({config.kind_map_path, 0}, "cannot read file");

    for (const std::string& path : config.custom_config_paths) {
        auto text = read_file(path);
        if (!text) {
            diags.error({path, 0}, "cannot read file");
            continue;
        }
        inputs.overlays.push_back(parse_custom_config(*text, path, diags));
    }

    if (config.rename_table_path) {
        if (auto text = read_file(*config.rename_table_path))
            inputs.rename = parse_rename_table(*text, *config.rename_table_path, diags);
        else
            diags.error({*config.rename_table_path, 0}, "cannot read file");
    }

    inputs.rules = ValidationRuleSet::defaults();
    if (config.validation_rules_path) {
        if (auto text = read_file(*config.validation_rules_path))
            inputs.rules = parse_validation_rules(*text, *config.validation_rules_path, diags);
        else
            diags.error({*config.validation_rules_path, 0}, "cannot read file");
    }

    if (config.constants_table_path) {
        if (auto text = read_file(*config.constants_table_path))
            inputs.constants = parse_f08_constants(*text, *config.constants_table_path, diags);
        else
            diags.error({*config.constants_table_path, 0}, "cannot read file");
    }

    if (diags.has_errors())
        return std::nullopt;
    return inputs;
}

// Kind tables reachable from the selected targets; anything else is noted
// as unused (the corpus may carry legacy tables).
void warn_unused_tables(const GeneratorConfig& config, const KindMapSet& maps,
                        Diagnostics& diags) {
    std::set<std::string> used{"LIS_KIND_MAPPING"};
    auto mark_chain = [&](const char* name) {
        const KindTable* t = maps.find_table(name);
        while (t && used.insert(t->name).second && t->base)
            t = maps.find_table(*t->base);
    };
    if (config.target_c) {
        mark_chain("SMALL_C_KIND_MAP");
        mark_chain("BIG_C_KIND_MAP");
    }
    if (config.target_f08) {
        mark_chain("SMALL_F08_KIND_MAP");
        mark_chain("BIG_F08_KIND_MAP");
    }
    for (const KindTable& t : maps.tables()) {
        if (!used.count(t.name))
            diags.warning({config.kind_map_path, 0},
                          "kind table '" + t.name + "' is unused by the selected targets");
    }
}

void warn_unconsumed_directives(const GeneratorConfig& config, const MergedRegistry& merged,
                                Diagnostics& diags) {
    std::set<std::string> consumed;
    if (config.target_c)
        consumed.insert({".desc", ".seealso", ".earlyreturn"});
    if (config.target_f08)
        consumed.insert(".desc");
    for (const std::string& name : merged.generation_set) {
        const FunctionSpec* fn = merged.functions.find(name);
        for (const auto& [key, value] : fn->attributes.items()) {
            if (!consumed.count(key))
                diags.warning({"(merged)", 0}, "directive '" + key + "' on function '" + name +
                                                   "' is not consumed by any selected emitter");
        }
    }
}

}  // namespace

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

GenerationResult generate(const GeneratorConfig& config, Diagnostics& diags) {
    GenerationResult result;
    if (!validate_config(config, diags))
        return result;

    auto inputs = parse_inputs(config, diags);
    if (!inputs)
        return result;

    result.merged = merge(inputs->standard, inputs->overlays, diags);
    if (diags.has_errors())
        return result;

    warn_unused_tables(config, inputs->maps, diags);
    warn_unconsumed_directives(config, result.merged, diags);

    if (config.target_c) {
        CEmitOptions options;
        options.scheme = config.scheme;
        options.internal_prefix = config.internal_prefix;
        options.layout = config.layout;
        result.c_files = emit_c_corpus(result.merged, inputs->maps, inputs->rename, inputs->rules,
                                       options, config.exec_mode, diags);
        if (diags.has_errors())
            return result;
        for (const std::string& name : result.merged.generation_set) {
            const FunctionSpec* fn = result.merged.functions.find(name);
            result.c_definitions += function_has_poly(*fn) ? 2 : 1;
        }
    }

    if (config.target_f08) {
        result.f08_files = emit_f08_corpus(result.merged, inputs->maps, inputs->rename,
                                           inputs->rules, inputs->constants, config.exec_mode,
                                           diags);
        if (diags.has_errors())
            return result;
        for (const std::string& name : result.merged.generation_set) {
            const FunctionSpec* fn = result.merged.functions.find(name);
            result.f08_interfaces += function_has_poly(*fn) ? 2 : 1;
        }
    }

    result.ok = !diags.has_errors();
    return result;
}

RunReport run(const GeneratorConfig& config) {
    RunReport report;
    GenerationResult result = generate(config, report.diags);
    report.functions_loaded = result.merged.functions.size();
    report.generation_count = result.merged.generation_set.size();
    for (const std::string& name : result.merged.generation_set) {
        const FunctionSpec* fn = result.merged.functions.find(name);
        if (fn && function_has_poly(*fn))
            ++report.poly_count;
    }
    report.c_files = result.c_files.size();
    report.c_definitions = result.c_definitions;
    report.f08_files = result.f08_files.size();
    report.f08_interfaces = result.f08_interfaces;

    if (!result.ok)
        return report;

    if (config.output_dir.empty()) {
        report.diags.error({"(config)", 0}, "no output directory given");
        return report;
    }

    // Everything was generated in memory; only now touch the filesystem.
    std::error_code ec;
    auto write_tree = [&](const char* subdir, const std::vector<GeneratedFile>& files) {
        for (const GeneratedFile& file : files) {
            fs::path path = fs::path(config.output_dir) / subdir / file.path;
            fs::create_directories(path.parent_path(), ec);
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                report.diags.error({path.string(), 0}, "cannot write file");
                return false;
            }
            out << file.text;
            out.close();
            report.files_written.push_back((fs::path(subdir) / file.path).string());
        }
        return true;
    };

    if (config.target_c && !write_tree("c", result.c_files))
        return report;
    if (config.target_f08 && !write_tree("f08", result.f08_files))
        return report;

    report.ok = true;
    return report;
}

std::string RunReport::summary(const GeneratorConfig& config) const {
    std::ostringstream os;
    os << "mode: " << (config.mode == RunMode::autogen ? "autogen" : "configure") << "\n";
    os << "scheme: " << to_string(config.scheme) << "\n";
    os << "functions loaded: " << functions_loaded << "\n";
    os << "generation set: " << generation_count << " functions (" << poly_count
       << " large-count twins)\n";
    if (config.target_c)
        os << "target c: " << c_files << " files, " << c_definitions << " definitions\n";
    if (config.target_f08)
        os << "target f08: " << f08_files << " files, " << f08_interfaces << " interfaces\n";
    os << "wrote " << files_written.size() << " files to " << config.output_dir << "\n";
    os << "warnings: " << diags.warning_count() << "\n";
    return os.str();
}

std::string dump_merged(const GeneratorConfig& config, Diagnostics& diags) {
    GeneratorConfig probe = config;
    // The dump needs parse+merge only; emission settings are irrelevant,
    // but the config must stay valid.
    probe.target_c = true;
    probe.target_f08 = false;
    if (!validate_config(probe, diags))
        return {};
    auto inputs = parse_inputs(probe, diags);
    if (!inputs)
        return {};
    MergedRegistry merged = merge(inputs->standard, inputs->overlays, diags);
    if (diags.has_errors())
        return {};
    return serialize_registry(merged.functions);
}

}  // namespace mpigen
