#include "mpigen/c_emitter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace mpigen {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

// Internal-layer argument for one resolved parameter.
std::string internal_call_arg(const ResolvedParameter& p) {
    if (!p.conversion)
        return p.source.name;
    switch (p.conversion->kind) {
        case ConversionKind::handle_to_internal:
            return p.source.name + "_ptr";
        case ConversionKind::count_narrow_in:
            return p.source.name + "_i";
        case ConversionKind::count_widen_out:
            return "&" + p.source.name + "_i";
    }
    return p.source.name;
}

std::string max_macro_for(const std::string& internal_type) {
    std::string base = internal_type.rfind("MPI_", 0) == 0 ? internal_type.substr(4) : internal_type;
    return "MPIR_" + to_upper(base) + "_MAX";
}

struct SchemeContext {
    std::string name;          // emitted function name
    std::string param_decls;   // "const void *buf, int count, ..."
    std::string arg_names;     // "buf, count, ..."
};

class ProfilingScheme {
public:
    virtual ~ProfilingScheme() = default;
    virtual std::string prologue(const SchemeContext& ctx) const = 0;
    virtual std::string entry_hook(const SchemeContext& ctx) const = 0;
};

struct WeakSymbolScheme : ProfilingScheme {
    std::string prologue(const SchemeContext& ctx) const override {
        std::ostringstream os;
        os << kProfilingBlockBegin << "\n";
        os << "#if defined(HAVE_PRAGMA_WEAK)\n";
        os << "#pragma weak " << ctx.name << " = P" << ctx.name << "\n";
        os << "#elif defined(HAVE_PRAGMA_HP_SEC_DEF)\n";
        os << "#pragma _HP_SECONDARY_DEF P" << ctx.name << " " << ctx.name << "\n";
        os << "#elif defined(HAVE_PRAGMA_CRI_DUP)\n";
        os << "#pragma _CRI duplicate " << ctx.name << " as P" << ctx.name << "\n";
        os << "#endif\n";
        os << kProfilingBlockEnd << "\n";
        return os.str();
    }
    std::string entry_hook(const SchemeContext&) const override { return {}; }
};

struct MacroRenameScheme : ProfilingScheme {
    std::string prologue(const SchemeContext& ctx) const override {
        std::ostringstream os;
        os << kProfilingBlockBegin << "\n";
        os << "#ifndef MPICH_MPI_FROM_PMPI\n";
        os << "#undef " << ctx.name << "\n";
        os << "#define " << ctx.name << " P" << ctx.name << "\n";
        os << "#endif\n";
        os << kProfilingBlockEnd << "\n";
        return os.str();
    }
    std::string entry_hook(const SchemeContext&) const override { return {}; }
};

struct QmpiScheme : ProfilingScheme {
    std::string prologue(const SchemeContext& ctx) const override {
        std::string lead = "QMPI_Context context, int tool_id";
        std::string decls = ctx.param_decls.empty() ? lead : lead + ", " + ctx.param_decls;
        std::string args = ctx.arg_names.empty() ? "" : ", " + ctx.arg_names;
        std::ostringstream os;
        os << kProfilingBlockBegin << "\n";
        os << "/* QMPI chained interception for " << ctx.name << ".  The dispatch ABI is\n";
        os << " * provisional; tools attach in an ordered chain and each forwards the\n";
        os << " * call, so more than one tool can intercept at once. */\n";
        os << "typedef int (*Q" << ctx.name << "_fn_t)(" << decls << ");\n";
        os << "int Q" << ctx.name << "(" << decls << ")\n";
        os << "{\n";
        os << "    Q" << ctx.name << "_fn_t next_fn = (Q" << ctx.name
           << "_fn_t) MPIR_QMPI_next_tool_fn(context, tool_id, QMPI_FN_" << ctx.name << ");\n";
        os << "    if (next_fn != NULL) {\n";
        os << "        return next_fn(context, MPIR_QMPI_next_tool_id(context, tool_id)" << args
           << ");\n";
        os << "    }\n";
        os << "    return P" << ctx.name << "(" << ctx.arg_names << ");\n";
        os << "}\n";
        os << kProfilingBlockEnd << "\n";
        return os.str();
    }
    std::string entry_hook(const SchemeContext& ctx) const override {
        std::string args = ctx.arg_names.empty() ? "" : ", " + ctx.arg_names;
        std::ostringstream os;
        os << "    " << kProfilingHookBegin << "\n";
        os << "    if (MPIR_QMPI_tool_count > 0 && !MPIR_QMPI_dispatch_active()) {\n";
        os << "        return Q" << ctx.name << "(MPIR_QMPI_global_context, 0" << args << ");\n";
        os << "    }\n";
        os << "    " << kProfilingHookEnd << "\n";
        return os.str();
    }
};

struct NoScheme : ProfilingScheme {
    std::string prologue(const SchemeContext&) const override { return {}; }
    std::string entry_hook(const SchemeContext&) const override { return {}; }
};

const ProfilingScheme& profiling_scheme(ProfilingSchemeId id) {
    static const WeakSymbolScheme weak;
    static const MacroRenameScheme macro;
    static const QmpiScheme qmpi;
    static const NoScheme none;
    switch (id) {
        case ProfilingSchemeId::weak_symbol:
            return weak;
        case ProfilingSchemeId::macro_rename:
            return macro;
        case ProfilingSchemeId::qmpi:
            return qmpi;
        case ProfilingSchemeId::none:
            return none;
    }
    return none;
}

std::string guard_macro(RuleId rule) {
    switch (rule) {
        case RuleId::comm_valid:
            return "MPIR_ERRTEST_COMM";
        case RuleId::datatype_valid_committed:
            return "MPIR_ERRTEST_DATATYPE_COMMITTED";
        case RuleId::rank_send:
            return "MPIR_ERRTEST_SEND_RANK";
        case RuleId::rank_recv:
            return "MPIR_ERRTEST_RECV_RANK";
        case RuleId::rank_plain:
            return "MPIR_ERRTEST_RANK";
        case RuleId::tag_valid:
            return "MPIR_ERRTEST_TAG";
        case RuleId::count_nonnegative:
            return "MPIR_ERRTEST_COUNT";
        case RuleId::buffer_addr:
            return "MPIR_ERRTEST_BUFFER";
        case RuleId::request_valid:
            return "MPIR_ERRTEST_REQUEST";
        case RuleId::none:
            return {};
    }
    return {};
}

bool is_notes_block(const Block& b) {
    return b.flavor == BlockFlavor::comment &&
           (b.name == "notes" || b.name.rfind("notes-", 0) == 0);
}

// Man-page section for a direction.
const char* man_section_title(Direction d) {
    switch (d) {
        case Direction::in:
            return "Input Parameters:";
        case Direction::inout:
            return "Input/Output Parameters:";
        case Direction::out:
            return "Output Parameters:";
    }
    return "Input Parameters:";
}

void emit_man_page(std::ostringstream& os, const EmitPlan& plan, const VariantPlan& vp,
                   const KindMapSet& maps) {
    os << "/* -- Man Page Documentation -- */\n";
    os << "/*@\n";
    os << "   " << vp.emitted_name;
    if (auto desc = plan.fn.attributes.get(".desc"))
        os << " - " << *desc;
    os << "\n";

    const KindTable* lis = maps.find_table("LIS_KIND_MAPPING");
    for (Direction d : {Direction::in, Direction::inout, Direction::out}) {
        std::vector<const ResolvedParameter*> params;
        for (const auto& p : vp.params) {
            if (p.source.effective_direction() == d)
                params.push_back(&p);
        }
        if (params.empty())
            continue;
        os << "\n" << man_section_title(d) << "\n";
        for (std::size_t i = 0; i < params.size(); ++i) {
            char marker = '.';
            if (params.size() > 1) {
                if (i == 0)
                    marker = '+';
                else if (i + 1 == params.size())
                    marker = '-';
            }
            const ParameterSpec& src = params[i]->source;
            os << marker << ' ' << src.name << " -";
            if (src.description)
                os << ' ' << *src.description;
            if (lis) {
                if (const std::string* term = lis->local_lookup(src.kind))
                    os << " (" << *term << ")";
            }
            os << "\n";
        }
    }

    for (const Block& b : plan.fn.blocks) {
        if (is_notes_block(b)) {
            os << "\n";
            os << b.body;
        }
    }

    if (auto seealso = plan.fn.attributes.get(".seealso")) {
        os << "\n";
        os << ".seealso: " << *seealso << "\n";
    }
    os << "@*/\n";
}

// The first RANK-kind parameter, for early-return guards.
const ResolvedParameter* find_rank_parameter(const VariantPlan& vp) {
    for (const auto& p : vp.params) {
        if (p.source.kind == "RANK")
            return &p;
    }
    return nullptr;
}

void emit_function_definition(std::ostringstream& os, const EmitPlan& plan, const VariantPlan& vp,
                              const CEmitOptions& options) {
    const FunctionSpec& fn = plan.fn;

    std::vector<std::string> decls;
    std::vector<std::string> args;
    for (const auto& p : vp.params) {
        decls.push_back(c_parameter_decl(p));
        args.push_back(p.source.name);
    }
    std::string decl_list = decls.empty() ? "void" : join(decls, ", ");

    os << "/* -- Function Definition -- */\n";
    os << "int " << vp.emitted_name << "(" << decl_list << ")\n";
    os << "{\n";
    os << "    int mpi_errno = MPI_SUCCESS;\n";

    // Locals for converted parameters, in parameter order.
    std::string comm_local = "NULL";
    for (const auto& p : vp.params) {
        if (!p.conversion)
            continue;
        switch (p.conversion->kind) {
            case ConversionKind::handle_to_internal:
                os << "    " << p.conversion->internal_type << " *" << p.source.name
                   << "_ptr = NULL;\n";
                if (p.source.kind == "COMMUNICATOR" && comm_local == "NULL")
                    comm_local = p.source.name + "_ptr";
                break;
            case ConversionKind::count_narrow_in:
            case ConversionKind::count_widen_out:
                os << "    " << p.conversion->internal_type << " " << p.source.name
                   << "_i = 0;\n";
                break;
        }
    }

    SchemeContext ctx{vp.emitted_name, decls.empty() ? "" : join(decls, ", "), join(args, ", ")};
    std::string hook = profiling_scheme(plan.scheme).entry_hook(ctx);
    if (!hook.empty())
        os << hook;

    os << "    " << options.logging_enter << ";\n";
    os << "    " << options.cs_enter << ";\n";

    // Validation region.
    std::vector<std::string> guards;
    for (std::size_t i = 0; i < fn.parameters.size(); ++i) {
        std::string macro = guard_macro(plan.rules[i]);
        if (!macro.empty())
            guards.push_back(macro + "(" + fn.parameters[i].name + ", mpi_errno);");
    }
    const Block* validation_block = nullptr;
    for (const Block& b : fn.blocks) {
        if (b.flavor == BlockFlavor::code && b.name == "validation")
            validation_block = &b;
    }
    if (!guards.empty() || validation_block) {
        os << "\n";
        os << "#ifdef " << options.error_check_macro << "\n";
        os << "    {\n";
        for (const auto& g : guards)
            os << "        " << g << "\n";
        if (validation_block)
            os << validation_block->body;
        os << "        if (mpi_errno) {\n";
        os << "            goto fn_fail;\n";
        os << "        }\n";
        os << "    }\n";
        os << "#endif /* " << options.error_check_macro << " */\n";
    }

    // Handle conversions.
    bool have_handles = false;
    for (const auto& p : vp.params) {
        if (p.conversion && p.conversion->kind == ConversionKind::handle_to_internal) {
            if (!have_handles) {
                os << "\n";
                os << "    /* convert handles to internal objects */\n";
                have_handles = true;
            }
            os << "    " << p.conversion->internal_type << "_get_ptr(" << p.source.name << ", "
               << p.source.name << "_ptr);\n";
        }
    }

    // Narrowing of wide counts, before the internal call.
    bool have_narrowing = false;
    for (const auto& p : vp.params) {
        if (p.conversion && p.conversion->kind == ConversionKind::count_narrow_in) {
            if (!have_narrowing) {
                os << "\n";
                os << "    /* narrow wide counts into the internal integer type */\n";
                have_narrowing = true;
            }
            os << "    if (" << p.source.name << " > " << max_macro_for(p.conversion->internal_type)
               << ") {\n";
            os << "        mpi_errno = MPIR_ERR_COUNT_TOO_BIG(\"" << p.source.name << "\");\n";
            os << "        goto fn_fail;\n";
            os << "    }\n";
            os << "    " << p.source.name << "_i = (" << p.conversion->internal_type << ") "
               << p.source.name << ";\n";
        }
    }

    // Early return for trivial cases, e.g. a null destination rank.
    const ResolvedParameter* rank = plan.early_return ? find_rank_parameter(vp) : nullptr;
    if (rank) {
        os << "\n";
        os << "    /* early return for trivial cases */\n";
        os << "    if (" << rank->source.name << " == MPI_PROC_NULL) {\n";
        os << "        mpi_errno = MPI_SUCCESS;\n";
        os << "        goto fn_exit;\n";
        os << "    }\n";
    }

    os << "\n";
    os << "    /* ... body of routine ... */\n";
    const Block* body_block = nullptr;
    for (const Block& b : fn.blocks) {
        if (b.flavor == BlockFlavor::code && b.name == "body_of_routine")
            body_block = &b;
    }
    if (body_block) {
        os << body_block->body;
    } else {
        std::vector<std::string> call_args;
        for (const auto& p : vp.params)
            call_args.push_back(internal_call_arg(p));
        os << "    mpi_errno = " << options.internal_prefix << base_function_name(fn.name) << "("
           << join(call_args, ", ") << ");\n";
        os << "    if (mpi_errno) {\n";
        os << "        goto fn_fail;\n";
        os << "    }\n";
        for (const auto& p : vp.params) {
            if (p.conversion && p.conversion->kind == ConversionKind::count_widen_out) {
                os << "    *" << p.source.name << " = (" << p.type_text << ") " << p.source.name
                   << "_i;\n";
            }
        }
    }

    os << "\n";
    os << "  fn_exit:\n";
    os << "    " << options.cs_exit << ";\n";
    os << "    " << options.logging_exit << ";\n";
    os << "    return mpi_errno;\n";
    os << "\n";
    os << "  fn_fail:\n";
    os << "    /* --BEGIN ERROR HANDLING-- */\n";
    os << "    mpi_errno = MPIR_Err_return(" << comm_local << ", \"" << vp.emitted_name
       << "\", mpi_errno);\n";
    os << "    goto fn_exit;\n";
    os << "    /* --END ERROR HANDLING-- */\n";
    os << "}\n";
}

}  // namespace

const char* to_string(ProfilingSchemeId id) {
    switch (id) {
        case ProfilingSchemeId::weak_symbol:
            return "weak_symbol";
        case ProfilingSchemeId::macro_rename:
            return "macro_rename";
        case ProfilingSchemeId::qmpi:
            return "qmpi";
        case ProfilingSchemeId::none:
            return "none";
    }
    return "none";
}

std::optional<ProfilingSchemeId> scheme_from_string(std::string_view s) {
    if (s == "weak_symbol")
        return ProfilingSchemeId::weak_symbol;
    if (s == "macro_rename")
        return ProfilingSchemeId::macro_rename;
    if (s == "qmpi")
        return ProfilingSchemeId::qmpi;
    if (s == "none")
        return ProfilingSchemeId::none;
    return std::nullopt;
}

bool RenameTable::contains(std::string_view name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

RenameTable parse_rename_table(std::string_view text, std::string_view filename,
                               Diagnostics& diags) {
    RenameTable table;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::string_view name = trim_view(line);
        if (!name.empty()) {
            if (table.contains(name))
                diags.warning({std::string(filename), line_no},
                              "duplicate rename entry '" + std::string(name) + "'");
            else
                table.names.emplace_back(name);
        }
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return table;
}

std::string apply_mpix_prefix(std::string_view name) {
    if (name.rfind("MPIX_", 0) == 0)
        return std::string(name);
    if (name.rfind("MPI_", 0) == 0)
        return "MPIX_" + std::string(name.substr(4));
    return std::string(name);
}

std::string base_function_name(std::string_view name) {
    if (name.rfind("MPIX_", 0) == 0)
        return std::string(name.substr(5));
    if (name.rfind("MPI_", 0) == 0)
        return std::string(name.substr(4));
    return std::string(name);
}

std::string c_parameter_decl(const ResolvedParameter& p) {
    std::string decl;
    if (p.source.is_constant())
        decl += "const ";
    decl += p.type_text;
    if (p.source.length_expr) {
        decl += " " + p.source.name + "[]";
    } else if (p.is_pointer) {
        decl += " *" + p.source.name;
    } else {
        decl += " " + p.source.name;
    }
    return decl;
}

EmitPlan plan_function(const FunctionSpec& fn, Language language, const KindMapSet& maps,
                       const RenameTable& rename, const ValidationRuleSet& rules,
                       ProfilingSchemeId scheme) {
    EmitPlan plan;
    plan.fn = fn;
    plan.scheme = scheme;

    std::string public_name = rename.contains(fn.name) ? apply_mpix_prefix(fn.name) : fn.name;
    plan.prefix = public_name.rfind("MPIX_", 0) == 0 ? "MPIX_" : "MPI_";

    bool poly = function_has_poly(fn);
    std::vector<std::pair<SizeVariant, std::string>> sizes = {{SizeVariant::small, ""}};
    if (poly)
        sizes.emplace_back(SizeVariant::big, "_c");

    try {
        for (const auto& [size, c_suffix] : sizes) {
            VariantPlan vp;
            vp.variant.language = language;
            vp.variant.size = size;
            vp.variant.namespace_prefix = plan.prefix;
            // F08 exposes one generic name; the _c suffix stays on the C symbol.
            vp.variant.suffix = language == Language::c ? c_suffix : "";
            vp.c_symbol = public_name + c_suffix;
            vp.emitted_name = public_name + vp.variant.suffix;
            for (const ParameterSpec& p : fn.parameters)
                vp.params.push_back(resolve_parameter(p, vp.variant, maps));
            plan.variants.push_back(std::move(vp));
        }
    } catch (const UnknownTableError& e) {
        throw UnknownTableError(std::string(e.what()) + " in function '" + fn.name + "'");
    } catch (const UnknownKindError& e) {
        throw UnknownKindError(std::string(e.what()) + " in function '" + fn.name + "'");
    }

    plan.rules.reserve(fn.parameters.size());
    for (const ParameterSpec& p : fn.parameters)
        plan.rules.push_back(validation_rule_for(p, fn, rules));

    if (auto er = fn.attributes.get(".earlyreturn")) {
        if (*er != "pt2pt_proc_null")
            throw GenError("unknown early-return rule '" + *er + "' in function '" + fn.name +
                           "'");
        bool has_rank = false;
        for (const ParameterSpec& p : fn.parameters)
            has_rank = has_rank || p.kind == "RANK";
        if (!has_rank)
            throw GenError("early-return rule 'pt2pt_proc_null' needs a RANK parameter in '" +
                           fn.name + "'");
        plan.early_return = *er;
    }

    // Named blocks must land on an anchor the templates define.
    for (const Block& b : fn.blocks) {
        bool known = is_notes_block(b) ||
                     (b.flavor == BlockFlavor::code &&
                      (b.name == "body_of_routine" || b.name == "validation"));
        if (!known)
            throw MissingBlockAnchorError("block '" + b.name + "' in function '" + fn.name +
                                          "' names no known anchor");
    }

    return plan;
}

std::string emit_c_source(const EmitPlan& plan, const KindMapSet& maps,
                          const CEmitOptions& options) {
    std::ostringstream os;
    const ProfilingScheme& scheme = profiling_scheme(plan.scheme);
    bool first = true;
    for (const VariantPlan& vp : plan.variants) {
        if (!first)
            os << "\n";
        first = false;

        std::vector<std::string> decls;
        std::vector<std::string> args;
        for (const auto& p : vp.params) {
            decls.push_back(c_parameter_decl(p));
            args.push_back(p.source.name);
        }
        SchemeContext ctx{vp.emitted_name, join(decls, ", "), join(args, ", ")};
        // No separator after the region: anything outside the delimiters
        // must be byte-identical across schemes.
        os << scheme.prologue(ctx);

        emit_man_page(os, plan, vp, maps);
        os << "\n";
        emit_function_definition(os, plan, vp, options);
    }
    return os.str();
}

std::vector<GeneratedFile> emit_c_corpus(const MergedRegistry& merged, const KindMapSet& maps,
                                         const RenameTable& rename,
                                         const ValidationRuleSet& rules,
                                         const CEmitOptions& options, ExecMode mode,
                                         Diagnostics& diags) {
    const SourceLocation emit_loc{"c-emitter", 0};
    bool bad = false;
    for (const std::string& name : rename.names) {
        if (!merged.in_generation_set(name)) {
            diags.error(emit_loc, "rename table entry '" + name +
                                      "' is not in the generation set; stale table");
            bad = true;
        }
    }
    if (bad)
        return {};

    const std::size_t n = merged.generation_set.size();
    std::vector<EmitPlan> plans(n);
    std::vector<std::string> sources(n);
    std::vector<std::string> errors(n);

    for_each_index(n, mode, [&](std::size_t i) {
        const FunctionSpec* fn = merged.functions.find(merged.generation_set[i]);
        try {
            plans[i] = plan_function(*fn, Language::c, maps, rename, rules, options.scheme);
            sources[i] = emit_c_source(plans[i], maps, options);
        } catch (const GenError& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) {
            diags.error(emit_loc, errors[i]);
            bad = true;
        }
    }
    if (bad)
        return {};   // all-or-nothing: no partial corpus

    std::vector<GeneratedFile> files;
    auto file_banner = [](const std::string& filename) {
        return "/* -- " + filename + " -- */\n/* DO NOT EDIT: automatically generated */\n\n";
    };

    if (options.layout == CEmitOptions::Layout::per_function) {
        for (std::size_t i = 0; i < n; ++i) {
            std::string filename = to_lower(base_function_name(merged.generation_set[i])) + ".c";
            files.push_back({filename, file_banner(filename) + sources[i]});
        }
    } else {
        std::vector<std::string> group_order;
        std::map<std::string, std::string> group_text;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& group = merged.generation_groups[i];
            auto it = group_text.find(group);
            if (it == group_text.end()) {
                group_order.push_back(group);
                group_text.emplace(group, file_banner(group + ".c") + sources[i]);
            } else {
                it->second += "\n" + sources[i];
            }
        }
        for (const auto& group : group_order)
            files.push_back({group + ".c", group_text.at(group)});
    }

    // Prototype index header covering both size variants.
    std::ostringstream proto;
    proto << file_banner("mpi_proto.h");
    proto << "#ifndef MPI_PROTO_H_INCLUDED\n";
    proto << "#define MPI_PROTO_H_INCLUDED\n";
    proto << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (const VariantPlan& vp : plans[i].variants) {
            std::vector<std::string> decls;
            for (const auto& p : vp.params)
                decls.push_back(c_parameter_decl(p));
            proto << "int " << vp.emitted_name << "(" << (decls.empty() ? "void" : join(decls, ", "))
                  << ");\n";
        }
    }
    proto << "\n";
    proto << "#endif /* MPI_PROTO_H_INCLUDED */\n";
    files.push_back({"mpi_proto.h", proto.str()});

    return files;
}

std::string mask_profiling_regions(std::string_view text) {
    std::ostringstream os;
    bool masking = false;
    std::string_view end_marker;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        std::string_view body = trim_view(line);
        if (!masking) {
            if (body == kProfilingBlockBegin) {
                masking = true;
                end_marker = kProfilingBlockEnd;
            } else if (body == kProfilingHookBegin) {
                masking = true;
                end_marker = kProfilingHookEnd;
            } else if (nl != std::string_view::npos || !line.empty()) {
                os << line;
                if (nl != std::string_view::npos)
                    os << "\n";
            }
        } else if (body == end_marker) {
            masking = false;
        }
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return os.str();
}

}  // namespace mpigen
