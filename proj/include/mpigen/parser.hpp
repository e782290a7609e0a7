// mpigen/parser.hpp - parsers for the api, kind-map, custom overlay and JSON formats
//
// Format grammars are documented in docs/formats.md.
#pragma once

#include <string>
#include <string_view>

#include "mpigen/api_model.hpp"
#include "mpigen/overlay.hpp"

namespace mpigen {

// Parses a transcribed standard API file.  Directive lines and blocks are
// rejected here; they belong to custom files.  Duplicate function names
// within one file are an error (almost certainly a transcription bug);
// re-declaring a function across files goes through registry insertion.
ApiRegistry parse_standard_api(std::string_view text, std::string_view filename,
                               Diagnostics& diags);

// Parses the kind->type mapping tables.  Validates .base references and
// acyclicity after the full file is read.
KindMapSet parse_kind_maps(std::string_view text, std::string_view filename,
                           Diagnostics& diags);

// Parses a custom configuration file: the standard syntax plus directive
// lines, comment blocks and code blocks.
OverlayConfig parse_custom_config(std::string_view text, std::string_view filename,
                                  Diagnostics& diags);

// Parses the JSON export of the standard API database.
// Throws SchemaError naming the offending path.
ApiRegistry parse_json_export(std::string_view text, std::string_view filename);

// Reads back the output of serialize_registry (full syntax, `.origin`
// recognized).  Used by the --dump-merged round-trip path.
ApiRegistry parse_registry_dump(std::string_view text, std::string_view filename,
                                Diagnostics& diags);

// Serializers.  serialize_registry emits the full text format; a registry
// written this way re-parses (parse_registry_dump) to an equal registry.
std::string serialize_registry(const ApiRegistry& registry);
std::string serialize_registry_json(const ApiRegistry& registry);

// Re-emits a block with its delimiters, reproducing the source bytes of the
// block region for canonically spelled fixtures.
std::string block_region_text(const Block& block);

}  // namespace mpigen
