// mpigen/diagnostics.hpp - parse/emit diagnostics with source locations
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpigen {

struct SourceLocation {
    std::string file;
    int line = 0;   // 1-based

    bool operator==(const SourceLocation&) const = default;
};

enum class Severity { error, warning };

struct Diagnostic {
    SourceLocation location;
    Severity severity = Severity::error;
    std::string message;
};

class Diagnostics {
public:
    void error(SourceLocation loc, std::string message) {
        items_.push_back({std::move(loc), Severity::error, std::move(message)});
    }
    void warning(SourceLocation loc, std::string message) {
        items_.push_back({std::move(loc), Severity::warning, std::move(message)});
    }

    bool has_errors() const {
        for (const auto& d : items_) {
            if (d.severity == Severity::error)
                return true;
        }
        return false;
    }
    std::size_t error_count() const;
    std::size_t warning_count() const;

    const std::vector<Diagnostic>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    void append(const Diagnostics& other) {
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    }

private:
    std::vector<Diagnostic> items_;
};

// "file:line: severity: message"
std::string format_diagnostic(const Diagnostic& d);
void print_diagnostics(const Diagnostics& diags, std::ostream& os);

// Errors raised by resolution, planning and emission.  Parsers report
// through Diagnostics instead, so they can keep going after one bad line.
struct GenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownTableError : GenError {
    using GenError::GenError;
};
struct UnknownKindError : GenError {
    using GenError::GenError;
};
struct SchemaError : GenError {
    using GenError::GenError;
};
struct RenameError : GenError {
    using GenError::GenError;
};
struct MissingBlockAnchorError : GenError {
    using GenError::GenError;
};

}  // namespace mpigen
