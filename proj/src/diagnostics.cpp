#include "mpigen/diagnostics.hpp"

#include <ostream>
#include <sstream>

namespace mpigen {

std::size_t Diagnostics::error_count() const {
    std::size_t n = 0;
    for (const auto& d : items_)
        if (d.severity == Severity::error)
            ++n;
    return n;
}

std::size_t Diagnostics::warning_count() const {
    std::size_t n = 0;
    for (const auto& d : items_)
        if (d.severity == Severity::warning)
            ++n;
    return n;
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    os << d.location.file << ":" << d.location.line << ": "
       << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
    return os.str();
}

void print_diagnostics(const Diagnostics& diags, std::ostream& os) {
    for (const auto& d : diags.items())
        os << format_diagnostic(d) << "\n";
}

}  // namespace mpigen
