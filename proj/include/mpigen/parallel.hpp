// mpigen/parallel.hpp - ordered fan-out helper shared by the corpus emitters
#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace mpigen {

struct GeneratedFile {
    std::string path;   // relative to the output directory
    std::string text;

    bool operator==(const GeneratedFile&) const = default;
};

enum class ExecMode { serial, parallel };

// Runs fn(0..n-1).  In parallel mode the indices run concurrently (OpenMP
// when available); callers own per-index output slots, so merged results
// are index-ordered and identical to the serial reference path.  An
// exception escaping fn is rethrown for the lowest failing index.
void for_each_index(std::size_t n, ExecMode mode, const std::function<void(std::size_t)>& fn);

}  // namespace mpigen
