#include "mpigen/parallel.hpp"

#include <exception>
#include <vector>

namespace mpigen {

void for_each_index(std::size_t n, ExecMode mode, const std::function<void(std::size_t)>& fn) {
    if (mode == ExecMode::serial) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }
}

}  // namespace mpigen
