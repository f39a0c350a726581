#include "cellcov/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cellcov::kernels {

std::string_view to_string(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(CELLCOV_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table(Backend backend) {
    if (!available(backend))
        throw std::invalid_argument("kernel backend not available: " + std::string(to_string(backend)));
#if defined(CELLCOV_HAVE_AVX2)
    if (backend == Backend::Avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

const KernelTable& active() noexcept {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* env = std::getenv("CELLCOV_KERNEL");
        if (env != nullptr && std::string_view(env) == "scalar") return detail::scalar_table();
        if (available(Backend::Avx2)) return table(Backend::Avx2);
        return detail::scalar_table();
    }();
    return chosen;
}

namespace {
void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": span sizes differ");
}
}  // namespace

void exp(std::span<const double> x, std::span<double> out, const KernelTable& k) {
    require_same_size(x.size(), out.size(), "kernels::exp");
    k.exp(x.data(), out.data(), x.size());
}

void log(std::span<const double> x, std::span<double> out, const KernelTable& k) {
    require_same_size(x.size(), out.size(), "kernels::log");
    k.log(x.data(), out.data(), x.size());
}

double path_gain_sum(std::span<const double> sq_dist, std::span<const double> shadow,
                     std::span<const double> weight, const GainCoefficients& c, const KernelTable& k) {
    require_same_size(sq_dist.size(), shadow.size(), "kernels::path_gain_sum");
    require_same_size(sq_dist.size(), weight.size(), "kernels::path_gain_sum");
    return k.path_gain_sum(sq_dist.data(), shadow.data(), weight.data(), sq_dist.size(), c);
}

void exponential_mixture(std::span<const double> x, std::span<const double> rate,
                         std::span<const double> coeff, std::span<double> out, const KernelTable& k) {
    require_same_size(rate.size(), coeff.size(), "kernels::exponential_mixture");
    require_same_size(x.size(), out.size(), "kernels::exponential_mixture");
    k.exponential_mixture(x.data(), x.size(), rate.data(), coeff.data(), rate.size(), out.data());
}

}  // namespace cellcov::kernels
