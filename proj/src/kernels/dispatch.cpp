#include "chebmotion/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace chebmotion::kernels {
namespace {

const Ops* lookup(std::string_view name) {
    if (name == "scalar") return &scalar();
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && cpu_supports_avx2()) return &avx2();
#endif
#if defined(__aarch64__)
    if (name == "neon") return &neon();
#endif
    return nullptr;
}

const Ops* best() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_supports_avx2()) return &avx2();
#endif
#if defined(__aarch64__)
    return &neon();
#endif
    return &scalar();
}

const Ops* initial() {
    if (const char* env = std::getenv("CHEBMOTION_KERNEL")) {
        if (const Ops* ops = lookup(env)) return ops;
    }
    return best();
}

std::atomic<const Ops*>& selection() {
    static std::atomic<const Ops*> sel{initial()};
    return sel;
}

} // namespace

std::vector<std::string> available() {
    std::vector<std::string> names;
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_supports_avx2()) names.emplace_back("avx2");
#endif
#if defined(__aarch64__)
    names.emplace_back("neon");
#endif
    names.emplace_back("scalar");
    return names;
}

const Ops& active() { return *selection().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
    const Ops* ops = lookup(name);
    if (!ops) return false;
    selection().store(ops, std::memory_order_relaxed);
    return true;
}

} // namespace chebmotion::kernels
