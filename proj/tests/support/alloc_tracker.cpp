#include "alloc_tracker.hpp"

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};

constexpr std::size_t kHeader = alignof(std::max_align_t);

void* track_alloc(std::size_t size) {
    auto* raw = static_cast<unsigned char*>(std::malloc(size + kHeader));
    if (raw == nullptr) throw std::bad_alloc();
    *reinterpret_cast<std::size_t*>(raw) = size;
    const std::size_t now = g_live.fetch_add(size) + size;
    std::size_t peak = g_peak.load();
    while (now > peak && !g_peak.compare_exchange_weak(peak, now)) {
    }
    return raw + kHeader;
}

void track_free(void* p) noexcept {
    if (p == nullptr) return;
    auto* raw = static_cast<unsigned char*>(p) - kHeader;
    g_live.fetch_sub(*reinterpret_cast<std::size_t*>(raw));
    std::free(raw);
}

} // namespace

void* operator new(std::size_t size) { return track_alloc(size); }
void* operator new[](std::size_t size) { return track_alloc(size); }
void operator delete(void* p) noexcept { track_free(p); }
void operator delete[](void* p) noexcept { track_free(p); }
void operator delete(void* p, std::size_t) noexcept { track_free(p); }
void operator delete[](void* p, std::size_t) noexcept { track_free(p); }

namespace crx::testing {

std::size_t live_bytes() { return g_live.load(); }
std::size_t peak_bytes() { return g_peak.load(); }
void reset_peak() { g_peak.store(g_live.load()); }

} // namespace crx::testing
