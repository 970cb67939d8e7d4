#include "alloc_tracker.hpp"

#include <malloc.h>

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::size_t> g_current{0};
std::atomic<std::size_t> g_peak{0};

void track_alloc(void* p) {
    const std::size_t bytes = malloc_usable_size(p);
    const std::size_t now = g_current.fetch_add(bytes) + bytes;
    std::size_t peak = g_peak.load();
    while (now > peak && !g_peak.compare_exchange_weak(peak, now)) {
    }
}

void track_free(void* p) {
    if (!p) return;
    g_current.fetch_sub(malloc_usable_size(p));
}

void* tracked_new(std::size_t size) {
    void* p = std::malloc(size ? size : 1);
    if (!p) throw std::bad_alloc();
    track_alloc(p);
    return p;
}

void* tracked_new_aligned(std::size_t size, std::align_val_t align) {
    const std::size_t a = static_cast<std::size_t>(align);
    const std::size_t rounded = (size + a - 1) / a * a;
    void* p = std::aligned_alloc(a, rounded ? rounded : a);
    if (!p) throw std::bad_alloc();
    track_alloc(p);
    return p;
}

}  // namespace

namespace lmk_bench {

void reset_peak() { g_peak.store(g_current.load()); }
std::size_t peak_bytes() { return g_peak.load(); }
std::size_t current_bytes() { return g_current.load(); }

}  // namespace lmk_bench

void* operator new(std::size_t size) { return tracked_new(size); }
void* operator new[](std::size_t size) { return tracked_new(size); }
void* operator new(std::size_t size, std::align_val_t align) {
    return tracked_new_aligned(size, align);
}
void* operator new[](std::size_t size, std::align_val_t align) {
    return tracked_new_aligned(size, align);
}

void operator delete(void* p) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete[](void* p) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete(void* p, std::size_t) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete[](void* p, std::size_t) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete(void* p, std::align_val_t) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete[](void* p, std::align_val_t) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete(void* p, std::size_t, std::align_val_t) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept {
    track_free(p);
    std::free(p);
}
