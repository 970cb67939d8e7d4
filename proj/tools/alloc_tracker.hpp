#pragma once

#include <cstddef>

// Global-new instrumentation for the benchmark command: tracks live heap
// bytes and the high-water mark. Linked into the CLI binary only.
namespace lmk_bench {

void reset_peak();
std::size_t peak_bytes();
std::size_t current_bytes();

}  // namespace lmk_bench
