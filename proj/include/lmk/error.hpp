#pragma once

#include <stdexcept>
#include <string>

namespace lmk {

// Error categories, used by the CLI to pick exit codes and by tests to
// assert on specific failure modes.
enum class errc {
    non_square,
    negative_entry,
    relative_rank_violation,
    asymmetry_under_symmetric_flag,
    empty_input,
    zero_vector,
    zero_range,
    mixed_type_column,
    index_out_of_bounds,
    length_mismatch,
    empty_candidates,
    empty_space,
    too_many_requested,
    mismatched_space,
    config,
    empty_cover,
    insufficient_dim_cap,
    single_set,
    degenerate_labels,
    insufficient_training,
    degenerate_fold,
    single_period,
    invalid_weights,
    invalid_geometry,
    parse,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace lmk
