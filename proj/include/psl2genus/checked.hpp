#pragma once

#include <cstdint>

#include "psl2genus/errors.hpp"

namespace psl2genus {

// All spectrum arithmetic is checked 64-bit: overflow raises, never wraps.

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        raise(ErrorKind::overflow, "integer overflow in addition");
    return out;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t out;
    if (__builtin_sub_overflow(a, b, &out))
        raise(ErrorKind::overflow, "integer overflow in subtraction");
    return out;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        raise(ErrorKind::overflow, "integer overflow in multiplication");
    return out;
}

}  // namespace psl2genus
