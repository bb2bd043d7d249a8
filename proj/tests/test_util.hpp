#pragma once

#include "doctest.h"
#include "mwc/error.hpp"

// Checks that `expr` throws mwc::Error of the given kind.
#define CHECK_THROWS_KIND(expr, k)                                   \
  do {                                                               \
    bool thrown_ = false;                                            \
    try {                                                            \
      (void)(expr);                                                  \
    } catch (const mwc::Error& e_) {                                 \
      thrown_ = true;                                                \
      CHECK_MESSAGE(e_.kind() == (k), "got " << mwc::to_string(e_.kind())); \
    }                                                                \
    CHECK_MESSAGE(thrown_, "expected " << mwc::to_string(k));        \
  } while (0)
