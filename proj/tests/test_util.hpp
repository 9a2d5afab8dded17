#pragma once

#include "doctest.h"
#include "hmcf/error.hpp"

// Checks that `expr` throws hmcf::Error carrying `code`.
#define CHECK_HMCF_ERROR(expr, expected)                       \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const hmcf::Error& e_) {                          \
      thrown_ = true;                                          \
      CHECK(e_.code() == (expected));                          \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected an hmcf::Error");         \
  } while (0)
