#ifndef DIAMOND_TESTS_SUPPORT_HPP
#define DIAMOND_TESTS_SUPPORT_HPP

#include "diamond/errors.hpp"
#include "doctest.h"

template <class Fn>
diamond::ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const diamond::Error& e) {
    return e.code();
  }
  FAIL("expected a diamond::Error");
  return diamond::ErrorCode::Internal;
}

#endif
