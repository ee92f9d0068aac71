#pragma once

#include <gtest/gtest.h>

#include "sofup/errors.hpp"

#define EXPECT_CODE(stmt, expected)                                       \
  do {                                                                    \
    try {                                                                 \
      static_cast<void>(stmt);                                            \
      ADD_FAILURE() << "no sofup::Error thrown by " #stmt;                \
    } catch (const ::sofup::Error& e) {                                   \
      EXPECT_EQ(e.code(), expected) << e.what();                          \
    }                                                                     \
  } while (0)
