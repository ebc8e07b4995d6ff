#pragma once

#include <gtest/gtest.h>

#include "drkit/hilbert.hpp"

inline ::testing::AssertionResult near(const drkit::Point& a,
                                       const drkit::Point& b, double tol) {
  if (a.size() != b.size())
    return ::testing::AssertionFailure() << "sizes " << a.size() << " vs " << b.size();
  const double d = (a - b).norm();
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << "[" << a.transpose() << "] vs [" << b.transpose() << "], distance "
         << d << " > " << tol;
}

using drkit::make_point;
