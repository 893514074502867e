#pragma once

#include "exotic/sample.hpp"

namespace test {
using exotic::random_nonzero;
using exotic::random_polynomial;
using exotic::random_ratfunc;
using exotic::random_in;
using exotic::random_nonzero_in;
} // namespace test
