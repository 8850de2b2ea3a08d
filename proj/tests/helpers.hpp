#pragma once

#include "mhlab/parse.hpp"

inline mhlab::BivariatePoly P(const char* text) { return mhlab::parse_poly(text); }
inline mhlab::Rat R(long a, long b = 1) { return mhlab::rat(a, b); }
