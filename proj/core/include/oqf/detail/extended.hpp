#pragma once

// Extended-precision real used by verification sums. GCC and Clang on
// x86-64 provide a software binary128; elsewhere fall back to long double.

namespace oqf::detail {

#if defined(__SIZEOF_FLOAT128__) && !defined(OQF_NO_FLOAT128)
using extended = __float128;
#else
using extended = long double;
#endif

inline extended ext_abs(extended x) { return x < 0 ? -x : x; }

} // namespace oqf::detail
