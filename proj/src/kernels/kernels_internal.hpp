#pragma once

#include "chiralwalk/kernels.hpp"

namespace chiralwalk::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(CHIRALWALK_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace chiralwalk::kernels::detail
