#pragma once

namespace ramsey0 {

/// Worker count used by the OpenMP kernels. 0 restores the runtime default.
void set_num_threads(int threads);
int num_threads();

}  // namespace ramsey0
