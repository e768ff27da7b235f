#pragma once

#include <string>

#include "sagecut/nn.hpp"

namespace sagecut {

// Model checkpoint: magic "CFCK", u64 layer count, then per layer the
// message and update matrices, then the head; each matrix as u64 rows,
// u64 cols, row-major float64, all little-endian.
void save_checkpoint(const SageModel<double>& model, const std::string& path);
SageModel<double> load_checkpoint(const std::string& path);

}  // namespace sagecut
