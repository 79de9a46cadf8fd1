#pragma once

#include <iosfwd>
#include <string>

#include <torch/torch.h>

namespace scft {

// Minimal deterministic binary tensor records: dtype tag, rank, dims, raw
// little-endian data. Used by the feature-net container and checkpoints.
void write_tensor(std::ostream& out, const torch::Tensor& tensor);
torch::Tensor read_tensor(std::istream& in);

void write_string(std::ostream& out, const std::string& s);
std::string read_string(std::istream& in);

void write_u64(std::ostream& out, std::uint64_t v);
std::uint64_t read_u64(std::istream& in);

void write_i64(std::ostream& out, std::int64_t v);
std::int64_t read_i64(std::istream& in);

}  // namespace scft
