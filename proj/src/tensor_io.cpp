#include "scft/tensor_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace scft {

namespace {

enum class DtypeTag : std::uint8_t { kFloat32 = 0, kFloat64 = 1, kInt64 = 2, kUInt8 = 3 };

DtypeTag tag_of(torch::ScalarType t) {
  switch (t) {
    case torch::kFloat32: return DtypeTag::kFloat32;
    case torch::kFloat64: return DtypeTag::kFloat64;
    case torch::kInt64: return DtypeTag::kInt64;
    case torch::kUInt8: return DtypeTag::kUInt8;
    default: throw std::invalid_argument("write_tensor: unsupported dtype");
  }
}

torch::ScalarType type_of(DtypeTag tag) {
  switch (tag) {
    case DtypeTag::kFloat32: return torch::kFloat32;
    case DtypeTag::kFloat64: return torch::kFloat64;
    case DtypeTag::kInt64: return torch::kInt64;
    case DtypeTag::kUInt8: return torch::kUInt8;
  }
  throw std::runtime_error("read_tensor: bad dtype tag");
}

}  // namespace

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw std::runtime_error("read_u64: truncated stream");
  return v;
}

void write_i64(std::ostream& out, std::int64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::int64_t read_i64(std::istream& in) {
  std::int64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw std::runtime_error("read_i64: truncated stream");
  return v;
}

void write_string(std::ostream& out, const std::string& s) {
  write_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const std::uint64_t n = read_u64(in);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("read_string: truncated stream");
  return s;
}

void write_tensor(std::ostream& out, const torch::Tensor& tensor) {
  auto t = tensor.detach().cpu().contiguous();
  const auto tag = static_cast<std::uint8_t>(tag_of(t.scalar_type()));
  out.write(reinterpret_cast<const char*>(&tag), 1);
  write_u64(out, static_cast<std::uint64_t>(t.dim()));
  for (int64_t i = 0; i < t.dim(); ++i) write_i64(out, t.size(i));
  const auto bytes = static_cast<std::streamsize>(t.numel() * t.element_size());
  out.write(static_cast<const char*>(t.data_ptr()), bytes);
}

torch::Tensor read_tensor(std::istream& in) {
  std::uint8_t tag = 0;
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in) throw std::runtime_error("read_tensor: truncated stream");
  const auto dtype = type_of(static_cast<DtypeTag>(tag));
  const auto rank = read_u64(in);
  std::vector<int64_t> dims(rank);
  for (auto& d : dims) d = read_i64(in);
  auto t = torch::empty(dims, dtype);
  const auto bytes = static_cast<std::streamsize>(t.numel() * t.element_size());
  in.read(static_cast<char*>(t.data_ptr()), bytes);
  if (!in) throw std::runtime_error("read_tensor: truncated stream");
  return t;
}

}  // namespace scft
