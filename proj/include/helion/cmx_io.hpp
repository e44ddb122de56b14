#ifndef HELION_CMX_IO_HPP
#define HELION_CMX_IO_HPP

#include <filesystem>
#include <string>

#include "helion/linalg.hpp"

namespace helion {

// CMX1 container: 8-byte magic "CMXv0001", rows (u64 LE), cols (u64 LE),
// then rows*cols complex entries as (re, im) float64 LE pairs, row-major.
// Byte order is explicit in the serializer, not inherited from the host.

void write_cmx(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_cmx(const std::filesystem::path& path);

// Shared file plumbing.  All writers go through the atomic path (temp file
// in the same directory, then rename) so partially written outputs never
// become visible under the final name.
void write_bytes_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_bytes(const std::filesystem::path& path);

}  // namespace helion

#endif
