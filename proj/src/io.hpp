#ifndef SEQTREE_IO_HPP
#define SEQTREE_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqtree {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit, hex-encoded; used for run-manifest input hashes.
std::string fnv1a_hex(const std::string& data);

// Quotes a CSV cell only when it contains a comma, quote, or newline.
std::string csv_cell(const std::string& value);

// Fixed-precision float formatting so artifact bytes are reproducible.
std::string format_double(double v);

}  // namespace seqtree

#endif
