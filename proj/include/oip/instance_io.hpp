#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "oip/bit_matrix.hpp"

namespace oip {

// Instance file format (text, all indices 0-based):
//   line 1:        OIP 1 <M> <N>
//   lines 2..M+1:  N characters in {0,1}, one candidate row per line
//   optional:      hidden <row-index>
// Trailing whitespace on a line is tolerated; anything else is a parse error.

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  OracleMatrix matrix;
  std::optional<std::uint32_t> hidden;
};

Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);

void write_instance(std::ostream& out, const OracleMatrix& z,
                    std::optional<std::uint32_t> hidden = std::nullopt);
void write_instance_file(const std::string& path, const OracleMatrix& z,
                         std::optional<std::uint32_t> hidden = std::nullopt);

}  // namespace oip
