#include "oip/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace oip {

namespace {

// 32M-bit ceiling on parsed instances; keeps a malformed header from
// allocating unbounded memory.
constexpr std::uint64_t kMaxCells = 1ULL << 25;

void strip_trailing_ws(std::string& s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n'))
    s.pop_back();
}

std::uint64_t parse_count(const std::string& tok, const char* what,
                          std::size_t line_no) {
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw ParseError("line " + std::to_string(line_no) + ": bad " +
                       std::string(what) + " '" + tok + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > UINT32_MAX)
      throw ParseError("line " + std::to_string(line_no) + ": " +
                       std::string(what) + " too large");
  }
  return v;
}

}  // namespace

Instance read_instance(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input");
  strip_trailing_ws(line);
  std::istringstream hdr(line);
  std::string magic, version, m_tok, n_tok, extra;
  hdr >> magic >> version >> m_tok >> n_tok;
  if (magic != "OIP" || hdr.fail() || (hdr >> extra))
    throw ParseError("line 1: malformed header, expected 'OIP 1 <M> <N>'");
  if (version != "1")
    throw ParseError("line 1: unsupported format version '" + version + "'");
  const std::uint64_t m = parse_count(m_tok, "row count", 1);
  const std::uint64_t n = parse_count(n_tok, "column count", 1);
  if (m == 0 || n == 0) throw ParseError("line 1: M and N must be >= 1");
  if (m * n > kMaxCells)
    throw ParseError("line 1: instance of " + std::to_string(m * n) +
                     " cells exceeds the " + std::to_string(kMaxCells) +
                     "-cell limit");

  const std::size_t stride = words_for(n);
  std::vector<std::uint64_t> flat(m * stride, 0);
  for (std::uint64_t r = 0; r < m; ++r) {
    const std::size_t line_no = static_cast<std::size_t>(r) + 2;
    if (!std::getline(in, line))
      throw ParseError("line " + std::to_string(line_no) +
                       ": unexpected end of file, expected " +
                       std::to_string(m) + " rows");
    strip_trailing_ws(line);
    if (line.size() != n)
      throw ParseError("line " + std::to_string(line_no) + ": row length " +
                       std::to_string(line.size()) + ", expected " +
                       std::to_string(n));
    for (std::uint64_t c = 0; c < n; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch == '1')
        flat[r * stride + (c >> 6)] |= 1ULL << (c & 63);
      else if (ch != '0')
        throw ParseError("line " + std::to_string(line_no) +
                         ": character '" + std::string(1, ch) +
                         "' is not 0 or 1");
    }
  }

  std::optional<std::uint32_t> hidden;
  std::size_t line_no = static_cast<std::size_t>(m) + 2;
  bool content_done = false;
  while (std::getline(in, line)) {
    strip_trailing_ws(line);
    if (line.empty()) {
      ++line_no;
      continue;  // blank trailing lines tolerated
    }
    if (content_done)
      throw ParseError("line " + std::to_string(line_no) +
                       ": unexpected content after hidden line");
    std::istringstream tail(line);
    std::string kw, idx_tok;
    tail >> kw >> idx_tok;
    std::string more;
    if (kw != "hidden" || idx_tok.empty() || (tail >> more))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'hidden <row-index>'");
    const std::uint64_t idx = parse_count(idx_tok, "hidden index", line_no);
    if (idx >= m)
      throw ParseError("line " + std::to_string(line_no) + ": hidden index " +
                       std::to_string(idx) + " out of range for M=" +
                       std::to_string(m));
    hidden = static_cast<std::uint32_t>(idx);
    content_done = true;
    ++line_no;
  }

  try {
    OracleMatrix z(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n),
                   std::move(flat));
    return Instance{std::move(z), hidden};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_instance(in);
}

void write_instance(std::ostream& out, const OracleMatrix& z,
                    std::optional<std::uint32_t> hidden) {
  out << "OIP 1 " << z.rows() << ' ' << z.cols() << '\n';
  for (std::uint32_t r = 0; r < z.rows(); ++r) out << z.row_string(r) << '\n';
  if (hidden) {
    if (*hidden >= z.rows())
      throw std::out_of_range("write_instance: hidden index out of range");
    out << "hidden " << *hidden << '\n';
  }
}

void write_instance_file(const std::string& path, const OracleMatrix& z,
                         std::optional<std::uint32_t> hidden) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_instance(out, z, hidden);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace oip
