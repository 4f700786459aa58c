#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankdec/code.hpp"
#include "rankdec/decoder.hpp"

namespace rankdec {

/// Header `rankdec-matrix v1 r ell n cols`, then n rows of cols canonical
/// integers over F_q.
void write_matrix(std::ostream& os, const Tower& T, const FoldedMatrix& M);
FoldedMatrix read_matrix(std::istream& is, const Tower& T);

/// Header `rankdec-msg v1`, then the m k coefficients block by block.
void write_message(std::ostream& os, const MessagePoly& f);
MessagePoly read_message(std::istream& is, const CodeParams& p);

/// Header `rankdec-params v1`, then key=value lines for r, ell, n, m, k, s
/// and optionally e. Blank lines and `#` comments are ignored.
struct ParamsFile {
    std::uint64_t r = 0;
    unsigned ell = 0, n = 0, m = 0, k = 0, s = 0;
    std::optional<unsigned> e;

    CodeParams make() const { return CodeParams::make(r, ell, n, m, k, s); }
};

void write_params(std::ostream& os, const ParamsFile& pf);
ParamsFile read_params(std::istream& is);

void write_stats(std::ostream& os, const DecodeStats& st);
/// key -> value pairs of a key=value record, in file order.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& is);

/// File helpers that raise ParseError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rankdec
