#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "samestats/graph.hpp"

namespace samestats {

/// graph6 line for g, without the trailing newline: the order (one byte n+63
/// for n <= 62, otherwise '~' and three 6-bit bytes) followed by the upper
/// triangle in column-major order (x(0,1), x(0,2), x(1,2), x(0,3), ...)
/// packed six bits per byte, big-endian, each byte offset by 63.
std::string encode_graph6(const Graph& g);

/// Parses one graph6 line. An optional ">>graph6<<" header and trailing
/// "\n" / "\r\n" are accepted. Throws ParseError with the offending offset.
Graph decode_graph6(std::string_view line);

/// Reads every non-empty line of a graph6 stream.
std::vector<Graph> read_graph6(std::istream& in);
void write_graph6(std::ostream& out, const std::vector<Graph>& graphs);

}  // namespace samestats
