#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "udg/graph.hpp"

namespace udg {

class Graph6Error : public std::runtime_error {
public:
    Graph6Error(std::size_t offset, const std::string& what)
        : std::runtime_error("graph6 byte " + std::to_string(offset) + ": " + what), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Decodes a graph6 string (no ">>graph6<<" header, no trailing newline).
Graph parse_graph6(std::string_view text);

std::string emit_graph6(const Graph& g);

}  // namespace udg
